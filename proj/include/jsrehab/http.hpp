#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jsrehab/url.hpp"

namespace jsrehab {

inline constexpr std::string_view kFirefoxUserAgent =
    "Mozilla/5.0 (X11; Linux x86_64; rv:128.0) Gecko/20100101 Firefox/128.0";

/// Ordered header list; names compare case-insensitively, duplicates allowed.
class Headers {
public:
    using Entry = std::pair<std::string, std::string>;

    std::optional<std::string> get(std::string_view name) const;
    bool has(std::string_view name) const { return get(name).has_value(); }
    void set(std::string_view name, std::string value);  // replaces every entry of that name
    void add(std::string name, std::string value) { entries_.emplace_back(std::move(name), std::move(value)); }
    std::size_t remove(std::string_view name);
    /// Drops Connection, Transfer-Encoding, Keep-Alive, TE, Trailer, Upgrade,
    /// Proxy-* and anything listed in the Connection header.
    void remove_hop_by_hop();

    const std::vector<Entry>& entries() const { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

private:
    std::vector<Entry> entries_;
};

struct HttpResponse {
    int status = 200;
    Headers headers;
    std::string body;
};

/// Media type without parameters, lowercased ("text/html").
std::string media_type(std::string_view content_type);
std::optional<std::string> charset_param(std::string_view content_type);
bool is_html(std::string_view content_type);

struct FetchSettings {
    std::string user_agent{kFirefoxUserAgent};
    int timeout_s = 30;
    std::size_t max_body = 8u << 20;
    int max_redirects = 5;
    std::string accept_encoding = "gzip, br";
    bool verify_tls = true;
};

struct FetchRequest {
    std::string method = "GET";
    Url url;
    Headers headers;
    std::string body;
};

struct FetchResult {
    HttpResponse response;
    std::string final_url;
    int redirects = 0;
    std::string error;  // empty on success

    bool ok() const { return error.empty(); }
};

/// One request; the body is returned exactly as sent (no content decoding).
FetchResult fetch(const FetchRequest& request, const FetchSettings& settings);
/// GET following up to settings.max_redirects redirects.
FetchResult fetch_following(const Url& url, const FetchSettings& settings);

}  // namespace jsrehab
