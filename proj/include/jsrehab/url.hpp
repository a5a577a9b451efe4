#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace jsrehab {

/// Absolute http(s) URL without fragment.
struct Url {
    std::string scheme;  // "http" or "https"
    std::string host;    // lowercase; IPv6 literals keep their brackets
    int port = 0;        // 0 means the scheme default
    std::string path = "/";
    std::string query;   // without '?'

    static std::optional<Url> parse(std::string_view text);

    int effective_port() const;
    /// scheme://host[:port], port omitted when it is the default.
    std::string origin() const;
    /// path[?query]
    std::string target() const;
    std::string str() const;

    bool operator==(const Url&) const = default;
};

/// RFC 3986 reference resolution; nullopt for non-http(s) results (mailto:, javascript:, ...).
std::optional<Url> resolve(const Url& base, std::string_view reference);

bool same_origin(const Url& a, const Url& b);

/// Decodes %XX escapes and '+' in a query component.
std::string url_decode(std::string_view s);
std::string url_encode(std::string_view s);

}  // namespace jsrehab
