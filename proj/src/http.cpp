#include "jsrehab/http.hpp"

#include <httplib.h>

#include <algorithm>

#include "strings.hpp"

namespace jsrehab {

std::optional<std::string> Headers::get(std::string_view name) const
{
    for (const auto& [k, v] : entries_) {
        if (detail::iequals(k, name))
            return v;
    }
    return std::nullopt;
}

void Headers::set(std::string_view name, std::string value)
{
    remove(name);
    entries_.emplace_back(std::string(name), std::move(value));
}

std::size_t Headers::remove(std::string_view name)
{
    auto before = entries_.size();
    std::erase_if(entries_, [&](const Entry& e) { return detail::iequals(e.first, name); });
    return before - entries_.size();
}

void Headers::remove_hop_by_hop()
{
    std::vector<std::string> listed;
    for (const auto& [k, v] : entries_) {
        if (!detail::iequals(k, "connection"))
            continue;
        std::string_view rest = v;
        while (!rest.empty()) {
            auto c = rest.find(',');
            auto tok = detail::trim(rest.substr(0, c));
            if (!tok.empty())
                listed.emplace_back(tok);
            rest = c == std::string_view::npos ? std::string_view() : rest.substr(c + 1);
        }
    }
    for (const auto& n : listed)
        remove(n);
    for (std::string_view n : {"connection", "keep-alive", "transfer-encoding", "te", "trailer", "upgrade"})
        remove(n);
    std::erase_if(entries_, [](const Entry& e) { return detail::istarts_with(e.first, "proxy-"); });
}

std::string media_type(std::string_view content_type)
{
    auto semi = content_type.find(';');
    return detail::to_lower(detail::trim(content_type.substr(0, semi)));
}

std::optional<std::string> charset_param(std::string_view content_type)
{
    auto lower = detail::to_lower(content_type);
    auto pos = lower.find("charset=");
    if (pos == std::string::npos)
        return std::nullopt;
    auto v = std::string_view(content_type).substr(pos + 8);
    v = v.substr(0, v.find(';'));
    v = detail::trim(v);
    if (v.size() >= 2 && (v.front() == '"' || v.front() == '\''))
        v = v.substr(1, v.size() - 2);
    if (v.empty())
        return std::nullopt;
    return std::string(v);
}

bool is_html(std::string_view content_type)
{
    auto m = media_type(content_type);
    return m == "text/html" || m == "application/xhtml+xml";
}

FetchResult fetch(const FetchRequest& request, const FetchSettings& settings)
{
    FetchResult out;
    out.final_url = request.url.str();
    httplib::Client cli(request.url.origin());
    cli.set_decompress(false);
    cli.set_follow_location(false);
    cli.set_keep_alive(false);
    cli.set_connection_timeout(settings.timeout_s, 0);
    cli.set_read_timeout(settings.timeout_s, 0);
    cli.set_write_timeout(settings.timeout_s, 0);
    if (request.url.scheme == "https")
        cli.enable_server_certificate_verification(settings.verify_tls);

    httplib::Request req;
    req.method = request.method;
    req.path = request.url.target();
    for (const auto& [k, v] : request.headers) {
        if (!detail::iequals(k, "host") && !detail::iequals(k, "content-length"))
            req.headers.emplace(k, v);
    }
    if (!request.headers.has("user-agent"))
        req.headers.emplace("User-Agent", settings.user_agent);
    if (!request.headers.has("accept-encoding") && !settings.accept_encoding.empty())
        req.headers.emplace("Accept-Encoding", settings.accept_encoding);
    req.body = request.body;
    if (!request.body.empty() && !request.headers.has("content-type"))
        req.headers.emplace("Content-Type", "application/octet-stream");

    std::string body;
    bool too_big = false;
    req.content_receiver = [&](const char* data, std::size_t len, uint64_t, uint64_t) {
        if (body.size() + len > settings.max_body) {
            too_big = true;
            return false;
        }
        body.append(data, len);
        return true;
    };
    httplib::Response res;
    httplib::Error err = httplib::Error::Success;
    bool sent = cli.send(req, res, err);
    if (too_big) {
        out.error = "response body exceeds " + std::to_string(settings.max_body) + " bytes";
        return out;
    }
    if (!sent) {
        out.error = httplib::to_string(err);
        return out;
    }
    out.response.status = res.status;
    for (const auto& [k, v] : res.headers)
        out.response.headers.add(k, v);
    out.response.body = std::move(body);
    return out;
}

FetchResult fetch_following(const Url& url, const FetchSettings& settings)
{
    FetchRequest req;
    req.url = url;
    int hops = 0;
    while (true) {
        FetchResult r = fetch(req, settings);
        r.redirects = hops;
        if (!r.ok())
            return r;
        int s = r.response.status;
        auto loc = r.response.headers.get("location");
        if (!(s == 301 || s == 302 || s == 303 || s == 307 || s == 308) || !loc)
            return r;
        if (hops == settings.max_redirects) {
            r.error = "too many redirects";
            return r;
        }
        auto next = resolve(req.url, *loc);
        if (!next) {
            r.error = "redirect to unsupported location: " + *loc;
            return r;
        }
        req.url = *next;
        ++hops;
    }
}

}  // namespace jsrehab
