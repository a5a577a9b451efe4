#include "jsrehab/url.hpp"

#include <charconv>
#include <vector>

#include "strings.hpp"

namespace jsrehab {

namespace {

std::string remove_dot_segments(std::string_view path)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    bool absolute = !path.empty() && path.front() == '/';
    if (absolute)
        i = 1;
    bool trailing = false;
    while (i <= path.size()) {
        auto j = path.find('/', i);
        if (j == std::string_view::npos)
            j = path.size();
        auto seg = path.substr(i, j - i);
        trailing = false;
        if (seg == "..") {
            if (!out.empty())
                out.pop_back();
            trailing = true;
        } else if (seg == ".") {
            trailing = true;
        } else {
            out.push_back(seg);
        }
        i = j + 1;
    }
    std::string r = absolute ? "/" : "";
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (k)
            r += '/';
        r += out[k];
    }
    if (trailing && (r.empty() || r.back() != '/'))
        r += '/';
    return r;
}

std::optional<std::string_view> scheme_of(std::string_view s)
{
    if (s.empty() || !detail::is_ascii_alpha(s[0]))
        return std::nullopt;
    for (std::size_t i = 1; i < s.size(); ++i) {
        char c = s[i];
        if (c == ':')
            return s.substr(0, i);
        if (!detail::is_ascii_alnum(c) && c != '+' && c != '-' && c != '.')
            return std::nullopt;
    }
    return std::nullopt;
}

void split_path_query(std::string_view rest, std::string& path, std::string& query)
{
    auto q = rest.find('?');
    path = std::string(rest.substr(0, q));
    query = q == std::string_view::npos ? "" : std::string(rest.substr(q + 1));
}

bool parse_authority(std::string_view auth, Url& u)
{
    if (auto at = auth.rfind('@'); at != std::string_view::npos)
        auth = auth.substr(at + 1);
    std::string_view host = auth, port;
    if (!auth.empty() && auth.front() == '[') {
        auto close = auth.find(']');
        if (close == std::string_view::npos)
            return false;
        host = auth.substr(0, close + 1);
        auto rest = auth.substr(close + 1);
        if (!rest.empty()) {
            if (rest.front() != ':')
                return false;
            port = rest.substr(1);
        }
    } else if (auto c = auth.rfind(':'); c != std::string_view::npos) {
        host = auth.substr(0, c);
        port = auth.substr(c + 1);
    }
    if (host.empty())
        return false;
    u.host = detail::to_lower(host);
    u.port = 0;
    if (!port.empty()) {
        int p = 0;
        auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), p);
        if (ec != std::errc() || ptr != port.data() + port.size() || p <= 0 || p > 65535)
            return false;
        u.port = p == (u.scheme == "https" ? 443 : 80) ? 0 : p;
    }
    return true;
}

}  // namespace

int Url::effective_port() const
{
    if (port)
        return port;
    return scheme == "https" ? 443 : 80;
}

std::optional<Url> Url::parse(std::string_view text)
{
    text = detail::trim(text);
    if (auto h = text.find('#'); h != std::string_view::npos)
        text = text.substr(0, h);
    auto scheme = scheme_of(text);
    if (!scheme)
        return std::nullopt;
    Url u;
    u.scheme = detail::to_lower(*scheme);
    if (u.scheme != "http" && u.scheme != "https")
        return std::nullopt;
    auto rest = text.substr(scheme->size() + 1);
    if (!rest.starts_with("//"))
        return std::nullopt;
    rest.remove_prefix(2);
    auto end = rest.find_first_of("/?");
    if (!parse_authority(rest.substr(0, end), u))
        return std::nullopt;
    if (end == std::string_view::npos) {
        u.path = "/";
        return u;
    }
    split_path_query(rest.substr(end), u.path, u.query);
    u.path = u.path.empty() ? "/" : remove_dot_segments(u.path);
    return u;
}

std::string Url::origin() const
{
    std::string s = scheme + "://" + host;
    if (port && port != (scheme == "https" ? 443 : 80))
        s += ":" + std::to_string(port);
    return s;
}

std::string Url::target() const { return query.empty() ? path : path + "?" + query; }

std::string Url::str() const { return origin() + target(); }

std::optional<Url> resolve(const Url& base, std::string_view ref)
{
    ref = detail::trim(ref);
    if (auto h = ref.find('#'); h != std::string_view::npos)
        ref = ref.substr(0, h);
    if (scheme_of(ref))
        return Url::parse(ref);
    if (ref.starts_with("//"))
        return Url::parse(base.scheme + ":" + std::string(ref));
    Url u = base;
    if (ref.empty())
        return u;
    if (ref.front() == '?') {
        u.query = std::string(ref.substr(1));
        return u;
    }
    std::string path, query;
    split_path_query(ref, path, query);
    if (path.empty()) {
        u.query = query;
        return u;
    }
    if (path.front() != '/') {
        auto slash = base.path.rfind('/');
        path = (slash == std::string::npos ? std::string("/") : base.path.substr(0, slash + 1)) + path;
    }
    u.path = remove_dot_segments(path);
    u.query = query;
    return u;
}

bool same_origin(const Url& a, const Url& b)
{
    return a.scheme == b.scheme && a.host == b.host && a.effective_port() == b.effective_port();
}

std::string url_decode(std::string_view s)
{
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '+') {
            out += ' ';
        } else if (c == '%' && i + 2 < s.size() && detail::is_ascii_hex(s[i + 1]) && detail::is_ascii_hex(s[i + 2])) {
            int v = 0;
            std::from_chars(s.data() + i + 1, s.data() + i + 3, v, 16);
            out += static_cast<char>(v);
            i += 2;
        } else {
            out += c;
        }
    }
    return out;
}

std::string url_encode(std::string_view s)
{
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (detail::is_ascii_alnum(static_cast<char>(c)) || c == '-' || c == '_' || c == '.' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 15];
        }
    }
    return out;
}

}  // namespace jsrehab
