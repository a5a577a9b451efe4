#include <array>
#include <cstdint>
#include <regex>
#include <unordered_map>

#include "jsrehab/dom.hpp"
#include "strings.hpp"

namespace jsrehab {

namespace {

// windows-1252 code points for bytes 0x80..0x9F; also used for numeric
// character references in that range.
constexpr std::array<std::uint32_t, 32> kWindows1252High = {
    0x20AC, 0x0081, 0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021, 0x02C6, 0x2030, 0x0160,
    0x2039, 0x0152, 0x008D, 0x017D, 0x008F, 0x0090, 0x2018, 0x2019, 0x201C, 0x201D, 0x2022,
    0x2013, 0x2014, 0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0x009D, 0x017E, 0x0178};

void append_utf8(std::string& out, std::uint32_t cp)
{
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

constexpr std::uint32_t kReplacement = 0xFFFD;

// Lossy UTF-8 validation: each maximal invalid subpart becomes U+FFFD.
std::string utf8_lossy(std::string_view in)
{
    std::string out;
    out.reserve(in.size());
    std::size_t i = 0;
    const auto n = in.size();
    while (i < n) {
        auto b0 = static_cast<unsigned char>(in[i]);
        if (b0 < 0x80) {
            out += static_cast<char>(b0);
            ++i;
            continue;
        }
        int len = 0;
        std::uint32_t cp = 0;
        unsigned char lo = 0x80, hi = 0xBF;
        if (b0 >= 0xC2 && b0 <= 0xDF) {
            len = 2;
            cp = b0 & 0x1F;
        } else if (b0 >= 0xE0 && b0 <= 0xEF) {
            len = 3;
            cp = b0 & 0x0F;
            if (b0 == 0xE0)
                lo = 0xA0;
            if (b0 == 0xED)
                hi = 0x9F;
        } else if (b0 >= 0xF0 && b0 <= 0xF4) {
            len = 4;
            cp = b0 & 0x07;
            if (b0 == 0xF0)
                lo = 0x90;
            if (b0 == 0xF4)
                hi = 0x8F;
        } else {
            append_utf8(out, kReplacement);
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        bool ok = true;
        for (int k = 1; k < len; ++k, ++j) {
            if (j >= n) {
                ok = false;
                break;
            }
            auto b = static_cast<unsigned char>(in[j]);
            unsigned char l = k == 1 ? lo : 0x80;
            unsigned char h = k == 1 ? hi : 0xBF;
            if (b < l || b > h) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (b & 0x3F);
        }
        if (ok) {
            out.append(in.substr(i, len));
            i = j;
        } else {
            append_utf8(out, kReplacement);
            i = j;
        }
    }
    return out;
}

std::string single_byte_to_utf8(std::string_view in, bool windows1252)
{
    std::string out;
    out.reserve(in.size() + in.size() / 8);
    for (char ch : in) {
        auto b = static_cast<unsigned char>(ch);
        if (b < 0x80)
            out += ch;
        else if (windows1252 && b < 0xA0)
            append_utf8(out, kWindows1252High[b - 0x80]);
        else
            append_utf8(out, b);
    }
    return out;
}

const std::unordered_map<std::string, std::string>& named_entities()
{
    static const std::unordered_map<std::string, std::string> table = [] {
        struct Entry {
            const char* name;
            const char* value;
        };
        static constexpr Entry entries[] = {
#include "entities.inc"
        };
        std::unordered_map<std::string, std::string> m;
        m.reserve(std::size(entries));
        for (const auto& e : entries)
            m.emplace(e.name, e.value);
        return m;
    }();
    return table;
}

bool is_hex(char c)
{
    return detail::is_ascii_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

}  // namespace

std::string decode_entities(std::string_view text, bool in_attribute)
{
    if (text.find('&') == std::string_view::npos)
        return std::string(text);
    const auto& table = named_entities();
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    const auto n = text.size();
    while (i < n) {
        char c = text[i];
        if (c != '&') {
            out += c;
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        if (j < n && text[j] == '#') {
            ++j;
            bool hex = j < n && (text[j] == 'x' || text[j] == 'X');
            if (hex)
                ++j;
            std::size_t digits_start = j;
            std::uint64_t value = 0;
            while (j < n && (hex ? is_hex(text[j]) : detail::is_ascii_digit(text[j]))) {
                if (value <= 0x10FFFF) {
                    int d = detail::is_ascii_digit(text[j]) ? text[j] - '0' : (detail::to_lower(text[j]) - 'a' + 10);
                    value = value * (hex ? 16 : 10) + d;
                }
                ++j;
            }
            if (j == digits_start) {
                out += '&';
                ++i;
                continue;
            }
            if (j < n && text[j] == ';')
                ++j;
            std::uint32_t cp;
            if (value == 0 || value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF))
                cp = kReplacement;
            else if (value >= 0x80 && value <= 0x9F)
                cp = kWindows1252High[value - 0x80];
            else
                cp = static_cast<std::uint32_t>(value);
            append_utf8(out, cp);
            i = j;
            continue;
        }
        // Named reference: longest match, ';'-terminated names first.
        std::size_t k = j;
        while (k < n && k - j < 40 && detail::is_ascii_alnum(text[k]))
            ++k;
        if (k == j) {
            out += '&';
            ++i;
            continue;
        }
        if (k < n && text[k] == ';') {
            auto it = table.find(std::string(text.substr(j, k - j + 1)));
            if (it != table.end()) {
                out += it->second;
                i = k + 1;
                continue;
            }
        }
        bool matched = false;
        for (std::size_t len = std::min<std::size_t>(k - j, 6); len >= 2; --len) {
            auto it = table.find(std::string(text.substr(j, len)));
            if (it == table.end())
                continue;
            std::size_t end = j + len;
            if (in_attribute && end < n && (detail::is_ascii_alnum(text[end]) || text[end] == '='))
                break;
            out += it->second;
            i = end;
            matched = true;
            break;
        }
        if (!matched) {
            out += '&';
            ++i;
        }
    }
    return out;
}

std::optional<std::string> sniff_charset(std::string_view bytes)
{
    if (bytes.starts_with("\xEF\xBB\xBF"))
        return "utf-8";
    auto head = std::string(bytes.substr(0, 1024));
    static const std::regex meta_charset(R"(<meta[^>]*?charset\s*=\s*["']?\s*([A-Za-z0-9._:-]+))", std::regex::icase);
    std::smatch m;
    if (std::regex_search(head, m, meta_charset))
        return detail::to_lower(m[1].str());
    return std::nullopt;
}

std::string to_utf8(std::string_view bytes, std::string_view charset)
{
    if (bytes.starts_with("\xEF\xBB\xBF"))
        return utf8_lossy(bytes.substr(3));
    auto label = detail::to_lower(detail::trim(charset));
    if (label == "iso-8859-1" || label == "latin1" || label == "l1" || label == "us-ascii" || label == "ascii" ||
        label == "windows-1252" || label == "cp1252" || label == "x-cp1252" || label == "iso8859-1" ||
        label == "iso_8859-1") {
        // WHATWG maps all of these labels to windows-1252.
        return single_byte_to_utf8(bytes, true);
    }
    return utf8_lossy(bytes);
}

}  // namespace jsrehab
