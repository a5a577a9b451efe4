#pragma once

#include <algorithm>
#include <string>
#include <string_view>

namespace jsrehab::detail {

constexpr bool is_ascii_whitespace(char c)
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

constexpr bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
constexpr bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }
constexpr bool is_ascii_alnum(char c) { return is_ascii_alpha(c) || is_ascii_digit(c); }
constexpr bool is_ascii_hex(char c) { return is_ascii_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F'); }
constexpr char to_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c; }

inline std::string to_lower(std::string_view s)
{
    std::string out(s);
    for (auto& c : out)
        c = to_lower(c);
    return out;
}

inline bool iequals(std::string_view a, std::string_view b)
{
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) { return to_lower(x) == to_lower(y); });
}

inline bool istarts_with(std::string_view s, std::string_view prefix)
{
    return s.size() >= prefix.size() && iequals(s.substr(0, prefix.size()), prefix);
}

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && is_ascii_whitespace(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_ascii_whitespace(s.back()))
        s.remove_suffix(1);
    return s;
}

inline bool is_blank(std::string_view s) { return trim(s).empty(); }

template <typename F>
void for_each_token(std::string_view s, F&& f)
{
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_ascii_whitespace(s[i]))
            ++i;
        std::size_t start = i;
        while (i < s.size() && !is_ascii_whitespace(s[i]))
            ++i;
        if (i > start)
            f(s.substr(start, i - start));
    }
}

}  // namespace jsrehab::detail
