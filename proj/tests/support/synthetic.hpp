#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace fx {

// Bootstrap 5 page with roughly `nodes` nodes and ~100 bytes per node.
// A component is placed every 100 blocks.
inline std::string synthetic_page(std::size_t nodes, std::uint64_t seed = 7)
{
    static const char* words[] = {"harbour", "linen", "market", "copper", "window", "garden", "river", "lantern",
                                  "meadow", "thread", "signal", "orchard", "pepper", "marble", "canvas", "timber"};
    std::mt19937_64 rng(seed);
    auto text = [&](int n) {
        std::string s;
        for (int i = 0; i < n; ++i) {
            if (i)
                s += ' ';
            s += words[rng() % 16];
        }
        return s;
    };
    std::string out =
        "<!DOCTYPE html><html lang=\"en\"><head><meta charset=\"utf-8\"><title>synthetic</title>"
        "<script src=\"https://cdn.jsdelivr.net/npm/bootstrap@5.3.3/dist/js/bootstrap.bundle.min.js\"></script></head><body>\n";
    out.reserve(nodes * 110);
    std::size_t count = 9, block = 0;
    while (count < nodes) {
        if (block % 100 == 0) {
            auto id = std::to_string(block);
            switch ((block / 100) % 3) {
            case 0:
                out += "<div class=\"dropdown\"><button class=\"btn dropdown-toggle\" type=\"button\" data-bs-toggle=\"dropdown\">Menu " + id +
                       "</button><ul class=\"dropdown-menu\"><li><a class=\"dropdown-item\" href=\"/a\">" + text(2) + "</a></li></ul></div>\n";
                count += 8;
                break;
            case 1:
                out += "<button class=\"btn\" data-bs-toggle=\"collapse\" data-bs-target=\"#c" + id + "\">More</button><div class=\"collapse\" id=\"c" +
                       id + "\"><p>" + text(12) + "</p></div>\n";
                count += 6;
                break;
            default:
                out += "<a href=\"/t\" data-bs-toggle=\"tooltip\" title=\"" + text(3) + "\">tip</a>\n";
                count += 3;
                break;
            }
        }
        out += "<section class=\"block b" + std::to_string(block % 7) + "\"><h2>" + text(3) + "</h2><p class=\"lead\">" + text(140) +
               "</p><ul><li><a href=\"/p/" + std::to_string(block) + "\">" + text(2) + "</a></li><li>" + text(5) + "</li></ul></section>\n";
        count += 12;
        ++block;
    }
    out += "</body></html>\n";
    return out;
}

}  // namespace fx
