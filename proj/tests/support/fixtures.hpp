#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

namespace fx {

namespace fs = std::filesystem;

inline fs::path dir() { return fs::path(JSREHAB_FIXTURE_DIR); }

inline std::string read_path(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw std::runtime_error("missing fixture " + p.string());
    return {std::istreambuf_iterator<char>(in), {}};
}

inline std::string read(const std::string& rel) { return read_path(dir() / rel); }
inline std::string read(const char* rel) { return read(std::string(rel)); }

struct Component {
    std::string dialect;  // "v2".."v5"
    std::string kind;     // file stem, e.g. "navs-tabs"
    fs::path path;
};

inline std::vector<Component> components()
{
    std::vector<Component> out;
    for (const auto& e : fs::recursive_directory_iterator(dir() / "components")) {
        if (e.path().extension() == ".html")
            out.push_back({e.path().parent_path().filename().string(), e.path().stem().string(), e.path()});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
    return out;
}

inline bool unsupported_kind(const std::string& kind) { return kind == "scrollspy" || kind == "typeahead"; }

inline std::vector<fs::path> html_under(const fs::path& root)
{
    std::vector<fs::path> out;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (e.path().extension() == ".html")
            out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Every HTML fixture in the suite.
inline std::vector<fs::path> all_html() { return html_under(dir()); }

inline std::vector<fs::path> corpus_pages() { return html_under(dir() / "corpus"); }

}  // namespace fx
