#include "jsrehab/rewrite.hpp"

#include <algorithm>
#include <chrono>

#include "jsrehab/cssgen.hpp"
#include "strings.hpp"

namespace jsrehab {

namespace {

// Instance rules from a previous pass, minus the ones inject_styles re-adds.
std::vector<CssRule> previous_rules(const DomTree& doc)
{
    NodeId style = find_injected_style(doc);
    if (!style)
        return {};
    std::vector<CssRule> parsed;
    try {
        parsed = parse_stylesheet(doc.text_content(style));
    } catch (const CssParseError&) {
        return {};
    }
    auto base = base_stylesheet();
    auto hl = highlight_rule();
    std::vector<CssRule> out;
    for (auto& r : parsed) {
        if (r == hl || std::find(base.begin(), base.end(), r) != base.end())
            continue;
        out.push_back(std::move(r));
    }
    return out;
}

bool is_utf8_label(std::string_view label)
{
    auto l = detail::to_lower(detail::trim(label));
    return l == "utf-8" || l == "utf8" || l == "unicode-1-1-utf-8";
}

// Output is always UTF-8, so declarations naming another charset are updated.
void declare_utf8(DomTree& doc)
{
    for (auto n : doc.elements_in_order()) {
        if (!doc.is_element(n, "meta"))
            continue;
        if (auto cs = doc.attr(n, "charset"); cs && !is_utf8_label(*cs))
            doc.set_attr(n, "charset", "utf-8");
        auto equiv = doc.attr(n, "http-equiv");
        auto content = doc.attr(n, "content");
        if (!equiv || !content || !detail::iequals(detail::trim(*equiv), "content-type"))
            continue;
        auto lc = detail::to_lower(*content);
        auto pos = lc.find("charset=");
        if (pos != std::string::npos && !is_utf8_label(std::string_view(lc).substr(pos + 8)))
            doc.set_attr(n, "content", "text/html; charset=utf-8");
    }
}

}  // namespace

Encoding stats_algorithm(const RewriteConfig& config, Encoding delivered)
{
    switch (config.compression_for_stats) {
    case StatsCompression::Gzip:
        return Encoding::Gzip;
    case StatsCompression::Brotli:
        return Encoding::Brotli;
    case StatsCompression::Auto:
        return delivered == Encoding::Identity ? Encoding::Gzip : delivered;
    }
    return Encoding::Gzip;
}

RewriteResult rewrite_document(std::string_view input, const RewriteConfig& config, const RewriteOptions& options)
{
    using clock = std::chrono::steady_clock;
    RewriteResult res;
    auto t0 = clock::now();

    std::optional<std::string_view> hint;
    if (options.charset)
        hint = *options.charset;
    DomTree doc = parse_html(input, hint);
    std::string charset = options.charset ? *options.charset : sniff_charset(input).value_or("utf-8");
    if (!is_utf8_label(charset))
        declare_utf8(doc);
    res.stats.node_count = doc.node_count();

    res.profile = detect_bootstrap(doc, options.script_bodies);
    if (res.profile.detected)
        res.instances = scan_components(doc, res.profile);
    for (const auto& in : res.instances)
        ++res.stats.instances_by_kind[std::string(kind_name(in.kind))];

    RewritePlan p = plan(doc, res.instances, config);
    res.mutations = apply_plan(p, doc, res.profile.attr_prefix);
    res.warnings = std::move(p.warnings);
    if (res.mutations > 0) {
        std::vector<CssRule> all = previous_rules(doc);
        all.insert(all.end(), p.rules.begin(), p.rules.end());
        inject_styles(doc, all, config.highlight);
    }
    res.rules = std::move(p.rules);
    res.html = serialize(doc);

    res.stats.duration_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    res.stats.original_size = input.size();
    res.stats.transformed_size = res.html.size();
    res.stats.compression = options.delivered;
    res.stats.size_algorithm = stats_algorithm(config, options.delivered);
    if (options.measure_compressed) {
        res.stats.original_compressed = compress(input, res.stats.size_algorithm).size();
        res.stats.transformed_compressed = compress(res.html, res.stats.size_algorithm).size();
    }
    return res;
}

double overhead(std::size_t original, std::size_t transformed)
{
    if (original == 0)
        return 0.0;
    return static_cast<double>(transformed) / static_cast<double>(original) - 1.0;
}

double overhead(const RewriteStats& stats)
{
    return overhead(stats.original_compressed, stats.transformed_compressed);
}

}  // namespace jsrehab
