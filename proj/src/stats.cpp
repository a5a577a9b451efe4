#include "jsrehab/stats.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <stdexcept>

namespace jsrehab {

std::string utc_timestamp()
{
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[40];
    std::size_t n = std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    std::snprintf(buf + n, sizeof buf - n, ".%03dZ", static_cast<int>(ms));
    return buf;
}

PageStatsRecord make_record(std::string url, int status, std::string content_type, const RewriteResult& result)
{
    PageStatsRecord r;
    r.url = std::move(url);
    r.ts = utc_timestamp();
    r.status = status;
    r.content_type = std::move(content_type);
    r.compression = std::string(encoding_name(result.stats.compression));
    r.orig_c = result.stats.original_compressed;
    r.xform_c = result.stats.transformed_compressed;
    r.duration_ms = result.stats.duration_ms;
    r.kinds = result.stats.instances_by_kind;
    r.bs_detected = result.profile.detected;
    r.bs_major = result.profile.major;
    r.warnings = result.warnings.size();
    return r;
}

nlohmann::json to_json(const PageStatsRecord& r)
{
    nlohmann::json j = {
        {"url", r.url},
        {"ts", r.ts},
        {"status", r.status},
        {"content_type", r.content_type},
        {"compression", r.compression},
        {"orig_c", r.orig_c},
        {"xform_c", r.xform_c},
        {"duration_ms", r.duration_ms},
        {"kinds", r.kinds},
        {"bs_major", nullptr},
        {"bs_detected", r.bs_detected},
        {"warnings", r.warnings},
    };
    if (r.bs_major)
        j["bs_major"] = *r.bs_major;
    if (!r.error.empty())
        j["error"] = r.error;
    return j;
}

PageStatsRecord record_from_json(const nlohmann::json& j)
{
    PageStatsRecord r;
    r.url = j.at("url").get<std::string>();
    r.ts = j.value("ts", "");
    r.status = j.value("status", 0);
    r.content_type = j.value("content_type", "");
    r.compression = j.value("compression", "identity");
    r.orig_c = j.value("orig_c", std::size_t{0});
    r.xform_c = j.value("xform_c", std::size_t{0});
    r.duration_ms = j.value("duration_ms", 0.0);
    if (j.contains("kinds"))
        r.kinds = j.at("kinds").get<std::map<std::string, std::size_t>>();
    if (j.contains("bs_major") && !j.at("bs_major").is_null())
        r.bs_major = j.at("bs_major").get<int>();
    r.bs_detected = j.value("bs_detected", r.bs_major.has_value());
    r.warnings = j.value("warnings", std::size_t{0});
    r.error = j.value("error", "");
    return r;
}

std::string to_jsonl(const PageStatsRecord& r) { return to_json(r).dump() + "\n"; }

std::vector<PageStatsRecord> parse_jsonl(std::string_view text)
{
    std::vector<PageStatsRecord> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos)
            continue;
        try {
            auto j = nlohmann::json::parse(line);
            if (j.contains("run") && !j.contains("url"))
                continue;
            out.push_back(record_from_json(j));
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

JsonlSink::JsonlSink(const std::string& path) : out_(path, std::ios::app | std::ios::binary)
{
    if (!out_)
        throw std::runtime_error("cannot open stats file " + path);
}

void JsonlSink::append(const PageStatsRecord& r)
{
    auto line = to_jsonl(r);
    std::lock_guard lock(mu_);
    out_ << line;
    out_.flush();
}

void MemorySink::append(const PageStatsRecord& r)
{
    std::lock_guard lock(mu_);
    records_.push_back(r);
}

std::vector<PageStatsRecord> MemorySink::records() const
{
    std::lock_guard lock(mu_);
    return records_;
}

double quantile(std::vector<double> values, double p)
{
    if (values.empty())
        throw std::invalid_argument("quantile of an empty sample");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("quantile probability outside [0, 1]");
    std::sort(values.begin(), values.end());
    double h = (static_cast<double>(values.size()) - 1.0) * p;
    auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= values.size())
        return values.back();
    return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

MetricSummary summarize_metric(std::string metric, const std::vector<double>& values)
{
    MetricSummary m;
    m.metric = std::move(metric);
    m.count = values.size();
    if (values.empty())
        return m;
    m.min = *std::min_element(values.begin(), values.end());
    m.max = *std::max_element(values.begin(), values.end());
    m.q1 = quantile(values, 0.25);
    m.median = quantile(values, 0.5);
    m.q3 = quantile(values, 0.75);
    return m;
}

Report summarize(const std::vector<PageStatsRecord>& records)
{
    Report rep;
    rep.records = records.size();
    std::vector<double> overhead_v, duration_v, orig_v, xform_v;
    std::vector<std::vector<ComponentKind>> pages;
    for (const auto& r : records) {
        if (!r.error.empty() || r.status == 0)
            continue;
        ++rep.html_pages;
        duration_v.push_back(r.duration_ms);
        if (!r.bs_detected)
            continue;
        ++rep.bootstrap_pages;
        if (r.orig_c > 0) {
            overhead_v.push_back(overhead(r.orig_c, r.xform_c));
            orig_v.push_back(static_cast<double>(r.orig_c));
            xform_v.push_back(static_cast<double>(r.xform_c));
        }
        std::vector<ComponentKind> kinds;
        for (const auto& [name, n] : r.kinds) {
            if (n == 0)
                continue;
            if (auto k = kind_from_name(name))
                kinds.push_back(*k);
        }
        pages.push_back(std::move(kinds));
    }
    rep.bootstrap_fraction = rep.html_pages ? static_cast<double>(rep.bootstrap_pages) / static_cast<double>(rep.html_pages) : 0.0;
    rep.metrics.push_back(summarize_metric("overhead", overhead_v));
    rep.metrics.push_back(summarize_metric("duration_ms", duration_v));
    rep.metrics.push_back(summarize_metric("orig_c", orig_v));
    rep.metrics.push_back(summarize_metric("xform_c", xform_v));
    rep.kinds = component_stats(pages);
    return rep;
}

std::string report_csv(const Report& report)
{
    std::string out = "metric,min,q1,median,q3,max,count\n";
    for (const auto& m : report.metrics) {
        char buf[256];
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g,%.17g,%.17g,%zu\n", m.min, m.q1, m.median, m.q3, m.max, m.count);
        out += m.metric + buf;
    }
    return out;
}

nlohmann::json report_json(const Report& report)
{
    nlohmann::json metrics = nlohmann::json::object();
    for (const auto& m : report.metrics) {
        metrics[m.metric] = {{"min", m.min}, {"q1", m.q1}, {"median", m.median}, {"q3", m.q3}, {"max", m.max}, {"count", m.count}};
    }
    nlohmann::json kinds = nlohmann::json::object();
    auto fractions = component_fractions(report.kinds, report.bootstrap_pages);
    for (const auto& [k, n] : report.kinds)
        kinds[std::string(kind_name(k))] = {{"pages", n}, {"fraction", fractions.at(k)}};
    return {
        {"records", report.records},
        {"html_pages", report.html_pages},
        {"bootstrap_pages", report.bootstrap_pages},
        {"bootstrap_fraction", report.bootstrap_fraction},
        {"metrics", metrics},
        {"kinds", kinds},
    };
}

}  // namespace jsrehab
