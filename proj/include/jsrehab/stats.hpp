#pragma once

#include <cstddef>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "jsrehab/detect.hpp"
#include "jsrehab/rewrite.hpp"

namespace jsrehab {

/// One line of the JSONL stats stream.
struct PageStatsRecord {
    std::string url;
    std::string ts;
    int status = 0;
    std::string content_type;
    std::string compression = "identity";
    std::size_t orig_c = 0;
    std::size_t xform_c = 0;
    double duration_ms = 0;
    std::map<std::string, std::size_t> kinds;
    bool bs_detected = false;
    std::optional<int> bs_major;
    std::size_t warnings = 0;
    std::string error;

    bool operator==(const PageStatsRecord&) const = default;
};

std::string utc_timestamp();

/// Record for a rewritten page; sizes come from the result's stats.
PageStatsRecord make_record(std::string url, int status, std::string content_type, const RewriteResult& result);

nlohmann::json to_json(const PageStatsRecord& r);
PageStatsRecord record_from_json(const nlohmann::json& j);
std::string to_jsonl(const PageStatsRecord& r);
/// Blank lines and run header lines are skipped; malformed lines throw std::invalid_argument naming the line.
std::vector<PageStatsRecord> parse_jsonl(std::string_view text);

class RecordSink {
public:
    virtual ~RecordSink() = default;
    virtual void append(const PageStatsRecord& r) = 0;
};

/// Appends one flushed line per record; safe to share between threads.
class JsonlSink : public RecordSink {
public:
    explicit JsonlSink(const std::string& path);
    void append(const PageStatsRecord& r) override;

private:
    std::mutex mu_;
    std::ofstream out_;
};

class MemorySink : public RecordSink {
public:
    void append(const PageStatsRecord& r) override;
    std::vector<PageStatsRecord> records() const;

private:
    mutable std::mutex mu_;
    std::vector<PageStatsRecord> records_;
};

/// Linear interpolation between closest ranks (Hyndman-Fan type 7):
/// h = (n-1)p, q = x[floor h] + (h - floor h)(x[floor h + 1] - x[floor h]).
double quantile(std::vector<double> values, double p);

struct MetricSummary {
    std::string metric;
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
    std::size_t count = 0;
};

MetricSummary summarize_metric(std::string metric, const std::vector<double>& values);

struct Report {
    std::size_t records = 0;
    std::size_t html_pages = 0;       // fetched without error
    std::size_t bootstrap_pages = 0;  // html pages with Bootstrap detected
    double bootstrap_fraction = 0;
    std::vector<MetricSummary> metrics;  // overhead, duration_ms, orig_c, xform_c
    KindHistogram kinds;                 // pages per component kind
};

Report summarize(const std::vector<PageStatsRecord>& records);
/// `metric,min,q1,median,q3,max,count` with one row per metric.
std::string report_csv(const Report& report);
nlohmann::json report_json(const Report& report);

}  // namespace jsrehab
