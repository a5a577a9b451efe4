#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "jsrehab/rewrite.hpp"
#include "jsrehab/stats.hpp"
#include "oracles.hpp"

using namespace jsrehab;

namespace {

PageStatsRecord sample_record(int i)
{
    PageStatsRecord r;
    r.url = "https://site" + std::to_string(i) + ".example/";
    r.ts = "2026-10-16T12:00:00Z";
    r.status = 200;
    r.content_type = "text/html; charset=utf-8";
    r.compression = i % 2 ? "gzip" : "brotli";
    r.orig_c = 1000 + static_cast<std::size_t>(i) * 10;
    r.xform_c = r.orig_c + 50 + static_cast<std::size_t>(i);
    r.duration_ms = 1.5 + i;
    r.kinds = {{"dropdown", 1}, {"collapse", static_cast<std::size_t>(i % 3)}};
    r.bs_detected = true;
    r.bs_major = 5;
    r.warnings = static_cast<std::size_t>(i % 2);
    return r;
}

}  // namespace

TEST(Quantile, SmallExamples)
{
    std::vector<double> v{5, 3, 1, 4, 2};
    EXPECT_DOUBLE_EQ(quantile(v, 0.25), 2.0);
    EXPECT_DOUBLE_EQ(quantile(v, 0.5), 3.0);
    EXPECT_DOUBLE_EQ(quantile(v, 0.75), 4.0);
    EXPECT_DOUBLE_EQ(quantile({0.01, 0.05, 0.20}, 0.5), 0.05);
    EXPECT_DOUBLE_EQ(quantile({1, 2}, 0.5), 1.5);
    EXPECT_DOUBLE_EQ(quantile({7}, 0.3), 7.0);
    EXPECT_THROW(quantile({}, 0.5), std::invalid_argument);
    EXPECT_THROW(quantile({1}, 1.5), std::invalid_argument);
}

TEST(Quantile, MatchesTypeSevenOracle)
{
    std::mt19937_64 rng(20261016);
    std::uniform_int_distribution<int> len(1, 200);
    std::normal_distribution<double> value(0.1, 0.5);
    for (int k = 0; k < 100; ++k) {
        std::vector<double> v(static_cast<std::size_t>(len(rng)));
        for (auto& x : v)
            x = value(rng);
        for (double p : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0})
            EXPECT_NEAR(quantile(v, p), oracle::quantile_type7(v, p), 1e-12);
    }
}

TEST(Quantile, PermutationInvariant)
{
    std::mt19937_64 rng(7);
    std::vector<double> v(101);
    std::iota(v.begin(), v.end(), -50.0);
    auto m = summarize_metric("x", v);
    for (int i = 0; i < 10; ++i) {
        std::shuffle(v.begin(), v.end(), rng);
        auto n = summarize_metric("x", v);
        EXPECT_EQ(n.q1, m.q1);
        EXPECT_EQ(n.median, m.median);
        EXPECT_EQ(n.q3, m.q3);
    }
    EXPECT_EQ(m.min, -50.0);
    EXPECT_EQ(m.median, 0.0);
    EXPECT_EQ(m.max, 50.0);
    EXPECT_EQ(m.count, 101u);
}

TEST(Overhead, Definition)
{
    EXPECT_NEAR(overhead(100, 110), 0.1, 1e-12);
    EXPECT_DOUBLE_EQ(overhead(100, 100), 0.0);
    EXPECT_DOUBLE_EQ(overhead(0, 50), 0.0);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        std::size_t a = rng() % 1000000 + 1, b = rng() % 1000000;
        EXPECT_NEAR(overhead(a, b), oracle::relative_growth(a, b), 1e-12);
    }
}

TEST(Jsonl, RoundTrip)
{
    std::string text;
    std::vector<PageStatsRecord> in;
    for (int i = 0; i < 5; ++i) {
        in.push_back(sample_record(i));
        text += to_jsonl(in.back());
    }
    in[2].bs_major.reset();
    in[3].error = "timeout";
    text.clear();
    for (const auto& r : in)
        text += to_jsonl(r);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
    EXPECT_EQ(parse_jsonl(text), in);
}

TEST(Jsonl, FieldNames)
{
    auto j = to_json(sample_record(1));
    for (const char* k : {"url", "ts", "status", "content_type", "compression", "orig_c", "xform_c", "duration_ms", "kinds",
                          "bs_major", "warnings"})
        EXPECT_TRUE(j.contains(k)) << k;
    auto r = sample_record(1);
    r.bs_major.reset();
    EXPECT_TRUE(to_json(r)["bs_major"].is_null());
}

TEST(Jsonl, SkipsHeaderAndBlankLines)
{
    std::string text = "{\"run\":{\"seed\":1}}\n\n" + to_jsonl(sample_record(1)) + "\n";
    EXPECT_EQ(parse_jsonl(text).size(), 1u);
}

TEST(Jsonl, MalformedLineIsNamed)
{
    std::string text = to_jsonl(sample_record(1)) + "{oops\n";
    try {
        parse_jsonl(text);
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_EQ(std::string(e.what()).rfind("line 2:", 0), 0u) << e.what();
    }
}

TEST(Jsonl, FileSinkAppends)
{
    auto path = std::filesystem::temp_directory_path() / "jsrehab_sink_test.jsonl";
    std::filesystem::remove(path);
    {
        JsonlSink sink(path.string());
        sink.append(sample_record(1));
        sink.append(sample_record(2));
    }
    auto back = parse_jsonl(fx::read_path(path));
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[1], sample_record(2));
    std::filesystem::remove(path);
}

TEST(Record, FromRewrite)
{
    auto res = rewrite_document(fx::read("realistic.html"), {});
    auto r = make_record("file:realistic.html", 200, "text/html", res);
    EXPECT_EQ(r.orig_c, res.stats.original_compressed);
    EXPECT_EQ(r.xform_c, res.stats.transformed_compressed);
    EXPECT_TRUE(r.bs_detected);
    EXPECT_EQ(r.bs_major, res.profile.major);
    std::size_t total = 0;
    for (const auto& [k, n] : r.kinds)
        total += n;
    EXPECT_EQ(total, res.instances.size());
    EXPECT_EQ(r.ts.size(), std::string("2026-10-16T12:00:00.000Z").size());
    EXPECT_EQ(r.ts.back(), 'Z');
}

TEST(Report, Summary)
{
    std::vector<PageStatsRecord> recs;
    for (int i = 0; i < 4; ++i)
        recs.push_back(sample_record(i));
    auto plain = sample_record(9);
    plain.bs_detected = false;
    plain.bs_major.reset();
    plain.kinds.clear();
    recs.push_back(plain);
    auto failed = sample_record(10);
    failed.status = 0;
    failed.error = "dns";
    recs.push_back(failed);

    auto rep = summarize(recs);
    EXPECT_EQ(rep.records, 6u);
    EXPECT_EQ(rep.html_pages, 5u);
    EXPECT_EQ(rep.bootstrap_pages, 4u);
    EXPECT_DOUBLE_EQ(rep.bootstrap_fraction, 0.8);
    ASSERT_EQ(rep.metrics.size(), 4u);
    EXPECT_EQ(rep.metrics[0].metric, "overhead");
    EXPECT_EQ(rep.metrics[0].count, 4u);
    std::vector<double> ov;
    for (int i = 0; i < 4; ++i)
        ov.push_back(oracle::relative_growth(recs[i].orig_c, recs[i].xform_c));
    EXPECT_NEAR(rep.metrics[0].median, oracle::quantile_type7(ov, 0.5), 1e-12);
    EXPECT_EQ(rep.kinds.at(ComponentKind::Dropdown), 4u);
    EXPECT_EQ(rep.kinds.at(ComponentKind::Collapse), 2u);
    EXPECT_EQ(rep.kinds.at(ComponentKind::Modal), 0u);
}

TEST(Report, EmptyInput)
{
    auto rep = summarize({});
    EXPECT_EQ(rep.records, 0u);
    EXPECT_EQ(rep.bootstrap_fraction, 0.0);
    for (const auto& m : rep.metrics)
        EXPECT_EQ(m.count, 0u);
    auto csv = report_csv(rep);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "metric,min,q1,median,q3,max,count");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(Report, CsvValuesRoundTrip)
{
    std::vector<PageStatsRecord> recs;
    for (int i = 0; i < 7; ++i)
        recs.push_back(sample_record(i));
    auto rep = summarize(recs);
    auto csv = report_csv(rep);
    auto line = csv.substr(csv.find('\n') + 1);
    line = line.substr(0, line.find('\n'));
    std::vector<double> cells;
    std::size_t pos = line.find(',') + 1;
    for (int i = 0; i < 5; ++i) {
        auto next = line.find(',', pos);
        cells.push_back(std::stod(line.substr(pos, next - pos)));
        pos = next + 1;
    }
    EXPECT_EQ(cells[0], rep.metrics[0].min);
    EXPECT_EQ(cells[2], rep.metrics[0].median);
    EXPECT_EQ(cells[4], rep.metrics[0].max);
    auto j = report_json(rep);
    EXPECT_EQ(j["metrics"]["overhead"]["median"].get<double>(), rep.metrics[0].median);
    EXPECT_EQ(j["kinds"]["dropdown"]["pages"].get<std::size_t>(), 7u);
}
