#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "jsrehab/compression.hpp"
#include "jsrehab/rewrite.hpp"
#include "jsrehab/statesim.hpp"
#include "oracles.hpp"

using namespace jsrehab;

TEST(Rewrite, EmptyDocumentOnlyNormalizes)
{
    auto res = rewrite_document("", {});
    EXPECT_EQ(res.mutations, 0u);
    EXPECT_TRUE(res.rules.empty());
    EXPECT_TRUE(res.warnings.empty());
    EXPECT_FALSE(res.profile.detected);
    EXPECT_EQ(res.html.find("<style"), std::string::npos);
    EXPECT_EQ(serialize(parse_html(res.html)), res.html);
}

TEST(Rewrite, PlainPageHasNoStyle)
{
    auto res = rewrite_document(fx::read("corpus/site3/index.html"), {});
    EXPECT_FALSE(res.profile.detected);
    EXPECT_EQ(res.mutations, 0u);
    EXPECT_EQ(res.html.find("data-jsrehab"), std::string::npos);
}

TEST(Rewrite, IdempotentOverAllFixtures)
{
    for (const auto& path : fx::all_html()) {
        for (auto mode : {TabsMechanism::Radio, TabsMechanism::Target}) {
            RewriteConfig config;
            config.tabs_mechanism = mode;
            auto once = rewrite_document(fx::read_path(path), config);
            auto twice = rewrite_document(once.html, config);
            EXPECT_EQ(twice.html, once.html) << path;
            EXPECT_EQ(twice.mutations, 0u) << path;
        }
    }
}

TEST(Rewrite, HighlightIsIdempotentToo)
{
    RewriteConfig config;
    config.highlight = true;
    auto once = rewrite_document(fx::read("realistic.html"), config);
    EXPECT_EQ(rewrite_document(once.html, config).html, once.html);
    EXPECT_EQ(once.html.find("<style"), once.html.rfind("<style data-jsrehab"));
}

TEST(Rewrite, Deterministic)
{
    auto a = rewrite_document(fx::read("realistic.html"), {});
    auto b = rewrite_document(fx::read("realistic.html"), {});
    EXPECT_EQ(a.html, b.html);
}

TEST(Rewrite, RewrittenFixturesPassCheck)
{
    for (const auto& path : fx::all_html()) {
        if (path.filename() == "broken.html")
            continue;
        auto res = rewrite_document(fx::read_path(path), {});
        auto report = check(parse_html(res.html));
        EXPECT_TRUE(report.ok()) << path << ": "
                                 << (report.failures.empty() ? "" : report.failures[0].assertion + " " + report.failures[0].detail);
    }
}

TEST(Rewrite, StatsSizes)
{
    auto input = fx::read("realistic.html");
    auto res = rewrite_document(input, {});
    EXPECT_EQ(res.stats.original_size, input.size());
    EXPECT_EQ(res.stats.transformed_size, res.html.size());
    EXPECT_EQ(res.stats.size_algorithm, Encoding::Gzip);
    EXPECT_EQ(res.stats.original_compressed, compress(input, Encoding::Gzip).size());
    EXPECT_EQ(res.stats.transformed_compressed, compress(res.html, Encoding::Gzip).size());
    EXPECT_NEAR(overhead(res.stats), oracle::relative_growth(res.stats.original_compressed, res.stats.transformed_compressed),
                1e-12);
    EXPECT_GT(res.stats.duration_ms, 0.0);
    EXPECT_EQ(res.stats.node_count, parse_html(input).node_count());
    std::size_t total = 0;
    for (const auto& [k, n] : res.stats.instances_by_kind)
        total += n;
    EXPECT_EQ(total, res.instances.size());
}

TEST(Rewrite, BrotliSizeAlgorithm)
{
    RewriteConfig config;
    config.compression_for_stats = StatsCompression::Brotli;
    auto input = fx::read("dropdown.html");
    auto res = rewrite_document(input, config);
    EXPECT_EQ(res.stats.size_algorithm, Encoding::Brotli);
    EXPECT_EQ(res.stats.original_compressed, compress(input, Encoding::Brotli).size());
}

TEST(Rewrite, AutoFollowsDeliveredEncoding)
{
    RewriteConfig config;
    config.compression_for_stats = StatsCompression::Auto;
    EXPECT_EQ(stats_algorithm(config, Encoding::Brotli), Encoding::Brotli);
    EXPECT_EQ(stats_algorithm(config, Encoding::Gzip), Encoding::Gzip);
    EXPECT_EQ(stats_algorithm(config, Encoding::Identity), Encoding::Gzip);
    EXPECT_EQ(stats_algorithm({}, Encoding::Brotli), Encoding::Gzip);
}

TEST(Rewrite, SkipsCompressionWhenAsked)
{
    RewriteOptions options;
    options.measure_compressed = false;
    auto res = rewrite_document(fx::read("dropdown.html"), {}, options);
    EXPECT_EQ(res.stats.original_compressed, 0u);
    EXPECT_EQ(res.stats.transformed_compressed, 0u);
}

TEST(Rewrite, LegacyCharsetBecomesUtf8)
{
    std::string page = fx::read("dropdown.html");
    auto at = page.find("Action");
    page.replace(at, 6, "Caf\xE9");
    auto meta = page.find("<meta charset=\"utf-8\">");
    page.replace(meta, 22, "<meta charset=\"windows-1252\">");
    auto res = rewrite_document(page, {});
    EXPECT_NE(res.html.find("Caf\xC3\xA9"), std::string::npos);
    EXPECT_EQ(res.html.find("windows-1252"), std::string::npos);
    EXPECT_NE(res.html.find("charset=\"utf-8\""), std::string::npos);

    RewriteOptions hinted;
    hinted.charset = "iso-8859-1";
    auto page2 = fx::read("dropdown.html");
    page2.replace(page2.find("Action"), 6, "Caf\xE9");
    EXPECT_NE(rewrite_document(page2, {}, hinted).html.find("Caf\xC3\xA9"), std::string::npos);
}

TEST(Rewrite, ScriptBodiesFeedDetection)
{
    std::string page = "<html><head><script src=\"/js/app.js\"></script></head><body>"
                       "<div class=\"dropdown\"><button class=\"btn dropdown-toggle\" data-toggle=\"dropdown\">Menu</button>"
                       "<div class=\"dropdown-menu\"><a href=\"#\">x</a></div></div></body></html>";
    ScriptBodies bodies{{"/js/app.js", "/*!\n * Bootstrap v4.6.2 (https://getbootstrap.com/)\n */"}};
    RewriteOptions options;
    options.script_bodies = &bodies;
    auto res = rewrite_document(page, {}, options);
    ASSERT_TRUE(res.profile.major);
    EXPECT_EQ(*res.profile.major, 4);
    EXPECT_EQ(res.instances.size(), 1u);
    EXPECT_GT(res.mutations, 0u);
}
