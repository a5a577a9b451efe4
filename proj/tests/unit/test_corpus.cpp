#include <gtest/gtest.h>

#include <set>

#include "fixture_server.hpp"
#include "fixtures.hpp"
#include "jsrehab/corpus.hpp"

using namespace jsrehab;

namespace {

// Serves one generated site directory: "/" and unknown paths map to index.html.
void serve_site(fx::Server& srv, const std::string& site)
{
    auto root = fx::dir() / "corpus" / site;
    for (const auto& page : fx::html_under(root)) {
        auto stem = page.stem().string();
        if (stem != "index")
            srv.add("/" + stem + ".html", fx::read_path(page), "text/html; charset=utf-8");
    }
    srv.add(R"(/.*)", fx::read_path(root / "index.html"), "text/html; charset=utf-8");
}

}  // namespace

TEST(RankedList, ParsesAndSorts)
{
    std::vector<std::string> warnings;
    auto list = load_ranked_list("2,B.example\n1,a.example\r\n\nbad\n0,zero.example\n3, c.example \n", &warnings);
    ASSERT_EQ(list.size(), 3u);
    EXPECT_EQ(list[0], (RankedDomain{1, "a.example"}));
    EXPECT_EQ(list[1], (RankedDomain{2, "b.example"}));
    EXPECT_EQ(list[2], (RankedDomain{3, "c.example"}));
    ASSERT_EQ(warnings.size(), 2u);
    EXPECT_EQ(warnings[0], "line 4: expected rank,domain");
}

TEST(RankedList, SampleFileAgainstLineOracle)
{
    auto text = fx::read("tranco_sample.csv");
    std::size_t valid = 0, blank = 0, lines = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string::npos)
            end = text.size();
        std::string line = text.substr(start, end - start);
        start = end + 1;
        ++lines;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            ++blank;
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos || comma == 0)
            continue;
        bool digits = line.find_first_not_of("0123456789") == comma;
        valid += digits ? 1 : 0;
    }
    std::vector<std::string> warnings;
    auto list = load_ranked_list(text, &warnings);
    EXPECT_EQ(list.size(), valid);
    EXPECT_EQ(warnings.size(), lines - valid - blank);
    EXPECT_TRUE(std::is_sorted(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.rank < b.rank; }));
}

TEST(InternalLinks, CandidatesAreSameOriginAndDistinct)
{
    auto base = *Url::parse("https://shop.example/");
    auto doc = parse_html("<a href=\"/\">home</a><a href=\"/a\">a</a><a href=\"a#x\">a again</a>"
                          "<a href=\"https://other.example/b\">ext</a><a href=\"mailto:x@shop.example\">m</a>"
                          "<a href=\"#top\">top</a><a href=\"http://shop.example/c\">http</a><a href=\"/d?q=1\">d</a>");
    auto c = internal_link_candidates(doc, base);
    std::vector<std::string> got;
    for (const auto& u : c)
        got.push_back(u.str());
    EXPECT_EQ(got, (std::vector<std::string>{"https://shop.example/a", "https://shop.example/d?q=1"}));
}

TEST(InternalLinks, SeededSampleProperties)
{
    std::string html;
    for (int i = 0; i < 20; ++i)
        html += "<a href=\"/p" + std::to_string(i) + "\">p</a>";
    auto doc = parse_html(html);
    auto base = *Url::parse("https://x.example/");
    auto all = internal_link_candidates(doc, base);
    std::set<std::string> universe;
    for (const auto& u : all)
        universe.insert(u.str());

    auto a = pick_internal_urls(doc, base, 3, 42);
    auto b = pick_internal_urls(doc, base, 3, 42);
    ASSERT_EQ(a.size(), 3u);
    std::set<std::string> picked;
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].str(), b[i].str());
        EXPECT_TRUE(universe.count(a[i].str()));
        picked.insert(a[i].str());
    }
    EXPECT_EQ(picked.size(), 3u);
    EXPECT_EQ(pick_internal_urls(doc, base, 50, 1).size(), 20u);
    EXPECT_TRUE(pick_internal_urls(doc, base, 0, 1).empty());

    std::set<std::string> across_seeds;
    for (std::uint64_t s = 0; s < 20; ++s)
        for (const auto& u : pick_internal_urls(doc, base, 3, s))
            across_seeds.insert(u.str());
    EXPECT_GT(across_seeds.size(), 3u);
}

TEST(CorpusRun, LocalSite)
{
    fx::Server srv;
    serve_site(srv, "site1");
    CorpusSettings settings;
    settings.schemes = {"http"};
    settings.seed = 5;
    settings.fetch.timeout_s = 5;
    MemorySink sink;
    auto out = run({{1, srv.authority()}}, settings, sink);
    auto recs = sink.records();
    EXPECT_EQ(out.domains, 1u);
    EXPECT_EQ(out.records, 4u);
    EXPECT_EQ(out.failures, 0u);
    ASSERT_EQ(recs.size(), 4u);
    std::set<std::string> urls;
    for (const auto& r : recs) {
        urls.insert(r.url);
        EXPECT_EQ(r.status, 200);
        EXPECT_TRUE(r.error.empty()) << r.error;
        EXPECT_TRUE(r.bs_detected);
        EXPECT_GT(r.orig_c, 0u);
    }
    EXPECT_EQ(urls.size(), 4u);
    EXPECT_TRUE(urls.count(srv.origin() + "/"));
}

TEST(CorpusRun, SeedIsReproducible)
{
    fx::Server srv;
    serve_site(srv, "site2");
    CorpusSettings settings;
    settings.schemes = {"http"};
    settings.internal_pages = 2;
    settings.seed = 9;
    auto urls = [&] {
        MemorySink sink;
        run({{1, srv.authority()}}, settings, sink);
        std::set<std::string> u;
        for (const auto& r : sink.records())
            u.insert(r.url);
        return u;
    };
    auto first = urls();
    EXPECT_EQ(first.size(), 3u);
    EXPECT_EQ(urls(), first);
}

TEST(CorpusRun, UnreachableDomainYieldsOneErrorRecord)
{
    CorpusSettings settings;
    settings.schemes = {"http"};
    settings.fetch.timeout_s = 2;
    MemorySink sink;
    auto out = run({{1, "does-not-exist.invalid"}}, settings, sink);
    ASSERT_EQ(sink.records().size(), 1u);
    EXPECT_EQ(out.failures, 1u);
    EXPECT_EQ(sink.records()[0].status, 0);
    EXPECT_FALSE(sink.records()[0].error.empty());
}

TEST(CorpusRun, RecordsBoundedByPagesPerDomain)
{
    std::vector<std::unique_ptr<fx::Server>> servers;
    std::vector<RankedDomain> entries;
    int rank = 1;
    for (const char* site : {"site1", "site2", "site3"}) {
        servers.push_back(std::make_unique<fx::Server>());
        serve_site(*servers.back(), site);
        entries.push_back({rank++, servers.back()->authority()});
    }
    entries.push_back({rank++, "does-not-exist.invalid"});
    CorpusSettings settings;
    settings.schemes = {"http"};
    settings.fetch.timeout_s = 2;
    settings.parallelism = 3;
    MemorySink sink;
    auto out = run(entries, settings, sink);
    EXPECT_LE(out.records, (settings.internal_pages + 1) * entries.size());
    EXPECT_EQ(out.records, 13u);
    EXPECT_EQ(sink.records().size(), out.records);
    std::size_t detected = 0;
    for (const auto& r : sink.records())
        detected += r.bs_detected ? 1 : 0;
    EXPECT_EQ(detected, 8u);
}

TEST(CorpusRun, NonHtmlLandingIsRecordedAsError)
{
    fx::Server srv;
    srv.add("/", "{}", "application/json");
    CorpusSettings settings;
    settings.schemes = {"http"};
    MemorySink sink;
    run({{1, srv.authority()}}, settings, sink);
    ASSERT_EQ(sink.records().size(), 1u);
    EXPECT_EQ(sink.records()[0].status, 200);
    EXPECT_FALSE(sink.records()[0].error.empty());
}
