#include <gtest/gtest.h>

#include "jsrehab/url.hpp"

using namespace jsrehab;

TEST(Url, Parse)
{
    auto u = Url::parse("HTTPS://Example.COM:8443/a/b?x=1#frag");
    ASSERT_TRUE(u);
    EXPECT_EQ(u->scheme, "https");
    EXPECT_EQ(u->host, "example.com");
    EXPECT_EQ(u->port, 8443);
    EXPECT_EQ(u->path, "/a/b");
    EXPECT_EQ(u->query, "x=1");
    EXPECT_EQ(u->target(), "/a/b?x=1");
    EXPECT_EQ(u->origin(), "https://example.com:8443");

    auto d = Url::parse("http://example.com");
    ASSERT_TRUE(d);
    EXPECT_EQ(d->path, "/");
    EXPECT_EQ(d->effective_port(), 80);
    EXPECT_EQ(d->str(), "http://example.com/");
    EXPECT_EQ(Url::parse("http://example.com:80/")->port, 0);
    EXPECT_EQ(Url::parse("http://example.com:443/")->port, 443);
    EXPECT_FALSE(Url::parse("http://example.com:99999/"));
    EXPECT_FALSE(Url::parse("ftp://example.com/"));
    EXPECT_FALSE(Url::parse("not a url"));
    EXPECT_FALSE(Url::parse("http://:80/"));
}

TEST(Url, ResolveNormalExamples)
{
    auto base = *Url::parse("http://a/b/c/d;p?q");
    const std::pair<const char*, const char*> cases[] = {
        {"g", "http://a/b/c/g"},
        {"./g", "http://a/b/c/g"},
        {"g/", "http://a/b/c/g/"},
        {"/g", "http://a/g"},
        {"//g", "http://g/"},
        {"?y", "http://a/b/c/d;p?y"},
        {"g?y", "http://a/b/c/g?y"},
        {"#s", "http://a/b/c/d;p?q"},
        {"g#s", "http://a/b/c/g"},
        {"g?y#s", "http://a/b/c/g?y"},
        {";x", "http://a/b/c/;x"},
        {"g;x", "http://a/b/c/g;x"},
        {"", "http://a/b/c/d;p?q"},
        {".", "http://a/b/c/"},
        {"./", "http://a/b/c/"},
        {"..", "http://a/b/"},
        {"../", "http://a/b/"},
        {"../g", "http://a/b/g"},
        {"../..", "http://a/"},
        {"../../", "http://a/"},
        {"../../g", "http://a/g"},
    };
    for (const auto& [ref, want] : cases) {
        auto got = resolve(base, ref);
        ASSERT_TRUE(got) << ref;
        EXPECT_EQ(got->str(), want) << ref;
    }
}

TEST(Url, ResolveAbnormalExamples)
{
    auto base = *Url::parse("http://a/b/c/d;p?q");
    const std::pair<const char*, const char*> cases[] = {
        {"../../../g", "http://a/g"},
        {"../../../../g", "http://a/g"},
        {"/./g", "http://a/g"},
        {"/../g", "http://a/g"},
        {"g.", "http://a/b/c/g."},
        {".g", "http://a/b/c/.g"},
        {"g..", "http://a/b/c/g.."},
        {"..g", "http://a/b/c/..g"},
        {"./../g", "http://a/b/g"},
        {"./g/.", "http://a/b/c/g/"},
        {"g/./h", "http://a/b/c/g/h"},
        {"g/../h", "http://a/b/c/h"},
        {"g;x=1/./y", "http://a/b/c/g;x=1/y"},
        {"g;x=1/../y", "http://a/b/c/y"},
    };
    for (const auto& [ref, want] : cases) {
        auto got = resolve(base, ref);
        ASSERT_TRUE(got) << ref;
        EXPECT_EQ(got->str(), want) << ref;
    }
}

TEST(Url, ResolveRejectsOtherSchemes)
{
    auto base = *Url::parse("https://a.example/x/");
    EXPECT_FALSE(resolve(base, "mailto:x@a.example"));
    EXPECT_FALSE(resolve(base, "javascript:void(0)"));
    EXPECT_EQ(resolve(base, "HTTP://b.example/p")->str(), "http://b.example/p");
}

TEST(Url, SameOrigin)
{
    auto a = *Url::parse("https://a.example/x");
    EXPECT_TRUE(same_origin(a, *Url::parse("https://A.example:443/y")));
    EXPECT_FALSE(same_origin(a, *Url::parse("http://a.example/x")));
    EXPECT_FALSE(same_origin(a, *Url::parse("https://b.example/x")));
    EXPECT_FALSE(same_origin(a, *Url::parse("https://a.example:8443/x")));
}

TEST(Url, PercentCoding)
{
    EXPECT_EQ(url_decode("a%20b%2Fc+d"), "a b/c d");
    EXPECT_EQ(url_decode("%zz%4"), "%zz%4");
    EXPECT_EQ(url_encode("https://a.example/x?y=1&z=2"), "https%3A%2F%2Fa.example%2Fx%3Fy%3D1%26z%3D2");
    for (std::string s : {"", "plain", "a b&c=d/é"})
        EXPECT_EQ(url_decode(url_encode(s)), s);
}
