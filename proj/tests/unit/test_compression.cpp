#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "jsrehab/compression.hpp"

using namespace jsrehab;

TEST(Compression, RoundTrips)
{
    std::string html = fx::read("realistic.html");
    for (auto e : {Encoding::Identity, Encoding::Gzip, Encoding::Brotli}) {
        auto packed = compress(html, e);
        EXPECT_EQ(decompress(packed, e), html) << encoding_name(e);
        if (e != Encoding::Identity)
            EXPECT_LT(packed.size(), html.size() / 2);
    }
}

TEST(Compression, Deterministic)
{
    std::string html = fx::read("dropdown.html");
    EXPECT_EQ(compress(html, Encoding::Gzip), compress(html, Encoding::Gzip));
    EXPECT_EQ(compress(html, Encoding::Brotli), compress(html, Encoding::Brotli));
}

TEST(Compression, BrotliDecodeEncodeStable)
{
    std::string html = fx::read("realistic.html");
    auto once = compress(html, Encoding::Brotli);
    EXPECT_EQ(compress(decompress(once, Encoding::Brotli), Encoding::Brotli), once);
}

TEST(Compression, GzipHeaderHasNoTimestamp)
{
    auto g = compress("abc", Encoding::Gzip);
    ASSERT_GE(g.size(), 10u);
    EXPECT_EQ(static_cast<unsigned char>(g[0]), 0x1f);
    EXPECT_EQ(static_cast<unsigned char>(g[1]), 0x8b);
    EXPECT_EQ(g.substr(4, 4), std::string(4, '\0'));
}

TEST(Compression, ConcatenatedGzipMembers)
{
    auto two = compress("hello ", Encoding::Gzip) + compress("world", Encoding::Gzip);
    EXPECT_EQ(decompress(two, Encoding::Gzip), "hello world");
}

TEST(Compression, CorruptInputThrows)
{
    auto g = compress(fx::read("dropdown.html"), Encoding::Gzip);
    EXPECT_THROW(decompress(g.substr(0, g.size() / 2), Encoding::Gzip), DecodeError);
    EXPECT_THROW(decompress("not gzip at all", Encoding::Gzip), DecodeError);
    auto b = compress(fx::read("dropdown.html"), Encoding::Brotli);
    EXPECT_THROW(decompress(b.substr(0, b.size() / 2), Encoding::Brotli), DecodeError);
}

TEST(Compression, SizeLimit)
{
    std::string big(1 << 20, 'a');
    EXPECT_THROW(decompress(compress(big, Encoding::Gzip), Encoding::Gzip, 1000), DecodeError);
    EXPECT_THROW(decompress(compress(big, Encoding::Brotli), Encoding::Brotli, 1000), DecodeError);
}

TEST(Compression, ContentEncodingTokens)
{
    EXPECT_EQ(parse_content_encoding(""), Encoding::Identity);
    EXPECT_EQ(parse_content_encoding(" GZIP "), Encoding::Gzip);
    EXPECT_EQ(parse_content_encoding("x-gzip"), Encoding::Gzip);
    EXPECT_EQ(parse_content_encoding("br"), Encoding::Brotli);
    EXPECT_FALSE(parse_content_encoding("deflate"));
    EXPECT_FALSE(parse_content_encoding("zstd"));
    EXPECT_EQ(content_encoding_token(Encoding::Brotli), "br");
}

TEST(Compression, RandomBinaryRoundTrip)
{
    std::mt19937 rng(3);
    for (int i = 0; i < 20; ++i) {
        std::string s(rng() % 5000, '\0');
        for (auto& c : s)
            c = static_cast<char>(rng() % 7);
        for (auto e : {Encoding::Gzip, Encoding::Brotli})
            EXPECT_EQ(decompress(compress(s, e), e), s);
    }
}
