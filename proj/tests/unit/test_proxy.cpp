#include <gtest/gtest.h>

#include <boost/asio.hpp>
#include <random>

#include "fixture_server.hpp"
#include "fixtures.hpp"
#include "jsrehab/compression.hpp"
#include "jsrehab/proxy.hpp"
#include "jsrehab/statesim.hpp"

using namespace jsrehab;

namespace {

HttpResponse upstream_html(const std::string& body, Encoding enc, std::string ctype = "text/html; charset=utf-8")
{
    HttpResponse r;
    r.headers.set("Content-Type", ctype);
    if (enc != Encoding::Identity)
        r.headers.set("Content-Encoding", std::string(content_encoding_token(enc)));
    r.headers.set("ETag", "\"abc\"");
    r.headers.set("Last-Modified", "Tue, 01 Oct 2026 10:00:00 GMT");
    r.body = compress(body, enc);
    return r;
}

ProxyConfig test_config()
{
    ProxyConfig c;
    c.listen_port = 0;
    c.timeout_s = 5;
    return c;
}

std::string binary_blob(std::size_t n)
{
    std::mt19937 rng(99);
    std::string s(n, '\0');
    for (auto& c : s)
        c = static_cast<char>(rng());
    return s;
}

httplib::Client client_for(std::uint16_t port)
{
    httplib::Client c("127.0.0.1", port);
    c.set_decompress(false);
    c.set_read_timeout(10);
    return c;
}

}  // namespace

TEST(Transform, EncodingsArePreserved)
{
    auto page = fx::read("dropdown.html");
    for (auto enc : {Encoding::Identity, Encoding::Gzip, Encoding::Brotli}) {
        auto up = upstream_html(page, enc);
        auto wire = up.body.size();
        auto out = transform_response("https://a.example/", up, test_config());
        EXPECT_EQ(out.response.headers.get("content-encoding").value_or(""), content_encoding_token(enc));
        auto body = decompress(out.response.body, enc);
        EXPECT_NE(body.find("jsrehab-0"), std::string::npos);
        EXPECT_EQ(out.response.headers.get("content-length"), std::to_string(out.response.body.size()));
        EXPECT_FALSE(out.response.headers.has("etag"));
        EXPECT_FALSE(out.response.headers.has("last-modified"));
        EXPECT_EQ(out.response.headers.get("via"), "1.1 jsrehab");
        ASSERT_TRUE(out.record);
        EXPECT_EQ(out.record->compression, encoding_name(enc));
        EXPECT_TRUE(out.record->bs_detected);
        EXPECT_EQ(out.record->kinds.at("dropdown"), 1u);
        if (enc == Encoding::Identity) {
            EXPECT_EQ(out.record->orig_c, compress(page, Encoding::Gzip).size());
            EXPECT_EQ(out.record->xform_c, compress(body, Encoding::Gzip).size());
        } else {
            EXPECT_EQ(out.record->orig_c, wire);
            EXPECT_EQ(out.record->xform_c, out.response.body.size());
        }
    }
}

TEST(Transform, UnchangedPagePassesThrough)
{
    auto page = fx::read("corpus/site3/index.html");
    auto up = upstream_html(page, Encoding::Gzip);
    auto wire = up.body;
    auto out = transform_response("https://a.example/", up, test_config());
    EXPECT_EQ(out.response.body, wire);
    EXPECT_TRUE(out.response.headers.has("etag"));
    ASSERT_TRUE(out.record);
    EXPECT_FALSE(out.record->bs_detected);
    EXPECT_EQ(out.record->orig_c, out.record->xform_c);
}

TEST(Transform, NonHtmlUntouched)
{
    HttpResponse up;
    up.headers.set("Content-Type", "image/png");
    up.body = binary_blob(4096);
    auto out = transform_response("https://a.example/x.png", up, test_config());
    EXPECT_EQ(out.response.body, up.body);
    EXPECT_FALSE(out.record);
}

TEST(Transform, UnsupportedCodingIsRecorded)
{
    HttpResponse up;
    up.headers.set("Content-Type", "text/html");
    up.headers.set("Content-Encoding", "zstd");
    up.body = "\x28\xb5\x2f\xfd";
    auto out = transform_response("https://a.example/", up, test_config());
    EXPECT_EQ(out.response.body, up.body);
    ASSERT_TRUE(out.record);
    EXPECT_FALSE(out.record->error.empty());
}

TEST(Transform, CorruptGzipIsRecorded)
{
    auto up = upstream_html(fx::read("dropdown.html"), Encoding::Gzip);
    up.body.resize(up.body.size() / 2);
    auto body = up.body;
    auto out = transform_response("https://a.example/", up, test_config());
    EXPECT_EQ(out.response.body, body);
    ASSERT_TRUE(out.record);
    EXPECT_NE(out.record->error.find("decode"), std::string::npos);
}

TEST(Transform, LegacyCharsetHeaderBecomesUtf8)
{
    std::string page = fx::read("dropdown.html");
    page.replace(page.find("Action"), 6, "Caf\xE9");
    auto out = transform_response("https://a.example/", upstream_html(page, Encoding::Identity, "text/html; charset=ISO-8859-1"),
                                  test_config());
    EXPECT_EQ(out.response.headers.get("content-type"), "text/html; charset=utf-8");
    EXPECT_NE(out.response.body.find("Caf\xC3\xA9"), std::string::npos);
}

TEST(Transform, RefreshAndNoStore)
{
    auto c = test_config();
    c.inject_refresh_seconds = 30;
    c.disable_caching = true;
    auto up = upstream_html(fx::read("corpus/site3/index.html"), Encoding::Identity);
    up.headers.set("Expires", "Thu, 01 Jan 2030 00:00:00 GMT");
    up.headers.set("Via", "1.0 edge");
    auto out = transform_response("https://a.example/", up, c);
    EXPECT_EQ(out.response.headers.get("refresh"), "30");
    EXPECT_EQ(out.response.headers.get("cache-control"), "no-store");
    EXPECT_FALSE(out.response.headers.has("etag"));
    EXPECT_FALSE(out.response.headers.has("expires"));
    EXPECT_EQ(out.response.headers.get("via"), "1.0 edge, 1.1 jsrehab");
}

TEST(ProxyConfig, Validation)
{
    auto c = test_config();
    EXPECT_NO_THROW(validate(c));
    c.inject_refresh_seconds = 10;
    EXPECT_THROW(validate(c), std::invalid_argument);
    c.disable_caching = true;
    EXPECT_NO_THROW(validate(c));
    c.inject_refresh_seconds = 0;
    EXPECT_THROW(validate(c), std::invalid_argument);
    auto f = test_config();
    f.mode = ProxyMode::Forward;
    f.upstream = Url::parse("http://a.example/");
    EXPECT_THROW(validate(f), std::invalid_argument);
}

TEST(ProxyConfig, BlockList)
{
    auto c = test_config();
    c.block_scripts = {"bootstrap.bundle.min.js", "cdn.example/jquery"};
    EXPECT_TRUE(is_blocked("https://cdn.jsdelivr.net/npm/bootstrap@5.3.3/dist/js/bootstrap.bundle.min.js", c));
    EXPECT_TRUE(is_blocked("https://cdn.example/jquery-3.7.1.min.js", c));
    EXPECT_FALSE(is_blocked("https://cdn.example/app.js", c));
}

class ProxyEndToEnd : public ::testing::Test {
protected:
    void SetUp() override
    {
        page_ = fx::read("realistic.html");
        blob_ = binary_blob(200000);
        up_.add("/", page_, "text/html; charset=utf-8");
        up_.add("/gz", compress(page_, Encoding::Gzip), "text/html; charset=utf-8", "gzip");
        up_.add("/br", compress(page_, Encoding::Brotli), "text/html; charset=utf-8", "br");
        up_.add("/img.bin", blob_, "application/octet-stream");
        up_.add("/app.js", "console.log(1)", "text/javascript");
        up_.raw().Get("/ua", [](const httplib::Request& req, httplib::Response& res) {
            res.set_content(req.get_header_value("User-Agent") + "|" + req.get_header_value("Accept-Encoding"), "text/plain");
        });
    }

    fx::Server up_;
    std::string page_;
    std::string blob_;
};

TEST_F(ProxyEndToEnd, ReverseMode)
{
    auto c = test_config();
    c.upstream = Url::parse(up_.origin() + "/");
    c.block_scripts = {"app.js"};
    MemorySink sink;
    ProxyServer proxy(c, &sink);
    auto port = proxy.start();
    auto cli = client_for(port);

    for (const char* path : {"/", "/gz", "/br"}) {
        auto res = cli.Get(path, {{"Accept-Encoding", "gzip, br"}});
        ASSERT_TRUE(res) << path;
        EXPECT_EQ(res->status, 200);
        EXPECT_EQ(res->get_header_value("Content-Length"), std::to_string(res->body.size())) << path;
        auto enc = parse_content_encoding(res->get_header_value("Content-Encoding"));
        ASSERT_TRUE(enc);
        auto html = decompress(res->body, *enc);
        EXPECT_NE(html.find("data-jsrehab=\"styles\""), std::string::npos) << path;
        EXPECT_TRUE(check(parse_html(html)).ok()) << path;
    }

    auto bin = cli.Get("/img.bin");
    ASSERT_TRUE(bin);
    EXPECT_EQ(std::hash<std::string>{}(bin->body), std::hash<std::string>{}(blob_));
    EXPECT_EQ(bin->body, blob_);
    EXPECT_EQ(bin->get_header_value("Content-Length"), std::to_string(blob_.size()));

    auto js = cli.Get("/app.js");
    ASSERT_TRUE(js);
    EXPECT_EQ(js->status, 200);
    EXPECT_TRUE(js->body.empty());

    auto ua = cli.Get("/ua", {{"Accept-Encoding", "zstd, deflate"}});
    ASSERT_TRUE(ua);
    EXPECT_EQ(ua->body, std::string(kFirefoxUserAgent) + "|identity");

    proxy.stop();
    auto recs = sink.records();
    ASSERT_EQ(recs.size(), 3u);
    for (const auto& r : recs) {
        EXPECT_TRUE(r.error.empty());
        EXPECT_GT(r.xform_c, r.orig_c);
    }
}

TEST_F(ProxyEndToEnd, FetchEndpointAndUpstreamFailure)
{
    auto c = test_config();
    MemorySink sink;
    ProxyServer proxy(c, &sink);
    auto port = proxy.start();
    auto cli = client_for(port);
    auto res = cli.Get("/fetch?url=" + url_encode(up_.origin() + "/"));
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_NE(res->body.find("jsrehab-visually-hidden"), std::string::npos);

    int dead_port;
    {
        fx::Server gone;
        dead_port = gone.port();
    }
    auto bad = cli.Get("/fetch?url=" + url_encode("http://127.0.0.1:" + std::to_string(dead_port) + "/"));
    ASSERT_TRUE(bad);
    EXPECT_EQ(bad->status, 502);
    proxy.stop();
    EXPECT_EQ(sink.records().size(), 1u);
}

TEST_F(ProxyEndToEnd, ForwardMode)
{
    auto c = test_config();
    c.mode = ProxyMode::Forward;
    MemorySink sink;
    ProxyServer proxy(c, &sink);
    auto port = proxy.start();

    httplib::Client cli("127.0.0.1", up_.port());
    cli.set_proxy("127.0.0.1", port);
    cli.set_decompress(false);
    auto res = cli.Get("/");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_NE(res->get_header_value("Via").find("jsrehab"), std::string::npos);
    EXPECT_NE(res->body.find("jsrehab-visually-hidden"), std::string::npos);
    auto bin = cli.Get("/img.bin");
    ASSERT_TRUE(bin);
    EXPECT_EQ(bin->body, blob_);
    proxy.stop();
    EXPECT_EQ(sink.records().size(), 1u);
}

TEST_F(ProxyEndToEnd, ConnectTunnelPassesBytesThrough)
{
    auto c = test_config();
    c.mode = ProxyMode::Forward;
    MemorySink sink;
    ProxyServer proxy(c, &sink);
    auto port = proxy.start();

    namespace asio = boost::asio;
    asio::io_context io;
    asio::ip::tcp::socket sock(io);
    sock.connect({asio::ip::make_address("127.0.0.1"), port});
    std::string connect = "CONNECT " + up_.authority() + " HTTP/1.1\r\nHost: " + up_.authority() + "\r\n\r\n";
    asio::write(sock, asio::buffer(connect));
    asio::streambuf buf;
    asio::read_until(sock, buf, "\r\n\r\n");
    std::string head{asio::buffers_begin(buf.data()), asio::buffers_end(buf.data())};
    buf.consume(buf.size());
    ASSERT_EQ(head.rfind("HTTP/1.1 200", 0), 0u) << head;

    std::string get = "GET / HTTP/1.1\r\nHost: " + up_.authority() + "\r\nConnection: close\r\n\r\n";
    asio::write(sock, asio::buffer(get));
    boost::system::error_code ec;
    asio::read(sock, buf, ec);
    std::string reply{asio::buffers_begin(buf.data()), asio::buffers_end(buf.data())};
    auto body_at = reply.find("\r\n\r\n");
    ASSERT_NE(body_at, std::string::npos);
    EXPECT_EQ(reply.substr(body_at + 4), page_);
    proxy.stop();
    EXPECT_TRUE(sink.records().empty());
}

TEST_F(ProxyEndToEnd, StopIsIdempotent)
{
    ProxyServer proxy(test_config(), nullptr);
    proxy.start();
    proxy.stop();
    proxy.stop();
}
