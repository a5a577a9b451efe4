#include "jsrehab/proxy.hpp"

#include <atomic>
#include <condition_variable>
#include <iostream>
#include <list>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>

#include "jsrehab/compression.hpp"
#include "jsrehab/rewrite.hpp"
#include "strings.hpp"

namespace jsrehab {

namespace beast = boost::beast;
namespace http = beast::http;
namespace asio = boost::asio;
using tcp = asio::ip::tcp;

namespace {

std::string_view sv(beast::string_view s) { return {s.data(), s.size()}; }

}  // namespace

void validate(const ProxyConfig& config)
{
    if (config.inject_refresh_seconds && !config.disable_caching)
        throw std::invalid_argument("--refresh requires --no-cache");
    if (config.inject_refresh_seconds && *config.inject_refresh_seconds <= 0)
        throw std::invalid_argument("refresh interval must be positive");
    if (config.mode == ProxyMode::Forward && config.upstream)
        throw std::invalid_argument("an upstream origin only applies to reverse mode");
}

bool is_blocked(std::string_view url, const ProxyConfig& config)
{
    for (const auto& pat : config.block_scripts) {
        if (!pat.empty() && url.find(pat) != std::string_view::npos)
            return true;
    }
    return false;
}

TransformOutcome transform_response(std::string_view url, HttpResponse upstream, const ProxyConfig& config)
{
    TransformOutcome out;
    out.response = std::move(upstream);
    auto& res = out.response;
    auto& h = res.headers;
    h.remove_hop_by_hop();

    std::string ctype = h.get("content-type").value_or("");
    bool html = is_html(ctype) && !res.body.empty() && res.status >= 200 && res.status != 204 && res.status != 304;
    if (html) {
        PageStatsRecord rec;
        rec.url = std::string(url);
        rec.ts = utc_timestamp();
        rec.status = res.status;
        rec.content_type = ctype;
        std::string coding = h.get("content-encoding").value_or("");
        auto enc = parse_content_encoding(coding);
        if (!enc) {
            rec.compression = detail::to_lower(detail::trim(coding));
            rec.error = "unsupported content-encoding: " + coding;
        } else {
            rec.compression = std::string(encoding_name(*enc));
            std::optional<std::string> decoded;
            try {
                decoded = decompress(res.body, *enc, config.max_body * 4);
            } catch (const DecodeError& e) {
                rec.error = std::string("cannot decode body: ") + e.what();
            }
            if (decoded) {
                RewriteOptions opts;
                opts.charset = charset_param(ctype);
                opts.delivered = *enc;
                opts.measure_compressed = *enc == Encoding::Identity;
                RewriteResult rw = rewrite_document(*decoded, config.rewrite, opts);
                rec = make_record(std::string(url), res.status, ctype, rw);
                std::size_t wire_before = res.body.size();
                if (rw.mutations > 0) {
                    res.body = compress(rw.html, *enc);
                    if (auto cs = charset_param(ctype); cs && !detail::iequals(*cs, "utf-8")) {
                        ctype = media_type(ctype) + "; charset=utf-8";
                        h.set("Content-Type", ctype);
                        rec.content_type = ctype;
                    }
                    h.remove("etag");
                    h.remove("last-modified");
                }
                if (*enc != Encoding::Identity) {
                    rec.orig_c = wire_before;
                    rec.xform_c = res.body.size();
                } else if (rw.mutations == 0) {
                    rec.xform_c = rec.orig_c;
                }
            }
        }
        if (config.inject_refresh_seconds)
            h.set("Refresh", std::to_string(*config.inject_refresh_seconds));
        out.record = std::move(rec);
    }
    if (config.disable_caching) {
        h.set("Cache-Control", "no-store");
        h.remove("etag");
        h.remove("last-modified");
        h.remove("expires");
    }
    auto via = h.get("via");
    h.set("Via", via ? *via + ", 1.1 jsrehab" : "1.1 jsrehab");
    h.set("Content-Length", std::to_string(res.body.size()));
    return out;
}

class ProxyServer::Impl {
public:
    Impl(ProxyConfig config, RecordSink* sink) : config_(std::move(config)), sink_(sink), acceptor_(ioc_) { validate(config_); }

    ~Impl() { stop(); }

    std::uint16_t start()
    {
        tcp::endpoint ep(asio::ip::make_address(config_.listen_host), config_.listen_port);
        acceptor_.open(ep.protocol());
        acceptor_.set_option(asio::socket_base::reuse_address(true));
        acceptor_.bind(ep);
        acceptor_.listen();
        port_ = acceptor_.local_endpoint().port();
        accept_next();
        io_thread_ = std::thread([this] { ioc_.run(); });
        return port_;
    }

    void stop()
    {
        {
            std::lock_guard lock(mu_);
            if (stopped_)
                return;
            stopped_ = true;
        }
        asio::post(ioc_, [this] {
            boost::system::error_code ec;
            acceptor_.close(ec);
        });
        ioc_.stop();
        if (io_thread_.joinable())
            io_thread_.join();
        std::list<std::thread> threads;
        {
            std::lock_guard lock(mu_);
            for (auto* s : sockets_) {
                boost::system::error_code ec;
                s->shutdown(tcp::socket::shutdown_both, ec);
            }
            threads.swap(threads_);
        }
        for (auto& t : threads)
            t.join();
        {
            std::lock_guard lock(mu_);
            finished_.clear();
        }
        cv_.notify_all();
    }

    void wait()
    {
        std::unique_lock lock(mu_);
        cv_.wait(lock, [this] { return stopped_; });
    }

private:
    void accept_next()
    {
        acceptor_.async_accept([this](boost::system::error_code ec, tcp::socket sock) {
            if (ec == asio::error::operation_aborted || !acceptor_.is_open())
                return;
            if (!ec)
                spawn(std::move(sock));
            accept_next();
        });
    }

    void spawn(tcp::socket sock)
    {
        std::lock_guard lock(mu_);
        if (!stopped_)
            reap();
        if (stopped_ || active_ >= config_.max_connections) {
            boost::system::error_code ec;
            sock.close(ec);
            return;
        }
        ++active_;
        auto it = threads_.emplace(threads_.end());
        *it = std::thread([this, s = std::move(sock), it]() mutable {
            serve_connection(s);
            std::lock_guard lock(mu_);
            --active_;
            finished_.push_back(it);
        });
    }

    // Joins threads that have finished; caller holds mu_.
    void reap()
    {
        for (auto it : finished_) {
            it->join();
            threads_.erase(it);
        }
        finished_.clear();
    }

    void track(tcp::socket* s, bool add)
    {
        std::lock_guard lock(mu_);
        if (add) {
            sockets_.insert(s);
            if (stopped_) {
                boost::system::error_code ec;
                s->shutdown(tcp::socket::shutdown_both, ec);
            }
        } else {
            sockets_.erase(s);
        }
    }

    void serve_connection(tcp::socket& sock)
    {
        track(&sock, true);
        beast::flat_buffer buf;
        boost::system::error_code ec;
        while (true) {
            http::request_parser<http::string_body> parser;
            parser.body_limit(config_.max_body);
            http::read(sock, buf, parser, ec);
            if (ec)
                break;
            auto req = parser.release();
            if (req.method() == http::verb::connect) {
                if (config_.mode == ProxyMode::Forward)
                    tunnel(sock, buf, std::string(req.target()));
                else
                    write_plain(sock, 405, "CONNECT is only available in forward mode\n", false);
                break;
            }
            bool keep = req.keep_alive();
            HttpResponse res = handle(req);
            http::response<http::string_body> out;
            out.version(11);
            out.result(static_cast<unsigned>(res.status));
            for (const auto& [k, v] : res.headers) {
                if (!detail::iequals(k, "content-length"))
                    out.insert(k, v);
            }
            out.body() = std::move(res.body);
            out.keep_alive(keep);
            out.prepare_payload();
            if (req.method() == http::verb::head) {
                if (auto cl = res.headers.get("content-length"))
                    out.set(http::field::content_length, *cl);
                http::response_serializer<http::string_body> sr(out);
                http::write_header(sock, sr, ec);
            } else {
                http::write(sock, out, ec);
            }
            if (ec || !keep)
                break;
        }
        sock.shutdown(tcp::socket::shutdown_both, ec);
        track(&sock, false);
    }

    void write_plain(tcp::socket& sock, int status, std::string body, bool keep)
    {
        http::response<http::string_body> out;
        out.version(11);
        out.result(static_cast<unsigned>(status));
        out.set(http::field::content_type, "text/plain; charset=utf-8");
        out.set(http::field::via, "1.1 jsrehab");
        out.body() = std::move(body);
        out.keep_alive(keep);
        out.prepare_payload();
        boost::system::error_code ec;
        http::write(sock, out, ec);
    }

    std::optional<Url> upstream_url(const http::request<http::string_body>& req, std::string& why) const
    {
        std::string_view target = sv(req.target());
        if (config_.mode == ProxyMode::Forward) {
            auto u = Url::parse(target);
            if (!u)
                why = "forward mode expects an absolute http(s) request target";
            return u;
        }
        if (target.starts_with("/fetch?")) {
            std::string_view q = target.substr(7);
            while (!q.empty()) {
                auto amp = q.find('&');
                auto kv = q.substr(0, amp);
                if (kv.starts_with("url=")) {
                    auto u = Url::parse(url_decode(kv.substr(4)));
                    if (!u)
                        why = "url parameter is not an absolute http(s) URL";
                    return u;
                }
                q = amp == std::string_view::npos ? std::string_view() : q.substr(amp + 1);
            }
            why = "missing url parameter";
            return std::nullopt;
        }
        if (config_.upstream) {
            auto u = Url::parse(config_.upstream->origin() + std::string(target));
            if (!u)
                why = "cannot map request target onto upstream";
            return u;
        }
        auto host = req[http::field::host];
        if (host.empty()) {
            why = "no upstream configured and no Host header";
            return std::nullopt;
        }
        auto u = Url::parse("http://" + std::string(host) + std::string(target));
        if (!u)
            why = "cannot build upstream URL from Host header";
        return u;
    }

    HttpResponse handle(const http::request<http::string_body>& req)
    {
        std::string why;
        auto url = upstream_url(req, why);
        if (!url)
            return error_response(400, why);
        std::string full = url->str();
        if (is_blocked(full, config_)) {
            HttpResponse blocked;
            blocked.status = 200;
            blocked.headers.add("Content-Type", "text/javascript");
            blocked.headers.add("Via", "1.1 jsrehab");
            if (config_.disable_caching)
                blocked.headers.add("Cache-Control", "no-store");
            blocked.headers.add("Content-Length", "0");
            return blocked;
        }

        FetchRequest fr;
        fr.method = std::string(req.method_string());
        fr.url = *url;
        fr.body = req.body();
        for (const auto& f : req) {
            std::string name(f.name_string());
            if (detail::iequals(name, "accept-encoding")) {
                std::string kept;
                std::string_view rest = sv(f.value());
                while (!rest.empty()) {
                    auto c = rest.find(',');
                    auto tok = detail::trim(rest.substr(0, c));
                    auto coding = detail::to_lower(detail::trim(tok.substr(0, tok.find(';'))));
                    if (coding == "gzip" || coding == "x-gzip" || coding == "br" || coding == "identity")
                        kept += (kept.empty() ? "" : ", ") + std::string(tok);
                    rest = c == std::string_view::npos ? std::string_view() : rest.substr(c + 1);
                }
                if (!kept.empty())
                    fr.headers.add("Accept-Encoding", kept);
                continue;
            }
            fr.headers.add(name, std::string(f.value()));
        }
        fr.headers.remove_hop_by_hop();
        fr.headers.remove("host");
        fr.headers.remove("user-agent");
        if (!fr.headers.has("accept-encoding"))
            fr.headers.add("Accept-Encoding", "identity");
        FetchSettings fs;
        fs.user_agent = config_.user_agent;
        fs.timeout_s = config_.timeout_s;
        fs.max_body = config_.max_body;
        FetchResult got = fetch(fr, fs);
        if (!got.ok())
            return error_response(502, "upstream error for " + full + ": " + got.error);

        TransformOutcome t = transform_response(full, std::move(got.response), config_);
        if (t.record && sink_)
            sink_->append(*t.record);
        return std::move(t.response);
    }

    static HttpResponse error_response(int status, const std::string& msg)
    {
        HttpResponse r;
        r.status = status;
        r.headers.add("Content-Type", "text/plain; charset=utf-8");
        r.headers.add("Via", "1.1 jsrehab");
        r.body = msg + "\n";
        return r;
    }

    void tunnel(tcp::socket& client, beast::flat_buffer& pending, const std::string& authority)
    {
        auto colon = authority.rfind(':');
        if (colon == std::string::npos) {
            write_plain(client, 400, "CONNECT target must be host:port\n", false);
            return;
        }
        std::string host = authority.substr(0, colon), port = authority.substr(colon + 1);
        if (host.size() > 2 && host.front() == '[' && host.back() == ']')
            host = host.substr(1, host.size() - 2);
        asio::io_context local;
        tcp::socket remote(local);
        boost::system::error_code ec;
        tcp::resolver resolver(local);
        auto results = resolver.resolve(host, port, ec);
        if (!ec)
            asio::connect(remote, results, ec);
        if (ec) {
            write_plain(client, 502, "cannot reach " + authority + ": " + ec.message() + "\n", false);
            return;
        }
        track(&remote, true);
        asio::write(client, asio::buffer(std::string_view("HTTP/1.1 200 Connection Established\r\nVia: 1.1 jsrehab\r\n\r\n")), ec);
        if (!ec && pending.size() > 0)
            asio::write(remote, pending.data(), ec);
        if (!ec) {
            auto pump = [](tcp::socket& from, tcp::socket& to) {
                char data[16 * 1024];
                boost::system::error_code e;
                while (true) {
                    std::size_t n = from.read_some(asio::buffer(data), e);
                    if (e)
                        break;
                    asio::write(to, asio::buffer(data, n), e);
                    if (e)
                        break;
                }
                to.shutdown(tcp::socket::shutdown_send, e);
            };
            std::thread up([&] { pump(client, remote); });
            pump(remote, client);
            up.join();
        }
        remote.close(ec);
        track(&remote, false);
    }

    ProxyConfig config_;
    RecordSink* sink_;
    asio::io_context ioc_;
    tcp::acceptor acceptor_;
    std::thread io_thread_;
    std::uint16_t port_ = 0;

    std::mutex mu_;
    std::condition_variable cv_;
    bool stopped_ = false;
    unsigned active_ = 0;
    std::list<std::thread> threads_;
    std::vector<std::list<std::thread>::iterator> finished_;
    std::set<tcp::socket*> sockets_;
};

ProxyServer::ProxyServer(ProxyConfig config, RecordSink* sink) : impl_(std::make_unique<Impl>(std::move(config), sink)) {}

ProxyServer::~ProxyServer() = default;

std::uint16_t ProxyServer::start() { return impl_->start(); }

void ProxyServer::stop() { impl_->stop(); }

void ProxyServer::wait() { impl_->wait(); }

}  // namespace jsrehab
