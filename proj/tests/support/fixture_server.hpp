#pragma once

#include <httplib.h>

#include <chrono>
#include <map>
#include <string>
#include <thread>

namespace fx {

/// httplib server on an ephemeral loopback port, running on its own thread.
class Server {
public:
    Server()
    {
        port_ = srv_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { srv_.listen_after_bind(); });
        srv_.wait_until_ready();
    }
    ~Server()
    {
        srv_.stop();
        if (thread_.joinable())
            thread_.join();
    }
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    httplib::Server& raw() { return srv_; }
    int port() const { return port_; }
    std::string origin() const { return "http://127.0.0.1:" + std::to_string(port_); }
    std::string authority() const { return "127.0.0.1:" + std::to_string(port_); }

    /// Serves a fixed body; `encoding` is sent verbatim as Content-Encoding when non-empty.
    void add(const std::string& path, std::string body, std::string content_type, std::string encoding = {},
             std::map<std::string, std::string> extra = {})
    {
        srv_.Get(path, [=](const httplib::Request&, httplib::Response& res) {
            res.set_content(body, content_type);
            if (!encoding.empty())
                res.set_header("Content-Encoding", encoding);
            for (const auto& [k, v] : extra)
                res.set_header(k, v);
        });
    }

private:
    httplib::Server srv_;
    int port_ = 0;
    std::thread thread_;
};

}  // namespace fx
