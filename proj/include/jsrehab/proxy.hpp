#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jsrehab/config.hpp"
#include "jsrehab/http.hpp"
#include "jsrehab/stats.hpp"

namespace jsrehab {

enum class ProxyMode { Forward, Reverse };

struct ProxyConfig {
    std::string listen_host = "127.0.0.1";
    std::uint16_t listen_port = 8080;  // 0 picks a free port
    ProxyMode mode = ProxyMode::Reverse;
    // Reverse mode: origin requests are mapped onto; unset means /fetch?url=... or the Host header.
    std::optional<Url> upstream;
    std::string user_agent{kFirefoxUserAgent};
    RewriteConfig rewrite;
    std::vector<std::string> block_scripts;
    std::optional<int> inject_refresh_seconds;
    bool disable_caching = false;
    int timeout_s = 30;
    std::size_t max_body = 64u << 20;
    unsigned max_connections = 256;
};

/// Throws std::invalid_argument for inconsistent settings.
void validate(const ProxyConfig& config);

struct TransformOutcome {
    HttpResponse response;
    // Set for every HTML response with a body.
    std::optional<PageStatsRecord> record;
};

bool is_blocked(std::string_view url, const ProxyConfig& config);

/// Rewrites an upstream response for delivery: HTML bodies are decoded,
/// rewritten and re-encoded with the upstream coding; headers are fixed up.
TransformOutcome transform_response(std::string_view url, HttpResponse upstream, const ProxyConfig& config);

class ProxyServer {
public:
    ProxyServer(ProxyConfig config, RecordSink* sink);
    ~ProxyServer();
    ProxyServer(const ProxyServer&) = delete;
    ProxyServer& operator=(const ProxyServer&) = delete;

    /// Binds and starts serving in background threads; returns the bound port.
    std::uint16_t start();
    void stop();
    /// Blocks until stop() is called from another thread or a signal handler.
    void wait();

private:
    class Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace jsrehab
