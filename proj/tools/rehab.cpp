#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "jsrehab/corpus.hpp"
#include "jsrehab/proxy.hpp"
#include "jsrehab/rewrite.hpp"
#include "jsrehab/statesim.hpp"
#include "jsrehab/stats.hpp"
#include "jsrehab/version.hpp"

using namespace jsrehab;

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path)
{
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), {}};
}

void write_file(const std::string& path, const std::string& data)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << data))
        throw IoError("cannot write " + path);
}

nlohmann::json stats_json(const RewriteResult& r)
{
    nlohmann::json warnings = nlohmann::json::array();
    for (const auto& w : r.warnings)
        warnings.push_back({{"kind", w.kind}, {"reason", w.reason}, {"path", w.path}});
    return {
        {"duration_ms", r.stats.duration_ms},
        {"node_count", r.stats.node_count},
        {"instances_by_kind", r.stats.instances_by_kind},
        {"original_size", r.stats.original_size},
        {"transformed_size", r.stats.transformed_size},
        {"compression", encoding_name(r.stats.size_algorithm)},
        {"orig_c", r.stats.original_compressed},
        {"xform_c", r.stats.transformed_compressed},
        {"overhead", overhead(r.stats)},
        {"mutations", r.mutations},
        {"bs_detected", r.profile.detected},
        {"bs_major", r.profile.major ? nlohmann::json(*r.profile.major) : nlohmann::json(nullptr)},
        {"warnings", warnings},
    };
}

std::pair<std::string, std::uint16_t> split_listen(const std::string& hp)
{
    auto c = hp.rfind(':');
    if (c == std::string::npos)
        throw CLI::ValidationError("--listen", "expected HOST:PORT");
    int port = std::stoi(hp.substr(c + 1));
    if (port < 0 || port > 65535)
        throw CLI::ValidationError("--listen", "port out of range");
    std::string host = hp.substr(0, c);
    if (host.size() > 2 && host.front() == '[')
        host = host.substr(1, host.size() - 2);
    return {host.empty() ? "0.0.0.0" : host, static_cast<std::uint16_t>(port)};
}

const std::map<std::string, TabsMechanism> kTabs{{"radio", TabsMechanism::Radio}, {"target", TabsMechanism::Target}};
const std::map<std::string, StatsCompression> kStatsAlgo{
    {"gzip", StatsCompression::Gzip}, {"brotli", StatsCompression::Brotli}, {"auto", StatsCompression::Auto}};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Replace Bootstrap component JavaScript with CSS-only equivalents"};
    app.require_subcommand(0, 1);
    bool show_version = false;
    app.add_flag("--version", show_version, "Print version and supported Bootstrap majors");

    RewriteConfig rcfg;
    auto add_rewrite_opts = [&](CLI::App* sub) {
        sub->add_flag("--highlight", rcfg.highlight, "Outline rewritten components");
        sub->add_option("--tabs", rcfg.tabs_mechanism, "Tabs mechanism")->transform(CLI::CheckedTransformer(kTabs));
    };

    // rewrite
    auto* rw = app.add_subcommand("rewrite", "Rewrite an HTML file to stdout");
    std::string rw_in, rw_out, rw_stats_file, rw_charset;
    bool rw_stats = false;
    rw->add_option("file", rw_in, "Input file or - for stdin")->required();
    add_rewrite_opts(rw);
    rw->add_flag("--stats", rw_stats, "Print stats JSON to stderr");
    rw->add_option("--stats-file", rw_stats_file, "Write stats JSON to a file");
    rw->add_option("-o,--output", rw_out, "Write HTML to a file instead of stdout");
    rw->add_option("--charset", rw_charset, "Input charset when not declared");
    rw->add_option("--size-algorithm", rcfg.compression_for_stats, "Compression for size stats")
        ->transform(CLI::CheckedTransformer(kStatsAlgo));

    // check
    auto* ck = app.add_subcommand("check", "Rewrite a file and run the interactivity assertions");
    std::string ck_in;
    bool ck_quiet = false;
    ck->add_option("file", ck_in, "Input file or - for stdin")->required();
    add_rewrite_opts(ck);
    ck->add_flag("-q,--quiet", ck_quiet, "Only report failures");

    // proxy
    auto* px = app.add_subcommand("proxy", "Run the rewriting HTTP proxy");
    ProxyConfig pcfg;
    std::string px_listen = "127.0.0.1:8080", px_mode = "reverse", px_stats, px_upstream;
    int px_refresh = 0;
    px->add_option("--listen", px_listen, "HOST:PORT to listen on")->capture_default_str();
    px->add_option("--mode", px_mode, "reverse or forward")->check(CLI::IsMember({"reverse", "forward"}))->capture_default_str();
    px->add_option("--upstream", px_upstream, "Origin for reverse mode (default: /fetch?url= or Host)");
    px->add_option("--block", pcfg.block_scripts, "URL substring answered with an empty 200 body");
    px->add_option("--refresh", px_refresh, "Add a Refresh header to HTML responses (needs --no-cache)")->check(CLI::PositiveNumber);
    px->add_flag("--no-cache", pcfg.disable_caching, "Send Cache-Control: no-store and drop validators");
    px->add_option("--user-agent", pcfg.user_agent, "User-Agent sent upstream");
    px->add_option("--timeout", pcfg.timeout_s, "Upstream timeout in seconds")->check(CLI::PositiveNumber);
    px->add_option("--stats", px_stats, "JSONL stats file")->required();
    add_rewrite_opts(px);

    // corpus
    auto* cp = app.add_subcommand("corpus", "Crawl a ranked domain list and record stats");
    CorpusSettings cset;
    std::string cp_list, cp_out;
    std::size_t cp_top = 0;
    bool cp_http_only = false;
    cp->add_option("--list", cp_list, "rank,domain CSV")->required();
    cp->add_option("--top", cp_top, "Only the first N domains (0 = all)");
    cp->add_option("--seed", cset.seed, "Seed for internal URL sampling");
    cp->add_option("--out", cp_out, "JSONL output file")->required();
    cp->add_option("--parallel", cset.parallelism, "Concurrent domains")->check(CLI::Range(1u, 256u));
    cp->add_option("--internal", cset.internal_pages, "Internal pages per domain");
    cp->add_option("--timeout", cset.fetch.timeout_s, "Per-request timeout in seconds")->check(CLI::PositiveNumber);
    cp->add_option("--max-body", cset.fetch.max_body, "Maximum body size in bytes");
    cp->add_flag("--http-only", cp_http_only, "Skip the https attempt");
    cp->add_option("--size-algorithm", rcfg.compression_for_stats, "Compression for identity bodies")
        ->transform(CLI::CheckedTransformer(kStatsAlgo));
    add_rewrite_opts(cp);

    // report
    auto* rp = app.add_subcommand("report", "Summarize a JSONL stats file");
    std::string rp_in, rp_csv;
    rp->add_option("records", rp_in, "JSONL records")->required();
    rp->add_option("--csv", rp_csv, "Write metric quantiles as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (show_version) {
        std::cout << "rehab " << kVersion << "\nBootstrap majors:";
        for (int m : kSupportedBootstrapMajors)
            std::cout << ' ' << m;
        std::cout << '\n';
        return 0;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return 2;
    }

    try {
        if (*rw) {
            RewriteOptions opts;
            if (!rw_charset.empty())
                opts.charset = rw_charset;
            auto res = rewrite_document(read_input(rw_in), rcfg, opts);
            if (rw_out.empty()) {
                std::cout << res.html;
                std::cout.flush();
            } else {
                write_file(rw_out, res.html);
            }
            auto js = stats_json(res).dump(2) + "\n";
            if (!rw_stats_file.empty())
                write_file(rw_stats_file, js);
            else if (rw_stats)
                std::cerr << js;
            for (const auto& w : res.warnings)
                std::cerr << "warning: " << w.kind << ": " << w.reason << (w.path.empty() ? "" : " at " + w.path) << '\n';
            return 0;
        }
        if (*ck) {
            RewriteOptions opts;
            opts.measure_compressed = false;
            auto res = rewrite_document(read_input(ck_in), rcfg, opts);
            DomTree doc = parse_html(res.html);
            auto rep = check(doc);
            for (const auto& f : rep.failures)
                std::cerr << "FAIL " << f.assertion << ": " << f.detail << (f.path.empty() ? "" : " at " + f.path) << '\n';
            if (!ck_quiet) {
                std::cout << "instances " << res.instances.size() << ", checkboxes " << rep.checkboxes << ", radio groups "
                          << rep.radio_groups << ", fragment groups " << rep.fragment_groups << ", tooltips " << rep.tooltips
                          << ", states " << rep.states_evaluated << ", failures " << rep.failures.size() << '\n';
            }
            return rep.ok() ? 0 : 1;
        }
        if (*px) {
            auto [host, port] = split_listen(px_listen);
            pcfg.listen_host = host;
            pcfg.listen_port = port;
            pcfg.mode = px_mode == "forward" ? ProxyMode::Forward : ProxyMode::Reverse;
            if (!px_upstream.empty()) {
                pcfg.upstream = Url::parse(px_upstream);
                if (!pcfg.upstream) {
                    std::cerr << "error: --upstream must be an absolute http(s) URL\n";
                    return 2;
                }
            }
            if (px_refresh > 0)
                pcfg.inject_refresh_seconds = px_refresh;
            pcfg.rewrite = rcfg;
            try {
                validate(pcfg);
            } catch (const std::invalid_argument& e) {
                std::cerr << "error: " << e.what() << '\n';
                return 2;
            }
            JsonlSink sink(px_stats);
            sigset_t set;
            sigemptyset(&set);
            sigaddset(&set, SIGINT);
            sigaddset(&set, SIGTERM);
            pthread_sigmask(SIG_BLOCK, &set, nullptr);
            ProxyServer server(pcfg, &sink);
            auto bound = server.start();
            std::cerr << "listening on " << pcfg.listen_host << ':' << bound << " (" << px_mode << ")\n";
            int sig = 0;
            sigwait(&set, &sig);
            server.stop();
            return 0;
        }
        if (*cp) {
            std::vector<std::string> warnings;
            auto entries = load_ranked_list(read_input(cp_list), &warnings);
            for (const auto& w : warnings)
                std::cerr << "warning: " << cp_list << ": " << w << '\n';
            if (cp_top && entries.size() > cp_top)
                entries.resize(cp_top);
            if (cp_http_only)
                cset.schemes = {"http"};
            cset.rewrite = rcfg;
            {
                std::ofstream head(cp_out, std::ios::binary | std::ios::trunc);
                if (!head)
                    throw IoError("cannot write " + cp_out);
                head << run_header(cset, entries.size()).dump() << '\n';
            }
            JsonlSink sink(cp_out);
            auto out = run(entries, cset, sink);
            std::cerr << out.domains << " domains, " << out.records << " records, " << out.failures << " failed\n";
            return 0;
        }
        if (*rp) {
            auto records = parse_jsonl(read_input(rp_in));
            auto rep = summarize(records);
            std::cout << report_json(rep).dump(2) << '\n';
            if (!rp_csv.empty())
                write_file(rp_csv, report_csv(rep));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
