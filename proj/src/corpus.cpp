#include "jsrehab/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <random>
#include <set>
#include <thread>

#include "jsrehab/compression.hpp"
#include "jsrehab/proxy.hpp"
#include "strings.hpp"

namespace jsrehab {

std::vector<RankedDomain> load_ranked_list(std::string_view csv, std::vector<std::string>* warnings)
{
    std::vector<RankedDomain> out;
    std::size_t line_no = 0;
    while (!csv.empty()) {
        auto nl = csv.find('\n');
        auto line = detail::trim(csv.substr(0, nl));
        csv = nl == std::string_view::npos ? std::string_view() : csv.substr(nl + 1);
        ++line_no;
        if (line.empty())
            continue;
        auto comma = line.find(',');
        bool ok = comma != std::string_view::npos;
        int rank = 0;
        std::string_view domain;
        if (ok) {
            auto r = detail::trim(line.substr(0, comma));
            domain = detail::trim(line.substr(comma + 1));
            auto [p, ec] = std::from_chars(r.data(), r.data() + r.size(), rank);
            ok = ec == std::errc() && p == r.data() + r.size() && rank > 0 && !domain.empty() &&
                 domain.find_first_of(" \t,/") == std::string_view::npos;
        }
        if (!ok) {
            if (warnings)
                warnings->push_back("line " + std::to_string(line_no) + ": expected rank,domain");
            continue;
        }
        out.push_back({rank, detail::to_lower(domain)});
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.rank < b.rank; });
    return out;
}

std::vector<Url> internal_link_candidates(const DomTree& landing, const Url& base)
{
    std::vector<Url> out;
    std::set<std::string> seen;
    for (auto n : landing.elements_in_order()) {
        if (!landing.is_element(n, "a"))
            continue;
        auto href = landing.attr(n, "href");
        if (!href)
            continue;
        auto u = resolve(base, *href);
        if (!u || !same_origin(*u, base) || u->path == base.path)
            continue;
        if (seen.insert(u->str()).second)
            out.push_back(std::move(*u));
    }
    return out;
}

std::vector<Url> pick_internal_urls(const DomTree& landing, const Url& base, std::size_t n, std::uint64_t seed)
{
    auto candidates = internal_link_candidates(landing, base);
    std::vector<Url> out;
    std::mt19937_64 rng(seed);
    std::sample(candidates.begin(), candidates.end(), std::back_inserter(out), n, rng);
    return out;
}

nlohmann::json run_header(const CorpusSettings& settings, std::size_t domains)
{
    return {{"run",
             {{"domains", domains},
              {"seed", settings.seed},
              {"internal_pages", settings.internal_pages},
              {"timeout_s", settings.fetch.timeout_s},
              {"max_body", settings.fetch.max_body},
              {"max_redirects", settings.fetch.max_redirects},
              {"user_agent", settings.fetch.user_agent},
              {"schemes", settings.schemes},
              {"ts", utc_timestamp()}}}};
}

namespace {

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

PageStatsRecord failure(std::string url, int status, std::string error)
{
    PageStatsRecord r;
    r.url = std::move(url);
    r.ts = utc_timestamp();
    r.status = status;
    r.error = std::move(error);
    return r;
}

class Crawler {
public:
    Crawler(const CorpusSettings& s, RecordSink& sink) : s_(s), sink_(sink)
    {
        proxy_.rewrite = s.rewrite;
        proxy_.max_body = s.fetch.max_body;
    }

    void domain(const RankedDomain& d)
    {
        FetchResult landing;
        std::string first_url;
        for (const auto& scheme : s_.schemes) {
            auto u = Url::parse(scheme + "://" + d.domain + "/");
            if (!u) {
                landing.error = "invalid domain";
                continue;
            }
            if (first_url.empty())
                first_url = u->str();
            landing = fetch_following(*u, s_.fetch);
            if (landing.ok())
                break;
        }
        if (!landing.ok()) {
            emit(failure(first_url.empty() ? d.domain : first_url, 0, landing.error));
            return;
        }
        auto html = page(landing);
        if (!html)
            return;
        auto base = Url::parse(landing.final_url);
        if (!base)
            return;
        DomTree doc = parse_html(*html, charset_param(landing.response.headers.get("content-type").value_or("")));
        for (const auto& u : pick_internal_urls(doc, *base, s_.internal_pages, s_.seed ^ fnv1a(d.domain))) {
            auto r = fetch_following(u, s_.fetch);
            if (!r.ok()) {
                emit(failure(u.str(), 0, r.error));
                continue;
            }
            page(r);
        }
    }

    std::size_t records() const { return records_; }
    std::size_t failures() const { return failures_; }

private:
    // Emits the page record; returns the decoded HTML when the page is usable for link extraction.
    std::optional<std::string> page(FetchResult& r)
    {
        const auto& res = r.response;
        std::string ctype = res.headers.get("content-type").value_or("");
        if (!is_html(ctype)) {
            emit(failure(r.final_url, res.status, "not an HTML response (" + media_type(ctype) + ")"));
            return std::nullopt;
        }
        std::optional<std::string> decoded;
        if (auto enc = parse_content_encoding(res.headers.get("content-encoding").value_or(""))) {
            try {
                decoded = decompress(res.body, *enc, s_.fetch.max_body * 4);
            } catch (const DecodeError&) {
            }
        }
        auto t = transform_response(r.final_url, res, proxy_);
        if (t.record) {
            if (t.record->error.empty() && (res.status < 200 || res.status >= 400))
                t.record->error = "HTTP status " + std::to_string(res.status);
            emit(std::move(*t.record));
        } else {
            emit(failure(r.final_url, res.status, "empty HTML response"));
        }
        if (res.status < 200 || res.status >= 400)
            return std::nullopt;
        return decoded;
    }

    void emit(PageStatsRecord rec)
    {
        if (!rec.error.empty())
            ++failures_;
        ++records_;
        sink_.append(rec);
    }

    const CorpusSettings& s_;
    RecordSink& sink_;
    ProxyConfig proxy_;
    std::size_t records_ = 0;
    std::size_t failures_ = 0;
};

}  // namespace

CorpusOutcome run(const std::vector<RankedDomain>& entries, const CorpusSettings& settings, RecordSink& sink)
{
    CorpusOutcome out;
    out.domains = entries.size();
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> records{0}, failures{0};
    auto worker = [&] {
        Crawler c(settings, sink);
        for (std::size_t i = next++; i < entries.size(); i = next++)
            c.domain(entries[i]);
        records += c.records();
        failures += c.failures();
    };
    unsigned n = std::max(1u, std::min<unsigned>(settings.parallelism, static_cast<unsigned>(std::max<std::size_t>(entries.size(), 1))));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    out.records = records;
    out.failures = failures;
    return out;
}

}  // namespace jsrehab
