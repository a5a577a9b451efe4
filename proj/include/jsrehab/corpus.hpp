#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "jsrehab/config.hpp"
#include "jsrehab/dom.hpp"
#include "jsrehab/http.hpp"
#include "jsrehab/stats.hpp"
#include "jsrehab/url.hpp"

namespace jsrehab {

struct RankedDomain {
    int rank = 0;
    std::string domain;

    bool operator==(const RankedDomain&) const = default;
};

/// Parses `rank,domain` lines, sorted by rank. Malformed lines are skipped and
/// described in `warnings` when given.
std::vector<RankedDomain> load_ranked_list(std::string_view csv, std::vector<std::string>* warnings = nullptr);

/// Same-origin anchors with a path other than base's, deduplicated in document
/// order, then a seeded uniform sample of min(n, candidates) without replacement.
std::vector<Url> pick_internal_urls(const DomTree& landing, const Url& base, std::size_t n, std::uint64_t seed);
std::vector<Url> internal_link_candidates(const DomTree& landing, const Url& base);

struct CorpusSettings {
    FetchSettings fetch;
    RewriteConfig rewrite;
    std::uint64_t seed = 0;
    std::size_t internal_pages = 3;
    unsigned parallelism = 4;
    std::vector<std::string> schemes = {"https", "http"};
};

/// First JSONL line of a run describing its settings.
nlohmann::json run_header(const CorpusSettings& settings, std::size_t domains);

struct CorpusOutcome {
    std::size_t domains = 0;
    std::size_t records = 0;
    std::size_t failures = 0;
};

/// Crawls the landing page and up to `internal_pages` internal pages per
/// domain, appending one record per fetched page. Per-page errors become
/// records with status 0 (or the HTTP status) and an error note.
CorpusOutcome run(const std::vector<RankedDomain>& entries, const CorpusSettings& settings, RecordSink& sink);

}  // namespace jsrehab
