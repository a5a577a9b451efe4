#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jsrehab/components.hpp"
#include "jsrehab/compression.hpp"
#include "jsrehab/config.hpp"
#include "jsrehab/detect.hpp"

namespace jsrehab {

struct RewriteStats {
    double duration_ms = 0;
    std::size_t node_count = 0;
    std::map<std::string, std::size_t> instances_by_kind;
    std::size_t original_size = 0;
    std::size_t transformed_size = 0;
    std::size_t original_compressed = 0;
    std::size_t transformed_compressed = 0;
    // Encoding of the response body as delivered; identity for files.
    Encoding compression = Encoding::Identity;
    // Algorithm used for the compressed size fields.
    Encoding size_algorithm = Encoding::Gzip;
};

struct RewriteOptions {
    const ScriptBodies* script_bodies = nullptr;
    std::optional<std::string> charset;
    Encoding delivered = Encoding::Identity;
    bool measure_compressed = true;
};

struct RewriteResult {
    std::string html;
    BootstrapProfile profile;
    std::vector<ComponentInstance> instances;
    std::vector<Warning> warnings;
    std::vector<CssRule> rules;
    std::size_t mutations = 0;
    RewriteStats stats;
};

RewriteResult rewrite_document(std::string_view input, const RewriteConfig& config, const RewriteOptions& options = {});

/// Relative growth of the compressed body: transformed/original - 1.
double overhead(std::size_t original, std::size_t transformed);
double overhead(const RewriteStats& stats);

Encoding stats_algorithm(const RewriteConfig& config, Encoding delivered);

}  // namespace jsrehab
