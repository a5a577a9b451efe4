#pragma once

#include <string>
#include <vector>

namespace jsrehab {

enum class TabsMechanism { Radio, Target };
enum class StatsCompression { Gzip, Brotli, Auto };

struct RewriteConfig {
    TabsMechanism tabs_mechanism = TabsMechanism::Radio;
    bool highlight = false;
    // Stylesheets the page uses; accepted for callers but not read by the rewriter.
    std::vector<std::string> stylesheet_hints;
    StatsCompression compression_for_stats = StatsCompression::Gzip;
    bool preserve_unknown = true;
};

}  // namespace jsrehab
