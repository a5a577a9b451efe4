#pragma once

// Reference statistics written from the textbook definitions, independent of
// the library code paths.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

// Hyndman and Fan definition 7 in its 1-indexed form:
// m = 1 - p, j = floor(np + m), g = np + m - j, Q = (1 - g) x_j + g x_{j+1}.
inline double quantile_type7(std::vector<double> x, double p)
{
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    const double m = 1.0 - p;
    const double jp = n * p + m;
    const auto j = static_cast<std::size_t>(std::floor(jp));
    const double g = jp - std::floor(jp);
    auto at = [&](std::size_t k) { return x[std::clamp<std::size_t>(k, 1, x.size()) - 1]; };
    return (1.0 - g) * at(j) + g * at(j + 1);
}

inline double relative_growth(std::size_t before, std::size_t after)
{
    if (before == 0)
        return 0.0;
    return static_cast<double>(static_cast<long double>(after) / static_cast<long double>(before) - 1.0L);
}

}  // namespace oracle
