#pragma once

#include <array>
#include <string_view>

namespace jsrehab {

inline constexpr std::string_view kVersion = "0.4.0";
inline constexpr std::array<int, 4> kSupportedBootstrapMajors = {2, 3, 4, 5};

}  // namespace jsrehab
