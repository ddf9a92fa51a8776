#pragma once

#include <string_view>

namespace intravol {

inline constexpr std::string_view kToolName = "intravol";
inline constexpr std::string_view kToolVersion = "0.1.0";

} // namespace intravol
