#pragma once

namespace mcv2x {

inline constexpr const char* kToolName = "mcv2x";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace mcv2x
