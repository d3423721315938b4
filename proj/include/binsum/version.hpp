#pragma once

namespace binsum {

inline constexpr const char* kToolName = "binsum";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace binsum
