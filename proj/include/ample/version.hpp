#pragma once

namespace ample {

inline constexpr const char* kToolName = "ample";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace ample
