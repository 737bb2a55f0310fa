#pragma once

namespace amkt {

inline constexpr const char* kToolName = "amkt";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace amkt
