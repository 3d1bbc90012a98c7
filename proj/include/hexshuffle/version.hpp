#pragma once

namespace hexshuffle {

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace hexshuffle
