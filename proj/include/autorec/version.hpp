#pragma once

namespace autorec {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace autorec
