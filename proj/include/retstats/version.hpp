#pragma once

namespace retstats {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace retstats
