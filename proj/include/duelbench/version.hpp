#pragma once

namespace duelbench {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace duelbench
