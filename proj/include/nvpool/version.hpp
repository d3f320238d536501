#pragma once

namespace nvpool {

inline constexpr const char* version = "0.1.0";

}  // namespace nvpool
