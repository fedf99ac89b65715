#pragma once

namespace actnet {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace actnet
