#pragma once

namespace pluripot {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace pluripot
