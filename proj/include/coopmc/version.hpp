#pragma once

namespace coopmc {

inline constexpr const char* kVersion = "0.1.0";

// Generator identity recorded in result metadata so runs are reproducible.
inline constexpr const char* kRngName = "xoshiro256++/splitmix64/ziggurat";

}  // namespace coopmc
