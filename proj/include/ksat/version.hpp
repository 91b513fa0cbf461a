#pragma once

namespace ksat {

inline constexpr const char* version = "0.1.0";

} // namespace ksat
