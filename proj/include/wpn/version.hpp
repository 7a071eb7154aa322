#pragma once

namespace wpn {

inline constexpr const char* version = "0.1.0";

} // namespace wpn
