#pragma once

namespace carpetlab {
inline constexpr const char* kVersion = "1.0.0";
}
