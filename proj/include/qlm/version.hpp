#pragma once

namespace qlm {
inline constexpr const char* kVersion = "0.1.0";
}
