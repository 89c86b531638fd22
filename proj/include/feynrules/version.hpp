#pragma once

namespace feynrules {
inline constexpr const char* kVersion = "0.3.0";
}
