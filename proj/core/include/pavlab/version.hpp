#pragma once

namespace pavlab {

inline constexpr const char* kVersion = "0.1.0";

}
