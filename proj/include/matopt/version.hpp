#pragma once

namespace matopt {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "matopt";

}  // namespace matopt
