#pragma once

namespace dqml {

inline constexpr const char* kLibraryVersion = "1.0.0";

}  // namespace dqml
