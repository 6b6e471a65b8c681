#ifndef MBASYNTH_VERSION_HPP
#define MBASYNTH_VERSION_HPP

namespace mbasynth {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kBuildInfo = "C++20, " __DATE__;

}  // namespace mbasynth

#endif
