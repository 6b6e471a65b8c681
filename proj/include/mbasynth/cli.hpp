#ifndef MBASYNTH_CLI_HPP
#define MBASYNTH_CLI_HPP

#include <iosfwd>

namespace mbasynth {

inline constexpr int kExitFound = 0;
inline constexpr int kExitNotFound = 1;
inline constexpr int kExitTimedOut = 2;
inline constexpr int kExitOutOfMemory = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;
inline constexpr int kExitIo = 74;

/// Entry point behind the mbasynth binary. Environment variables
/// MBASYNTH_WORKERS and MBASYNTH_CHUNK supply defaults for --workers and
/// --chunk.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mbasynth

#endif
