// Cache-based bottom-up enumeration with observational-equivalence
// deduplication: one representative per distinct behavior vector, new
// candidates built only from cached representatives of smaller sizes.

#ifndef MBASYNTH_BASELINE_HPP
#define MBASYNTH_BASELINE_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mbasynth/counting.hpp"
#include "mbasynth/engine.hpp"
#include "mbasynth/spec.hpp"

namespace mbasynth {

inline constexpr std::uint64_t kDefaultMemoryBudget = 2'500'000'000;

struct BaselineConfig {
    int size_bound = 10;
    std::uint64_t memory_budget = kDefaultMemoryBudget;
    std::optional<std::chrono::duration<double>> time_budget;
};

struct CacheSizeStats {
    int size = 0;
    std::uint64_t stored = 0;       // cache entries of size <= this one
    std::uint64_t candidates = 0;   // candidates built at this size
    u128 mba_cumulative = 0;        // canonical expressions of size <= this one
    std::uint64_t memory_bytes = 0; // modeled: stored * bytes_per_entry
    double cum_millis = 0;
    bool oom = false;               // size aborted when storage hit the budget

    double cached_percent() const {
        return mba_cumulative == 0 ? 0.0 : 100.0 * static_cast<double>(stored) / to_double(mba_cumulative);
    }
};

struct CacheStats {
    std::size_t bytes_per_entry = 0;
    std::vector<CacheSizeStats> per_size;
    std::optional<int> oom_at;
};

struct BaselineResult {
    SynthesisOutcome outcome;  // status OutOfMemory when the budget is hit
    CacheStats stats;
};

/// n * w / 8 rounded up: the memory model counts behavior vectors only.
std::uint64_t behavior_bytes(std::size_t n, BitWidth width);
inline std::uint64_t modeled_memory_bytes(std::uint64_t entries, std::size_t n, BitWidth width) {
    return entries * behavior_bytes(n, width);
}

/// Throws ConfigError for a size bound < 1 or above kMaxExprSize.
BaselineResult run_baseline(const Specification& spec, const BaselineConfig& cfg);

/// "<1 MB" below 10^6 bytes, then one-decimal MB, then GB (decimal units).
std::string format_memory(std::uint64_t bytes);

/// Rows "Size & #MBA & #VFB cache & VFB mem & % cached & cum. time".
/// #MBA comes from the counting table; timing is hardware-dependent.
std::string cache_report(const CacheStats& stats);
std::string cache_report_csv(const CacheStats& stats);

}  // namespace mbasynth

#endif
