// Cache-free bottom-up synthesis: every rank of every size is decoded,
// evaluated against the specification and discarded.

#ifndef MBASYNTH_ENGINE_HPP
#define MBASYNTH_ENGINE_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mbasynth/codec.hpp"
#include "mbasynth/counting.hpp"
#include "mbasynth/parallel.hpp"
#include "mbasynth/spec.hpp"

namespace mbasynth {

enum class EnumerationMode {
    Local,     // block-local index i decodes rank offset + i
    Shuffled,  // block-local index i decodes rank offset + pi(i)
};

/// OutOfMemory is only produced by the cache-based baseline.
enum class Status { Found, NotFound, TimedOut, OutOfMemory };

std::string to_string(EnumerationMode mode);
std::string to_string(Status status);

struct EngineConfig {
    int size_bound = 10;
    EnumerationMode mode = EnumerationMode::Local;
    std::uint64_t chunk = std::uint64_t{1} << 22;
    unsigned workers = 0;  // 0: hardware concurrency
    std::optional<std::chrono::duration<double>> time_budget;
};

struct SizeStats {
    int size = 0;
    u128 candidates = 0;  // candidates dispatched at this size
    double millis = 0;
    std::uint64_t rss_bytes = 0;  // resident set after the size finished
};

struct SynthesisOutcome {
    Status status = Status::NotFound;
    std::optional<RpnExpr> expr;
    int size = 0;   // winning size when Found
    u128 rank = 0;  // winning rank within that size when Found
    std::vector<SizeStats> per_size;
    double total_millis = 0;
};

/// Sizes 1..cfg.size_bound in order, operator blocks in slot order, each
/// block split into chunks of at most cfg.chunk candidates. Returns after
/// the first operator block that contains a solution, reporting the
/// smallest rank in that block, so the result is size-minimal and
/// deterministic. Local mode exits at the first chunk with a hit, which
/// holds the same rank. If the time budget expires after a hit, that hit
/// is returned.
///
/// Throws ConfigError when the table's k differs from the specification's,
/// the bound exceeds the table or kMaxExprSize, or chunk == 0.
SynthesisOutcome synthesize(const Specification& spec, const CountTable& table, const EngineConfig& cfg,
                            ParallelBackend& backend);
SynthesisOutcome synthesize(const Specification& spec, const CountTable& table, const EngineConfig& cfg);

/// Calls visitor on decode(n) for every n < T[s][8], in rank order.
u128 enumerate_all(int s, const CountTable& table, const std::function<void(std::span<const Token>)>& visitor);

/// Block-local permutation used by the shuffled mode. When the block size
/// shares a factor with the multiplier, the permutation runs over the next
/// coprime modulus and walks cycles back into range.
class BlockPermutation {
public:
    explicit BlockPermutation(u128 count);
    u128 count() const { return count_; }
    u128 operator()(u128 i) const {
        u128 x = mulmod(i, ShuffleParams::kMultiplier, params_.modulus());
        while (x >= count_) x = mulmod(x, ShuffleParams::kMultiplier, params_.modulus());
        return x;
    }
    bool cycle_walking() const { return params_.modulus() != count_; }

private:
    static ShuffleParams pick(u128 count);
    u128 count_;
    ShuffleParams params_;
};

struct RunReport {
    struct Row {
        int size;
        u128 candidates;
        double millis;
        double per_second;
    };
    Status status;
    std::vector<Row> rows;
    u128 total_candidates = 0;
    double total_millis = 0;
    double per_second = 0;
};

RunReport run_stats(const SynthesisOutcome& outcome);

/// {status, expr, size, rank, per_size: [{size, candidates, millis}]}.
std::string outcome_json(const SynthesisOutcome& outcome);

/// Human-readable TSV of the report.
std::string report_text(const RunReport& report);

/// Current resident set size from /proc/self/statm (0 if unavailable).
std::uint64_t resident_set_bytes();

}  // namespace mbasynth

#endif
