// Benchmark suites: generation, difficulty normalization, batch runs and
// CSV summaries.
//
// Randomness: each (size, vars) cell gets its own std::mt19937_64 seeded
// with splitmix64(seed ^ splitmix64(size << 32 | vars)), so cells are
// independent streams and any cell can be regenerated on its own.

#ifndef MBASYNTH_BENCH_HPP
#define MBASYNTH_BENCH_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mbasynth/baseline.hpp"
#include "mbasynth/engine.hpp"
#include "mbasynth/spec.hpp"

namespace mbasynth {

inline constexpr const char* kGeneratorId = "mt19937_64/splitmix64-cells";

std::uint64_t splitmix64(std::uint64_t x);

struct BenchInstance {
    std::string id;
    int gen_size = 0;
    int gen_vars = 0;
    RpnExpr ground_truth;
    Specification spec;
    std::uint64_t seed = 0;
    int norm_size = 0;
    int norm_vars = 0;
    bool norm_upper_bound = true;  // no solver output confirmed the labels yet
};

struct SuiteParams {
    std::uint64_t seed = 1;
    int min_size = 5;
    int max_size = 30;
    int min_vars = 2;
    int max_vars = 10;
    int per_cell = 10;
    int n = 16;
    BitWidth width{32};
};

struct Suite {
    SuiteParams params;
    std::vector<BenchInstance> instances;
    /// Cells left out because their counts overflow the table.
    std::vector<std::string> skipped_cells;
};

/// Each instance is a uniform canonical expression of exactly gen_size
/// tokens over gen_vars variables, sampled on n distinct uniform inputs.
Suite generate_suite(const SuiteParams& params);

/// One JSON object per line: id, k, w, gen_size, expr, pairs, seed, generator.
void write_suite(std::ostream& out, const Suite& suite);
std::vector<BenchInstance> read_suite(std::istream& in);

struct Normalized {
    int size = 0;
    int vars = 0;
    bool upper_bound = true;
};

/// Labels from the smaller of the ground truth and a sound solver output.
/// Unsound or absent outputs leave ground-truth labels flagged as an upper bound.
Normalized normalize(const BenchInstance& instance, const std::optional<RpnExpr>& solver_output);

inline constexpr const char* kSolverSimba = "simba";
inline constexpr const char* kSolverShuffled = "simba-rtid";
inline constexpr const char* kSolverBaseline = "baseline";

struct RunRecord {
    std::string instance;
    std::string solver;
    std::string status;  // found, not_found, timed_out, oom, error
    int size = 0;
    double millis = 0;
    int repeat = 0;
    std::optional<RpnExpr> expr;  // kept for normalization, not written to CSV
};

struct RunOptions {
    std::vector<std::string> solvers{kSolverSimba};
    double timeout_seconds = 60;
    int repeats = 1;
    /// 0: each instance's own gen_size.
    int size_bound = 0;
    unsigned workers = 0;
    unsigned jobs = 1;
    std::uint64_t memory_budget = kDefaultMemoryBudget;
};

/// Runs every solver on every instance; updates the instances' normalized
/// labels from the sound outputs. Records reach `sink` (if set) as they
/// finish and are returned in (instance, solver, repeat) order.
std::vector<RunRecord> run_suite(std::vector<BenchInstance>& instances, const RunOptions& options,
                                 const std::function<void(const RunRecord&)>& sink = {});

/// Solves one instance with one solver; exceptions become status "error".
RunRecord run_one(const BenchInstance& instance, const std::string& solver, const RunOptions& options, int repeat);

std::string records_csv_header();
std::string record_csv_row(const RunRecord& record);

struct SuiteSummary {
    std::string thresholds_csv;    // solver,threshold_s,mean_solved,std_solved
    std::string per_size_csv;      // size,solver,instances,solved,percent
    std::string per_vars_csv;      // vars,solver,instances,solved,percent
    std::string head_to_head_csv;  // solver,versus,common,faster_percent,median_speedup
};

/// An instance counts as solved by a solver when every repeat found it;
/// its time is the mean over repeats. Standard deviations are population
/// deviations across repeats.
SuiteSummary summarize(const std::vector<BenchInstance>& instances, const std::vector<RunRecord>& records,
                       const std::vector<double>& thresholds_seconds);

std::vector<double> default_thresholds();

}  // namespace mbasynth

#endif
