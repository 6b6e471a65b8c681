#include "mbasynth/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "mbasynth/baseline.hpp"
#include "mbasynth/bench.hpp"
#include "mbasynth/codec.hpp"
#include "mbasynth/counting.hpp"
#include "mbasynth/engine.hpp"
#include "mbasynth/spec_io.hpp"
#include "mbasynth/text.hpp"
#include "mbasynth/version.hpp"

namespace mbasynth {

namespace {

std::optional<std::uint64_t> env_u64(const char* name) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return std::nullopt;
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

int exit_code(Status status) {
    switch (status) {
        case Status::Found: return kExitFound;
        case Status::NotFound: return kExitNotFound;
        case Status::TimedOut: return kExitTimedOut;
        case Status::OutOfMemory: return kExitOutOfMemory;
    }
    return kExitData;
}

std::string status_line(Status status) {
    switch (status) {
        case Status::Found: return "found";
        case Status::NotFound: return "not found";
        case Status::TimedOut: return "timed out";
        case Status::OutOfMemory: return "out of memory";
    }
    return "?";
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot write " + path.string());
    f << text;
    if (!f) throw IoError("failed writing " + path.string());
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mixed-boolean arithmetic synthesis from input-output examples", "mbasynth"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("mbasynth ") + kVersion + " (" + kBuildInfo + ")");

    const unsigned default_workers = static_cast<unsigned>(env_u64("MBASYNTH_WORKERS").value_or(0));
    const std::uint64_t default_chunk = env_u64("MBASYNTH_CHUNK").value_or(std::uint64_t{1} << 22);

    // synth
    auto* synth = app.add_subcommand("synth", "Cache-free bottom-up synthesis for a specification file");
    std::string synth_spec;
    int synth_max = 10;
    std::string synth_mode = "local";
    unsigned synth_workers = default_workers;
    std::uint64_t synth_chunk = default_chunk;
    std::optional<double> synth_timeout;
    bool synth_json = false;
    bool synth_stats = false;
    synth->add_option("--spec", synth_spec, "Specification file")->required();
    synth->add_option("--max-size", synth_max, "Size bound C")->check(CLI::Range(1, kMaxExprSize));
    synth->add_option("--mode", synth_mode, "Rank order inside a block")->check(CLI::IsMember({"local", "shuffled"}));
    synth->add_option("--workers", synth_workers, "Worker threads (0: all cores)");
    synth->add_option("--chunk", synth_chunk, "Candidates per parallel launch")->check(CLI::PositiveNumber);
    synth->add_option("--timeout", synth_timeout, "Wall-clock budget in seconds")->check(CLI::NonNegativeNumber);
    synth->add_flag("--json", synth_json, "Machine-readable output");
    synth->add_flag("--stats", synth_stats, "Print per-size candidate counts and throughput");

    // count
    auto* count = app.add_subcommand("count", "Print the canonical expression count table");
    int count_k = 0;
    int count_max = 0;
    bool count_cumulative = false;
    count->add_option("--k", count_k, "Variable count")->required()->check(CLI::PositiveNumber);
    count->add_option("--max-size", count_max, "Largest size")->required()->check(CLI::PositiveNumber);
    count->add_flag("--cumulative", count_cumulative, "Append the cumulative total column");
    bool count_json = false;
    count->add_flag("--json", count_json, "Rows as JSON with decimal-string counts");

    // decode
    auto* dec = app.add_subcommand("decode", "Print the expression with a given rank");
    int dec_k = 0;
    int dec_size = 0;
    std::string dec_rank;
    bool dec_rpn = false;
    dec->add_option("--k", dec_k, "Variable count")->required()->check(CLI::PositiveNumber);
    dec->add_option("--size", dec_size, "Expression size")->required()->check(CLI::Range(1, kMaxExprSize));
    dec->add_option("--rank", dec_rank, "Decimal rank")->required();
    dec->add_flag("--rpn", dec_rpn, "Print RPN instead of infix");

    // encode
    auto* enc = app.add_subcommand("encode", "Print the size and rank of a canonical expression");
    int enc_k = 0;
    std::string enc_expr;
    enc->add_option("--k", enc_k, "Variable count")->required()->check(CLI::PositiveNumber);
    enc->add_option("--expr", enc_expr, "Infix expression")->required();

    // baseline
    auto* base = app.add_subcommand("baseline", "Cache-based enumeration with behavior deduplication");
    std::string base_spec;
    int base_max = 10;
    std::uint64_t base_budget = kDefaultMemoryBudget;
    std::string base_report = "table";
    std::optional<double> base_timeout;
    base->add_option("--spec", base_spec, "Specification file")->required();
    base->add_option("--max-size", base_max, "Size bound C")->required()->check(CLI::Range(1, kMaxExprSize));
    base->add_option("--mem-budget", base_budget, "Behavior-vector memory budget in bytes");
    base->add_option("--report", base_report, "Report format")->check(CLI::IsMember({"csv", "table"}));
    base->add_option("--timeout", base_timeout, "Wall-clock budget in seconds")->check(CLI::NonNegativeNumber);

    // make-spec
    auto* mk = app.add_subcommand("make-spec", "Sample a target expression on random distinct inputs");
    int mk_k = 0;
    std::string mk_target;
    int mk_n = 16;
    int mk_width = 32;
    std::uint64_t mk_seed = 1;
    std::string mk_out;
    mk->add_option("--k", mk_k, "Variable count")->required()->check(CLI::PositiveNumber);
    mk->add_option("--target", mk_target, "Infix target expression")->required();
    mk->add_option("--n", mk_n, "Number of examples")->check(CLI::PositiveNumber);
    mk->add_option("--width", mk_width, "Bit width")->check(CLI::Range(1, 64));
    mk->add_option("--seed", mk_seed, "Random seed");
    mk->add_option("--out", mk_out, "Output file (default stdout)");

    // bench
    auto* bench = app.add_subcommand("bench", "Benchmark suite generation and runs");
    bench->require_subcommand(1);
    auto* gen = bench->add_subcommand("gen", "Generate a suite (JSON lines)");
    SuiteParams gp;
    std::string gen_out;
    gen->add_option("--seed", gp.seed, "Random seed");
    gen->add_option("--min-size", gp.min_size)->check(CLI::Range(1, kMaxExprSize));
    gen->add_option("--max-size", gp.max_size)->check(CLI::Range(1, kMaxExprSize));
    gen->add_option("--min-vars", gp.min_vars)->check(CLI::PositiveNumber);
    gen->add_option("--max-vars", gp.max_vars)->check(CLI::PositiveNumber);
    gen->add_option("--per-cell", gp.per_cell)->check(CLI::NonNegativeNumber);
    gen->add_option("--examples", gp.n, "Pairs per specification")->check(CLI::PositiveNumber);
    gen->add_option("--out", gen_out, "Output file (default stdout)");

    auto* brun = bench->add_subcommand("run", "Run solvers over a suite");
    std::string run_suite_path;
    std::vector<std::string> run_solvers{kSolverSimba};
    RunOptions ro;
    ro.workers = default_workers;
    std::string run_out;
    std::string run_summary_dir;
    brun->add_option("--suite", run_suite_path, "Suite file")->required();
    brun->add_option("--solvers", run_solvers, "Solvers to run")
        ->delimiter(',')
        ->check(CLI::IsMember({kSolverSimba, kSolverShuffled, kSolverBaseline}));
    brun->add_option("--timeout", ro.timeout_seconds, "Per-run wall-clock cap in seconds")->check(CLI::PositiveNumber);
    brun->add_option("--repeats", ro.repeats)->check(CLI::PositiveNumber);
    brun->add_option("--max-size", ro.size_bound, "Size bound (0: each instance's generated size)");
    brun->add_option("--workers", ro.workers, "Engine worker threads");
    brun->add_option("--jobs", ro.jobs, "Instances run concurrently")->check(CLI::PositiveNumber);
    brun->add_option("--mem-budget", ro.memory_budget, "Baseline memory budget in bytes");
    brun->add_option("--out", run_out, "Results CSV (default stdout)");
    brun->add_option("--summary-dir", run_summary_dir, "Directory for summary CSVs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (synth->parsed()) {
            const Specification spec = read_spec_file(synth_spec);
            const CountTable table = CountTable::build(spec.k(), synth_max);
            EngineConfig cfg;
            cfg.size_bound = synth_max;
            cfg.mode = synth_mode == "shuffled" ? EnumerationMode::Shuffled : EnumerationMode::Local;
            cfg.workers = synth_workers;
            cfg.chunk = synth_chunk;
            if (synth_timeout) cfg.time_budget = std::chrono::duration<double>(*synth_timeout);
            const SynthesisOutcome outcome = synthesize(spec, table, cfg);
            if (synth_json) {
                out << outcome_json(outcome) << '\n';
            } else {
                out << (outcome.expr ? to_infix(*outcome.expr) : status_line(outcome.status)) << '\n';
                if (synth_stats) out << report_text(run_stats(outcome));
            }
            return exit_code(outcome.status);
        }
        if (count->parsed()) {
            const CountTable table = CountTable::build(count_k, count_max);
            if (count_json) {
                auto rows = nlohmann::ordered_json::array();
                for (int s = 1; s <= count_max; ++s) {
                    nlohmann::ordered_json row;
                    row["size"] = s;
                    for (int slot = 0; slot < kNumSlots; ++slot) row[slot_name(slot)] = to_string(table.at(s, slot));
                    if (count_cumulative) row["CUMULATIVE"] = to_string(table.cumulative_total(s));
                    rows.push_back(std::move(row));
                }
                out << nlohmann::ordered_json{{"k", count_k}, {"rows", std::move(rows)}}.dump() << '\n';
                return 0;
            }
            out << "size";
            for (int slot = 0; slot < kNumSlots; ++slot) out << '\t' << slot_name(slot);
            if (count_cumulative) out << "\tCUMULATIVE";
            out << '\n';
            for (int s = 1; s <= count_max; ++s) {
                out << s;
                for (int slot = 0; slot < kNumSlots; ++slot) out << '\t' << to_grouped_string(table.at(s, slot));
                if (count_cumulative) out << '\t' << to_grouped_string(table.cumulative_total(s));
                out << '\n';
            }
            return 0;
        }
        if (dec->parsed()) {
            const auto rank = parse_u128(dec_rank);
            if (!rank) {
                err << "error: --rank must be a decimal integer below 2^128\n";
                return kExitUsage;
            }
            const CountTable table = CountTable::build(dec_k, dec_size);
            const RpnExpr e = decode(*rank, dec_size, table);
            out << (dec_rpn ? to_rpn_string(e) : to_infix(e)) << '\n';
            return 0;
        }
        if (enc->parsed()) {
            const RpnExpr e = parse_infix(enc_expr, enc_k);
            const CountTable table = CountTable::build(enc_k, std::max(1, e.size()));
            const Rank r = encode(e, table);
            out << "size=" << r.size << "\trank=" << to_string(r.value) << '\n';
            return 0;
        }
        if (base->parsed()) {
            const Specification spec = read_spec_file(base_spec);
            BaselineConfig cfg;
            cfg.size_bound = base_max;
            cfg.memory_budget = base_budget;
            if (base_timeout) cfg.time_budget = std::chrono::duration<double>(*base_timeout);
            const BaselineResult result = run_baseline(spec, cfg);
            out << (result.outcome.expr ? to_infix(*result.outcome.expr) : status_line(result.outcome.status))
                << '\n';
            out << (base_report == "csv" ? cache_report_csv(result.stats) : cache_report(result.stats));
            return exit_code(result.outcome.status);
        }
        if (mk->parsed()) {
            const BitWidth width(mk_width);
            const RpnExpr target = parse_infix(mk_target, mk_k);
            std::mt19937_64 rng(mk_seed);
            std::set<std::vector<Word>> seen;
            std::vector<std::vector<Word>> inputs;
            for (int attempt = 0; static_cast<int>(inputs.size()) < mk_n && attempt < 1000 * mk_n; ++attempt) {
                std::vector<Word> tuple(mk_k);
                for (Word& v : tuple) v = rng() & width.mask();
                if (seen.insert(tuple).second) inputs.push_back(std::move(tuple));
            }
            if (static_cast<int>(inputs.size()) < mk_n) throw ConfigError("not enough distinct inputs at this width");
            const Specification spec = Specification::from_target(target, mk_k, width, inputs);
            if (mk_out.empty()) {
                out << spec_to_json(spec).dump(2) << '\n';
            } else {
                write_spec_file(mk_out, spec);
            }
            return 0;
        }
        if (gen->parsed()) {
            const Suite suite = generate_suite(gp);
            for (const std::string& cell : suite.skipped_cells) err << "skipped " << cell << '\n';
            if (gen_out.empty()) {
                write_suite(out, suite);
            } else {
                std::ofstream f(gen_out);
                if (!f) throw IoError("cannot write " + gen_out);
                write_suite(f, suite);
                if (!f) throw IoError("failed writing " + gen_out);
            }
            return 0;
        }
        if (brun->parsed()) {
            std::ifstream f(run_suite_path);
            if (!f) throw IoError("cannot open " + run_suite_path);
            std::vector<BenchInstance> instances = read_suite(f);
            ro.solvers = run_solvers;

            std::ofstream file_out;
            std::ostream* results = &out;
            if (!run_out.empty()) {
                file_out.open(run_out);
                if (!file_out) throw IoError("cannot write " + run_out);
                results = &file_out;
            }
            *results << records_csv_header() << '\n';
            const std::vector<RunRecord> records = run_suite(
                instances, ro, [&](const RunRecord& r) { *results << record_csv_row(r) << '\n' << std::flush; });
            if (!*results) throw IoError("failed writing results");
            if (!run_summary_dir.empty()) {
                const std::filesystem::path dir(run_summary_dir);
                std::filesystem::create_directories(dir);
                const SuiteSummary summary = summarize(instances, records, default_thresholds());
                write_text_file(dir / "thresholds.csv", summary.thresholds_csv);
                write_text_file(dir / "per_size.csv", summary.per_size_csv);
                write_text_file(dir / "per_vars.csv", summary.per_vars_csv);
                write_text_file(dir / "head_to_head.csv", summary.head_to_head_csv);
            }
            return 0;
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    err << app.help();
    return kExitUsage;
}

}  // namespace mbasynth
