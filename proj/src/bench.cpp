#include "mbasynth/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "mbasynth/codec.hpp"
#include "mbasynth/spec_io.hpp"
#include "mbasynth/text.hpp"

namespace mbasynth {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

namespace {

std::uint64_t cell_seed(std::uint64_t seed, int size, int vars) {
    const std::uint64_t cell = (static_cast<std::uint64_t>(size) << 32) | static_cast<std::uint32_t>(vars);
    return splitmix64(seed ^ splitmix64(cell));
}

std::vector<std::vector<Word>> distinct_inputs(int n, int k, BitWidth width, std::mt19937_64& rng) {
    std::set<std::vector<Word>> seen;
    std::vector<std::vector<Word>> out;
    out.reserve(n);
    while (static_cast<int>(out.size()) < n) {
        std::vector<Word> tuple(k);
        for (Word& v : tuple) v = rng() & width.mask();
        if (seen.insert(tuple).second) out.push_back(std::move(tuple));
    }
    return out;
}

BenchInstance make_instance(std::string id, int s, int k, RpnExpr truth, Specification spec, std::uint64_t seed) {
    BenchInstance inst{std::move(id), s, k, std::move(truth), std::move(spec), seed};
    const Normalized labels = normalize(inst, std::nullopt);
    inst.norm_size = labels.size;
    inst.norm_vars = labels.vars;
    inst.norm_upper_bound = labels.upper_bound;
    return inst;
}

}  // namespace

Suite generate_suite(const SuiteParams& params) {
    if (params.min_size < 1 || params.max_size < params.min_size || params.max_size > kMaxExprSize) {
        throw ConfigError("suite sizes must satisfy 1 <= min <= max <= " + std::to_string(kMaxExprSize));
    }
    if (params.min_vars < 1 || params.max_vars < params.min_vars) throw ConfigError("bad suite variable range");
    if (params.per_cell < 0 || params.n < 1) throw ConfigError("bad suite cell or example count");

    Suite suite;
    suite.params = params;
    for (int s = params.min_size; s <= params.max_size; ++s) {
        for (int k = params.min_vars; k <= params.max_vars; ++k) {
            std::optional<CountTable> table;
            try {
                table = CountTable::build(k, s);
            } catch (const CapacityError& e) {
                suite.skipped_cells.push_back("size=" + std::to_string(s) + " vars=" + std::to_string(k) + ": " +
                                              e.what());
                continue;
            }
            std::mt19937_64 rng(cell_seed(params.seed, s, k));
            for (int r = 0; r < params.per_cell; ++r) {
                RpnExpr truth = sample_uniform(s, *table, rng);
                const auto inputs = distinct_inputs(params.n, k, params.width, rng);
                Specification spec = Specification::from_target(truth, k, params.width, inputs);
                std::string id = "s" + std::to_string(s) + "_k" + std::to_string(k) + "_" + std::to_string(r);
                suite.instances.push_back(
                    make_instance(std::move(id), s, k, std::move(truth), std::move(spec), params.seed));
            }
        }
    }
    return suite;
}

void write_suite(std::ostream& out, const Suite& suite) {
    for (const BenchInstance& inst : suite.instances) {
        nlohmann::ordered_json rec;
        rec["id"] = inst.id;
        rec["k"] = inst.spec.k();
        rec["w"] = inst.spec.width().bits();
        rec["gen_size"] = inst.gen_size;
        rec["expr"] = to_infix(inst.ground_truth);
        rec["pairs"] = pairs_to_json(inst.spec);
        rec["seed"] = std::to_string(inst.seed);
        rec["generator"] = kGeneratorId;
        out << rec.dump() << '\n';
    }
}

std::vector<BenchInstance> read_suite(std::istream& in) {
    std::vector<BenchInstance> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto rec = nlohmann::json::parse(line);
            Specification spec = spec_from_json(rec);
            RpnExpr truth = parse_infix(rec.at("expr").get<std::string>(), spec.k());
            const int gen_size = rec.at("gen_size").get<int>();
            const std::uint64_t seed = std::stoull(rec.value("seed", std::string("0")));
            if (!check(truth, spec)) throw FormatError("ground truth does not satisfy its pairs");
            out.push_back(make_instance(rec.at("id").get<std::string>(), gen_size, spec.k(), std::move(truth),
                                        std::move(spec), seed));
        } catch (const nlohmann::json::exception& e) {
            throw FormatError("suite line " + std::to_string(line_no) + ": " + e.what());
        } catch (const Error& e) {
            throw FormatError("suite line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

Normalized normalize(const BenchInstance& instance, const std::optional<RpnExpr>& solver_output) {
    const RpnExpr* best = &instance.ground_truth;
    bool upper_bound = true;
    if (solver_output && solver_output->size() >= 1) {
        bool sound = false;
        try {
            sound = check(*solver_output, instance.spec);
        } catch (const Error&) {
            sound = false;
        }
        if (sound) {
            upper_bound = false;
            if (solver_output->size() < best->size()) best = &*solver_output;
        }
    }
    return {best->size(), max_var_index(best->view()) + 1, upper_bound};
}

RunRecord run_one(const BenchInstance& instance, const std::string& solver, const RunOptions& options, int repeat) {
    RunRecord rec;
    rec.instance = instance.id;
    rec.solver = solver;
    rec.repeat = repeat;
    const int bound = options.size_bound > 0 ? options.size_bound : instance.gen_size;
    const auto budget = std::chrono::duration<double>(options.timeout_seconds);
    try {
        SynthesisOutcome outcome;
        if (solver == kSolverSimba || solver == kSolverShuffled) {
            const CountTable table = CountTable::build(instance.spec.k(), bound);
            EngineConfig cfg;
            cfg.size_bound = bound;
            cfg.mode = solver == kSolverSimba ? EnumerationMode::Local : EnumerationMode::Shuffled;
            cfg.workers = options.workers;
            cfg.time_budget = budget;
            outcome = synthesize(instance.spec, table, cfg);
        } else if (solver == kSolverBaseline) {
            BaselineConfig cfg;
            cfg.size_bound = bound;
            cfg.memory_budget = options.memory_budget;
            cfg.time_budget = budget;
            outcome = run_baseline(instance.spec, cfg).outcome;
        } else {
            throw ConfigError("unknown solver '" + solver + "'");
        }
        rec.status = to_string(outcome.status);
        rec.millis = outcome.total_millis;
        if (outcome.status == Status::Found) {
            if (!outcome.expr || !check(*outcome.expr, instance.spec)) {
                rec.status = "error";
            } else {
                rec.size = outcome.size;
                rec.expr = outcome.expr;
            }
        }
    } catch (const std::exception&) {
        rec.status = "error";
    }
    return rec;
}

std::vector<RunRecord> run_suite(std::vector<BenchInstance>& instances, const RunOptions& options,
                                 const std::function<void(const RunRecord&)>& sink) {
    std::vector<std::vector<RunRecord>> per_instance(instances.size());
    std::mutex sink_mutex;
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t i = next++; i < instances.size(); i = next++) {
            // Repeats of one instance run back to back on this worker.
            for (const std::string& solver : options.solvers) {
                for (int r = 0; r < options.repeats; ++r) {
                    RunRecord rec = run_one(instances[i], solver, options, r);
                    if (sink) {
                        std::lock_guard lock(sink_mutex);
                        sink(rec);
                    }
                    per_instance[i].push_back(std::move(rec));
                }
            }
        }
    };
    const unsigned jobs = std::max(1u, options.jobs);
    if (jobs == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work);
    }

    std::vector<RunRecord> all;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        std::optional<RpnExpr> smallest;
        for (RunRecord& rec : per_instance[i]) {
            if (rec.expr && (!smallest || rec.expr->size() < smallest->size())) smallest = rec.expr;
        }
        const Normalized labels = normalize(instances[i], smallest);
        instances[i].norm_size = labels.size;
        instances[i].norm_vars = labels.vars;
        instances[i].norm_upper_bound = labels.upper_bound;
        for (RunRecord& rec : per_instance[i]) all.push_back(std::move(rec));
    }
    return all;
}

std::string records_csv_header() { return "instance,solver,status,size,millis,repeat"; }

std::string record_csv_row(const RunRecord& r) {
    char millis[32];
    std::snprintf(millis, sizeof millis, "%.3f", r.millis);
    return r.instance + "," + r.solver + "," + r.status + "," + std::to_string(r.size) + "," + millis + "," +
           std::to_string(r.repeat);
}

std::vector<double> default_thresholds() {
    return {0.001, 0.01, 0.1, 0.5, 1, 2, 5, 10, 20, 30, 60};
}

namespace {

struct SolverView {
    int repeats = 0;
    // instance -> per-repeat (found, seconds)
    std::map<std::string, std::vector<std::pair<bool, double>>> runs;
};

double median(std::vector<double> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string fmt(double v, int digits = 3) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

}  // namespace

SuiteSummary summarize(const std::vector<BenchInstance>& instances, const std::vector<RunRecord>& records,
                       const std::vector<double>& thresholds_seconds) {
    std::vector<std::string> solver_order;
    std::map<std::string, SolverView> views;
    for (const RunRecord& r : records) {
        if (!views.count(r.solver)) solver_order.push_back(r.solver);
        SolverView& v = views[r.solver];
        auto& runs = v.runs[r.instance];
        if (static_cast<int>(runs.size()) <= r.repeat) runs.resize(r.repeat + 1, {false, 0.0});
        runs[r.repeat] = {r.status == "found", r.millis / 1000.0};
        v.repeats = std::max(v.repeats, r.repeat + 1);
    }

    auto solved_time = [&](const SolverView& v, const std::string& id) -> std::optional<double> {
        auto it = v.runs.find(id);
        if (it == v.runs.end() || it->second.empty()) return std::nullopt;
        double sum = 0;
        for (const auto& [found, secs] : it->second) {
            if (!found) return std::nullopt;
            sum += secs;
        }
        return sum / static_cast<double>(it->second.size());
    };

    SuiteSummary out;
    {
        std::ostringstream csv;
        csv << "solver,threshold_s,mean_solved,std_solved\n";
        for (const std::string& solver : solver_order) {
            const SolverView& v = views[solver];
            for (double t : thresholds_seconds) {
                std::vector<double> counts(v.repeats, 0.0);
                for (const auto& [id, runs] : v.runs) {
                    for (std::size_t r = 0; r < runs.size(); ++r) {
                        if (runs[r].first && runs[r].second <= t) counts[r] += 1;
                    }
                }
                double mean = 0;
                for (double c : counts) mean += c;
                mean /= std::max<std::size_t>(1, counts.size());
                double var = 0;
                for (double c : counts) var += (c - mean) * (c - mean);
                var /= std::max<std::size_t>(1, counts.size());
                csv << solver << ',' << fmt(t) << ',' << fmt(mean, 2) << ',' << fmt(std::sqrt(var), 2) << '\n';
            }
        }
        out.thresholds_csv = csv.str();
    }

    auto grouped = [&](auto key_of, const char* key_name) {
        std::ostringstream csv;
        csv << key_name << ",solver,instances,solved,percent\n";
        std::map<int, std::vector<const BenchInstance*>> groups;
        for (const BenchInstance& inst : instances) groups[key_of(inst)].push_back(&inst);
        for (const auto& [key, members] : groups) {
            for (const std::string& solver : solver_order) {
                int solved = 0;
                for (const BenchInstance* inst : members) solved += solved_time(views[solver], inst->id) ? 1 : 0;
                csv << key << ',' << solver << ',' << members.size() << ',' << solved << ','
                    << fmt(100.0 * solved / static_cast<double>(members.size()), 1) << '\n';
            }
        }
        return csv.str();
    };
    out.per_size_csv = grouped([](const BenchInstance& i) { return i.norm_size; }, "size");
    out.per_vars_csv = grouped([](const BenchInstance& i) { return i.norm_vars; }, "vars");

    {
        std::ostringstream csv;
        csv << "solver,versus,common,faster_percent,median_speedup\n";
        for (const std::string& a : solver_order) {
            for (const std::string& b : solver_order) {
                if (a == b) continue;
                std::vector<double> speedups;
                int faster = 0;
                for (const BenchInstance& inst : instances) {
                    const auto ta = solved_time(views[a], inst.id);
                    const auto tb = solved_time(views[b], inst.id);
                    if (!ta || !tb) continue;
                    if (*ta < *tb) ++faster;
                    speedups.push_back(*tb / std::max(*ta, 1e-9));
                }
                const double pct = speedups.empty() ? 0.0 : 100.0 * faster / static_cast<double>(speedups.size());
                csv << a << ',' << b << ',' << speedups.size() << ',' << fmt(pct, 1) << ','
                    << fmt(median(speedups), 3) << '\n';
            }
        }
        out.head_to_head_csv = csv.str();
    }
    return out;
}

}  // namespace mbasynth
