// Acceptance checks: one PASS/FAIL line per criterion, plus measured
// figures. Exit status is the number of failing gating criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mbasynth/baseline.hpp"
#include "mbasynth/bench.hpp"
#include "mbasynth/codec.hpp"
#include "mbasynth/counting.hpp"
#include "mbasynth/engine.hpp"
#include "mbasynth/text.hpp"
#include "oracle.hpp"

using namespace mbasynth;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Verdict {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const char* title, const Verdict& v, bool gating = true) {
    std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << id << ' ' << title << (gating ? "" : " (non-gating)") << ": "
              << v.detail << std::endl;
    if (!v.pass && gating) ++failures;
}

// Published cumulative counts (k, size, #MBA).
struct MbaCell {
    int k;
    int s;
    u128 value;
};

const std::vector<MbaCell>& published_counts() {
    static const std::vector<MbaCell> cells = [] {
        const std::vector<std::pair<int, std::vector<unsigned long long>>> rows = {
            {3, {9, 75, 333, 2451, 14877, 121179, 802881, 6298419, 45635841, 366816891, 2757233061ull}},
            {4, {12, 124, 572, 4988, 32636, 311932, 2243196, 20140668, 161176188, 1475205756, 12299156092ull}},
            {5, {15, 185, 875, 8805, 60715, 663785, 5062975, 50895805, 438822815, 4472457185ull}},
            {6, {18, 258, 1242, 14154, 101466, 1246650, 9941850, 110265882, 1007929818, 11272896474ull}},
            {7, {21, 343, 1673, 21287, 157241, 2142679, 17695293, 214233831, 2053008573ull}},
            {8, {24, 440, 2168, 30456, 230392, 3446264, 29274616, 383703544, 3823512056ull}},
        };
        std::vector<MbaCell> out;
        for (const auto& [k, values] : rows)
            for (std::size_t i = 0; i < values.size(); ++i) out.push_back({k, static_cast<int>(i) + 2, values[i]});
        return out;
    }();
    return cells;
}

// Published cache rows (k, size, entries, memory cell).
struct CacheCell {
    int k;
    int s;
    std::uint64_t entries;
    const char* mem;
};

const std::vector<CacheCell> kCacheCells = {
    {3, 2, 9, "<1 MB"},        {3, 3, 38, "<1 MB"},          {3, 4, 71, "<1 MB"},
    {3, 5, 554, "<1 MB"},      {3, 6, 2112, "<1 MB"},        {3, 7, 21981, "1.4 MB"},
    {3, 8, 97071, "6.2 MB"},   {3, 9, 756167, "48.4 MB"},    {3, 10, 4079306, "261.1 MB"},
    {3, 11, 30968139, "2.0 GB"},
    {4, 2, 12, "<1 MB"},       {4, 3, 65, "<1 MB"},          {4, 4, 114, "<1 MB"},
    {4, 5, 1051, "<1 MB"},     {4, 6, 4086, "<1 MB"},        {4, 7, 55253, "3.5 MB"},
    {4, 8, 244245, "15.6 MB"}, {4, 9, 2298267, "147.1 MB"},  {4, 10, 13036731, "834.4 MB"},
    {4, 11, 31589728, "2.0 GB"},
    {5, 2, 15, "<1 MB"},       {5, 3, 99, "<1 MB"},          {5, 4, 166, "<1 MB"},
    {5, 5, 1749, "<1 MB"},     {5, 6, 6874, "<1 MB"},        {5, 7, 115080, "7.4 MB"},
    {5, 8, 504522, "32.3 MB"}, {5, 9, 5547921, "355.1 MB"},  {5, 10, 32523385, "2.1 GB"},
    {6, 2, 18, "<1 MB"},       {6, 3, 140, "<1 MB"},         {6, 4, 227, "<1 MB"},
    {6, 5, 2676, "<1 MB"},     {6, 6, 10586, "<1 MB"},       {6, 7, 212216, "13.6 MB"},
    {6, 8, 919469, "58.8 MB"}, {6, 9, 11546211, "739.0 MB"}, {6, 10, 32230181, "2.1 GB"},
    {7, 2, 21, "<1 MB"},       {7, 3, 188, "<1 MB"},         {7, 4, 297, "<1 MB"},
    {7, 5, 3860, "<1 MB"},     {7, 6, 15332, "<1 MB"},       {7, 7, 359149, "23.0 MB"},
    {7, 8, 1536260, "98.3 MB"}, {7, 9, 21655933, "1.4 GB"},
    {8, 2, 24, "<1 MB"},       {8, 3, 243, "<1 MB"},         {8, 4, 376, "<1 MB"},
    {8, 5, 5329, "<1 MB"},     {8, 6, 21222, "1.4 MB"},      {8, 7, 570096, "36.5 MB"},
    {8, 8, 2407325, "154.1 MB"}, {8, 9, 33244298, "2.1 GB"},
};

Specification random_spec(int k, int n, std::mt19937_64& rng) {
    std::vector<IoPair> pairs;
    std::set<std::vector<Word>> seen;
    while (static_cast<int>(pairs.size()) < n) {
        IoPair p;
        for (int v = 0; v < k; ++v) p.input.push_back(rng() & 0xFFFFFFFF);
        if (!seen.insert(p.input).second) continue;
        p.output = rng() & 0xFFFFFFFF;
        pairs.push_back(std::move(p));
    }
    return Specification(k, BitWidth(32), pairs);
}

std::string fmt(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// ---------------------------------------------------------------------------

Verdict counting_fidelity() {
    const auto t0 = Clock::now();
    int ok = 0;
    std::ostringstream bad;
    for (const MbaCell& c : published_counts()) {
        const CountTable t = CountTable::build(c.k, c.s);
        if (t.cumulative_total(c.s) == c.value) ++ok;
        else bad << " k=" << c.k << ",s=" << c.s;
    }
    const double secs = seconds_since(t0);
    const int total = static_cast<int>(published_counts().size());
    return {ok == total && secs < 1.0,
            std::to_string(ok) + "/" + std::to_string(total) + " cells exact in " + fmt(secs * 1000, 3) + " ms" +
                bad.str()};
}

Verdict bijection() {
    const auto t0 = Clock::now();
    std::uint64_t checked = 0;
    for (int k = 1; k <= 3; ++k) {
        const CountTable t = CountTable::build(k, 7);
        for (int s = 1; s <= 7; ++s) {
            std::set<std::vector<Token>, decltype([](const auto& a, const auto& b) {
                         return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                                             [](Token x, Token y) { return x.code() < y.code(); });
                     })>
                distinct;
            const auto n = static_cast<std::uint64_t>(t.total(s));
            for (std::uint64_t r = 0; r < n; ++r) {
                const RpnExpr e = decode(r, s, t);
                if (e.size() != s) return {false, "wrong size at k=" + std::to_string(k) + " s=" + std::to_string(s)};
                validate(e.view(), k);
                const std::vector<int> sub = subtree_sizes(e.view());
                for (int i = 0; i < s; ++i) {
                    const Token tok = e.tokens[i];
                    if (!tok.is_op() || is_unary(tok.op())) continue;
                    const int right = sub[i - 1];
                    const int left = sub[i] - 1 - right;
                    if (is_commutative(tok.op()) && left > right) return {false, "non-canonical decode"};
                }
                if (!(encode(e, t) == Rank{r, s})) return {false, "encode(decode(r)) != r"};
                distinct.insert(e.tokens);
                ++checked;
            }
            if (distinct.size() != n) return {false, "duplicate expressions"};
        }
    }
    return {true, std::to_string(checked) + " ranks decoded, distinct, canonical and re-encoded in " +
                      fmt(seconds_since(t0)) + " s"};
}

struct OracleInstance {
    Specification spec;
    int expected;
};

std::vector<OracleInstance> oracle_instances() {
    std::mt19937_64 rng(20240601);
    std::vector<OracleInstance> out;
    for (int i = 0; i < 100; ++i) {
        const int k = 1 + static_cast<int>(rng() % 3);
        const int s = 1 + static_cast<int>(rng() % 6);
        const CountTable t = CountTable::build(k, s);
        const RpnExpr truth = sample_uniform(s, t, rng);
        std::vector<std::vector<Word>> in;
        std::set<std::vector<Word>> seen;
        while (in.size() < 16) {
            std::vector<Word> row(k);
            for (Word& v : row) v = rng() & 0xFFFFFFFF;
            if (seen.insert(row).second) in.push_back(row);
        }
        Specification spec = Specification::from_target(truth, k, BitWidth(32), in);
        const std::vector<Word> outs(spec.outputs().begin(), spec.outputs().end());
        const int expected = *oracle::minimal_size(k, in, outs, 0xFFFFFFFF, s);
        out.push_back({std::move(spec), expected});
    }
    return out;
}

Verdict oracle_minimality(const std::vector<OracleInstance>& cases) {
    int ok = 0;
    for (const OracleInstance& c : cases) {
        const CountTable t = CountTable::build(c.spec.k(), 6);
        EngineConfig cfg;
        cfg.size_bound = 6;
        const SynthesisOutcome o = synthesize(c.spec, t, cfg);
        if (o.status == Status::Found && o.size == c.expected && check(*o.expr, c.spec)) ++ok;
    }
    return {ok == static_cast<int>(cases.size()),
            std::to_string(ok) + "/" + std::to_string(cases.size()) + " minimal sizes match the naive enumerator"};
}

bool shares_left(const CountTable& t, u128 r, int s, int j) {
    const RpnExpr a = decode(r, s, t);
    const RpnExpr b = decode(r + 1, s, t);
    return std::equal(a.tokens.begin(), a.tokens.begin() + j, b.tokens.begin());
}

Verdict locality() {
    std::uint64_t pairs = 0;
    std::uint64_t good = 0;
    for (int k = 1; k <= 3; ++k) {
        const CountTable t = CountTable::build(k, 7);
        for (int s = 3; s <= 7; ++s)
            for (Op op : kAllOps) {
                if (is_unary(op)) continue;
                for (int j = 1; j <= split_last(s, op); ++j) {
                    const u128 begin = t.operator_offset(s, op) + t.split_offset(s, j);
                    const u128 end = begin + t.split_count(s, j);
                    // Left subtree changes exactly when the right index wraps.
                    const u128 right_count = t.total(s - 1 - j);
                    for (u128 r = begin; r + 1 < end; ++r) {
                        if ((r + 1 - begin) % right_count == 0) continue;
                        ++pairs;
                        good += shares_left(t, r, s, j);
                    }
                }
            }
    }
    const std::uint64_t exhaustive = pairs;
    const CountTable t = CountTable::build(5, 10);
    std::mt19937_64 rng(5);
    std::uint64_t sampled = 0;
    while (sampled < 100000) {
        const u128 r = uniform_below(t.total(10) - 1, rng);
        int slot = kNumOps - 1;
        while (t.operator_offset(10, static_cast<Op>(slot)) > r) --slot;
        const Op op = static_cast<Op>(slot);
        if (is_unary(op)) continue;
        const u128 local = r - t.operator_offset(10, op);
        int j = 1;
        while (j < split_last(10, op) && t.split_offset(10, j + 1) <= local) ++j;
        const u128 within = local - t.split_offset(10, j);
        if (within + 1 >= t.split_count(10, j)) continue;
        if ((within + 1) % t.total(10 - 1 - j) == 0) continue;
        ++sampled;
        ++pairs;
        good += shares_left(t, r, 10, j);
    }
    return {good == pairs, std::to_string(good) + "/" + std::to_string(pairs) + " consecutive pairs share the left subtree (" +
                               std::to_string(exhaustive) + " exhaustive, " + std::to_string(sampled) + " sampled)"};
}

Verdict ablation(const std::vector<OracleInstance>& cases) {
    int same = 0;
    for (const OracleInstance& c : cases) {
        const CountTable t = CountTable::build(c.spec.k(), 6);
        EngineConfig cfg;
        cfg.size_bound = 6;
        const SynthesisOutcome a = synthesize(c.spec, t, cfg);
        cfg.mode = EnumerationMode::Shuffled;
        const SynthesisOutcome b = synthesize(c.spec, t, cfg);
        same += a.status == b.status && a.size == b.size && a.rank == b.rank && (!b.expr || check(*b.expr, c.spec));
    }
    // Timing on a full sweep where neither mode can stop early.
    std::mt19937_64 rng(77);
    const Specification spec = random_spec(4, 16, rng);
    const CountTable t = CountTable::build(4, 9);
    EngineConfig cfg;
    cfg.size_bound = 9;
    const SynthesisOutcome local = synthesize(spec, t, cfg);
    cfg.mode = EnumerationMode::Shuffled;
    const SynthesisOutcome shuffled = synthesize(spec, t, cfg);
    const double ratio = shuffled.total_millis / std::max(local.total_millis, 1e-9);
    return {same == static_cast<int>(cases.size()) && local.status == shuffled.status,
            std::to_string(same) + "/" + std::to_string(cases.size()) +
                " identical (status, size, rank); k=4 sweep to size 9: local " + fmt(local.total_millis / 1000) +
                " s, shuffled " + fmt(shuffled.total_millis / 1000) + " s, shuffled/local = " + fmt(ratio) + "x"};
}

bool display_consistent(std::uint64_t bytes, const std::string& cell) {
    if (cell == "<1 MB") return bytes < 1000000;
    const double value = std::stod(cell);
    const double unit = cell.find("GB") != std::string::npos ? 1e9 : 1e6;
    // Any true value that prints as `cell` lies within half a display digit.
    const double lo = (value - 0.05) * unit * 0.98;
    const double hi = (value + 0.05) * unit * 1.02;
    return bytes >= lo && bytes <= hi;
}

Verdict baseline_memory() {
    std::ostringstream detail;
    bool pass = true;

    int model_ok = 0;
    int exact_text = 0;
    double worst = 0;
    for (const CacheCell& c : kCacheCells) {
        const std::uint64_t bytes = modeled_memory_bytes(c.entries, 16, BitWidth(32));
        if (display_consistent(bytes, c.mem)) ++model_ok;
        if (format_memory(bytes) == c.mem) ++exact_text;
        if (std::string(c.mem) != "<1 MB") {
            const double unit = std::string(c.mem).find("GB") != std::string::npos ? 1e9 : 1e6;
            worst = std::max(worst, std::abs(bytes / (std::stod(c.mem) * unit) - 1));
        }
    }
    pass &= model_ok == static_cast<int>(kCacheCells.size());
    detail << "memory model " << model_ok << "/" << kCacheCells.size() << " cells within 2% (" << exact_text
           << " print identically, largest raw gap " << fmt(worst * 100, 1) << "% from display rounding)";

    std::mt19937_64 rng(2025);
    int small_ok = 0;
    for (int k = 3; k <= 8; ++k) {
        BaselineConfig cfg;
        cfg.size_bound = 2;
        const BaselineResult r = run_baseline(random_spec(k, 16, rng), cfg);
        small_ok += r.stats.per_size.size() == 2 && r.stats.per_size[1].stored == static_cast<std::uint64_t>(3 * k);
    }
    pass &= small_ok == 6;
    detail << "; size<=2 cache = 3k for " << small_ok << "/6 k values";

    const Specification spec = random_spec(5, 16, rng);
    const CountTable table = CountTable::build(5, 11);
    EngineConfig ecfg;
    ecfg.size_bound = 11;
    const SynthesisOutcome sweep = synthesize(spec, table, ecfg);
    std::uint64_t rss_lo = ~std::uint64_t{0};
    std::uint64_t rss_hi = 0;
    for (const SizeStats& st : sweep.per_size) {
        rss_lo = std::min(rss_lo, st.rss_bytes);
        rss_hi = std::max(rss_hi, st.rss_bytes);
    }
    const bool flat = sweep.status == Status::NotFound && rss_hi - rss_lo < (std::uint64_t{16} << 20);
    pass &= flat;
    detail << "; engine k=5 sweep to size 11 " << to_string(sweep.status) << " in " << fmt(sweep.total_millis / 1000, 1)
           << " s, RSS " << fmt(rss_lo / 1e6, 1) << "-" << fmt(rss_hi / 1e6, 1) << " MB";

    BaselineConfig bcfg;
    bcfg.size_bound = 11;
    bcfg.memory_budget = 2'500'000'000;
    const BaselineResult base = run_baseline(spec, bcfg);
    const bool oom11 = base.outcome.status == Status::OutOfMemory && base.stats.oom_at == 11;
    pass &= oom11;
    detail << "; baseline k=5 2.5 GB: " << to_string(base.outcome.status);
    if (base.stats.oom_at) detail << " at size " << *base.stats.oom_at;
    if (base.stats.per_size.size() >= 10) {
        const CacheSizeStats& s10 = base.stats.per_size[9];
        detail << " (size 10 cache " << to_grouped_string(s10.stored) << " entries, " << format_memory(s10.memory_bytes)
               << ")";
    }
    return {pass, detail.str()};
}

Verdict throughput() {
    std::mt19937_64 rng(9);
    const Specification spec = random_spec(3, 16, rng);
    const CountTable t = CountTable::build(3, 9);
    EngineConfig cfg;
    cfg.size_bound = 9;
    const auto t0 = Clock::now();
    const SynthesisOutcome o = synthesize(spec, t, cfg);
    const double secs = seconds_since(t0);
    const RunReport rep = run_stats(o);
    const bool ok = o.status == Status::NotFound && rep.total_candidates == t.cumulative_total(9);
    return {ok, to_grouped_string(rep.total_candidates) + " candidates (table: " +
                    to_grouped_string(t.cumulative_total(9)) + ") in " + fmt(secs, 3) + " s, " +
                    fmt(rep.per_second / 1e6, 1) + " M candidates/s"};
}

Verdict suite_shape() {
    const Suite suite = generate_suite(SuiteParams{});
    int good = 0;
    for (const BenchInstance& inst : suite.instances) {
        std::set<std::vector<Word>> inputs;
        bool fits = true;
        for (const IoPair& p : inst.spec.pairs()) {
            inputs.insert(p.input);
            for (Word w : p.input) fits &= w <= 0xFFFFFFFF;
        }
        good += inst.spec.n() == 16 && inputs.size() == 16 && fits && inst.spec.width().bits() == 32 &&
                check(inst.ground_truth, inst.spec);
    }
    const RpnExpr truth = parse_infix("x2 + (x0 & x0)", 4);
    std::vector<std::vector<Word>> in;
    for (int i = 0; i < 16; ++i) {
        std::vector<Word> row;
        for (int v = 0; v < 4; ++v) row.push_back(splitmix64(4 * i + v) & 0xFFFFFFFF);
        in.push_back(row);
    }
    BenchInstance example{"example", 5, 4, truth, Specification::from_target(truth, 4, BitWidth(32), in), 0};
    const Normalized n = normalize(example, parse_infix("x2 + x0", 4));
    const bool ok = suite.instances.size() == 2340 && good == 2340 && n.size == 3 && n.vars == 3;
    return {ok, std::to_string(suite.instances.size()) + " instances, " + std::to_string(good) +
                    " with 16 distinct 32-bit inputs; x2 + (x0 & x0) normalizes to (" + std::to_string(n.size) + ", " +
                    std::to_string(n.vars) + ")"};
}

}  // namespace

int main() {
    report(1, "counting-table fidelity", counting_fidelity());
    report(2, "bijection correctness", bijection());
    const std::vector<OracleInstance> cases = oracle_instances();
    report(3, "oracle minimality", oracle_minimality(cases));
    report(4, "locality", locality());
    report(5, "ablation equivalence", ablation(cases));
    report(6, "baseline memory model", baseline_memory());
    report(7, "throughput smoke test", throughput(), false);
    report(8, "suite shape", suite_shape());
    std::cout << (failures == 0 ? "all gating criteria pass" : std::to_string(failures) + " gating criteria fail")
              << std::endl;
    return failures;
}
