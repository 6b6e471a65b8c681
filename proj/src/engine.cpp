#include "mbasynth/engine.hpp"

#include <array>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

#include "json.hpp"

#include "mbasynth/error.hpp"
#include "mbasynth/text.hpp"

namespace mbasynth {

std::string to_string(EnumerationMode mode) { return mode == EnumerationMode::Local ? "local" : "shuffled"; }

std::string to_string(Status status) {
    switch (status) {
        case Status::Found: return "found";
        case Status::NotFound: return "not_found";
        case Status::TimedOut: return "timed_out";
        case Status::OutOfMemory: return "oom";
    }
    return "?";
}

std::uint64_t resident_set_bytes() {
    std::FILE* f = std::fopen("/proc/self/statm", "r");
    if (f == nullptr) return 0;
    unsigned long long total = 0;
    unsigned long long resident = 0;
    const int got = std::fscanf(f, "%llu %llu", &total, &resident);
    std::fclose(f);
    if (got != 2) return 0;
    return resident * static_cast<std::uint64_t>(sysconf(_SC_PAGESIZE));
}

ShuffleParams BlockPermutation::pick(u128 count) {
    u128 m = count;
    while (gcd(ShuffleParams::kMultiplier, m) != 1) ++m;
    return ShuffleParams(m);
}

BlockPermutation::BlockPermutation(u128 count) : count_(count), params_(pick(count)) {}

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Single shared solution slot; keeps the smallest proposed rank.
class SolutionCell {
public:
    void propose(u128 rank, const Token* tokens, int size) {
        std::lock_guard lock(mutex_);
        if (has_ && rank >= rank_) return;
        has_ = true;
        rank_ = rank;
        tokens_.assign(tokens, tokens + size);
    }
    bool has() {
        std::lock_guard lock(mutex_);
        return has_;
    }
    u128 rank() const { return rank_; }
    const std::vector<Token>& tokens() const { return tokens_; }

private:
    std::mutex mutex_;
    bool has_ = false;
    u128 rank_ = 0;
    std::vector<Token> tokens_;
};

inline bool matches(const Token* expr, int size, const Specification& spec) {
    const std::span<const Token> view(expr, static_cast<std::size_t>(size));
    const Word* inputs = spec.inputs().data();
    const Word* outputs = spec.outputs().data();
    const std::size_t k = static_cast<std::size_t>(spec.k());
    const Word mask = spec.width().mask();
    for (std::size_t i = 0; i < spec.n(); ++i) {
        if (evaluate_unchecked(view, inputs + i * k, mask) != outputs[i]) return false;
    }
    return true;
}

template <typename U>
void scan_chunk(const Specification& spec, const CountTable& table, int s, u128 offset, u128 chunk_begin,
                std::uint64_t length, const BlockPermutation* perm, ParallelBackend& backend,
                SolutionCell& cell) {
    const U base = static_cast<U>(offset);
    backend.run(length, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
        std::array<Token, kMaxExprSize> buffer;
        for (std::uint64_t t = begin; t < end; ++t) {
            const u128 index = chunk_begin + t;
            const U local = perm != nullptr ? static_cast<U>((*perm)(index)) : static_cast<U>(index);
            const U rank = base + local;
            detail::decode_unchecked<U>(table, rank, s, buffer.data());
            if (!matches(buffer.data(), s, spec)) continue;
            cell.propose(rank, buffer.data(), s);
            // Later identity-ordered ranks in this range can only be larger.
            if (perm == nullptr) return;
        }
    });
}

struct Block {
    u128 offset;
    u128 count;
};

std::vector<Block> blocks_at(const CountTable& table, int s) {
    if (s == 1) return {{0, table.total(1)}};
    std::vector<Block> out;
    for (Op op : kAllOps) out.push_back({table.operator_offset(s, op), table.at(s, op)});
    return out;
}

}  // namespace

SynthesisOutcome synthesize(const Specification& spec, const CountTable& table, const EngineConfig& cfg,
                            ParallelBackend& backend) {
    if (table.k() != spec.k()) {
        throw ConfigError("table built for k=" + std::to_string(table.k()) + " but specification has k=" +
                          std::to_string(spec.k()));
    }
    if (cfg.size_bound < 1) throw ConfigError("size bound must be at least 1");
    if (cfg.size_bound > table.max_size() || cfg.size_bound > kMaxExprSize) {
        throw ConfigError("size bound " + std::to_string(cfg.size_bound) + " exceeds table extent " +
                          std::to_string(std::min(table.max_size(), kMaxExprSize)));
    }
    if (cfg.chunk == 0) throw ConfigError("chunk must be at least 1");

    const auto start = Clock::now();
    SynthesisOutcome outcome;
    SolutionCell cell;

    auto out_of_time = [&] { return cfg.time_budget && Clock::now() - start >= *cfg.time_budget; };

    auto finish_found = [&](int s) {
        RpnExpr found(cell.tokens());
        if (!check(found, spec)) {
            throw std::logic_error("parallel scan proposed an expression that fails the specification");
        }
        outcome.status = Status::Found;
        outcome.expr = std::move(found);
        outcome.size = s;
        outcome.rank = cell.rank();
        outcome.total_millis = millis_since(start);
    };
    // Identity order visits ranks ascending, so the first chunk with a hit
    // already holds the block minimum. Shuffled order must finish the block.
    const bool stop_at_chunk = cfg.mode == EnumerationMode::Local;

    for (int s = 1; s <= cfg.size_bound; ++s) {
        const auto size_start = Clock::now();
        outcome.per_size.push_back({s, 0, 0, 0});
        SizeStats& stats = outcome.per_size.back();
        const bool narrow = table.fits_u64(s);
        auto close_size = [&] {
            stats.millis = millis_since(size_start);
            stats.rss_bytes = resident_set_bytes();
        };

        for (const Block& block : blocks_at(table, s)) {
            if (block.count == 0) continue;
            std::optional<BlockPermutation> perm;
            if (cfg.mode == EnumerationMode::Shuffled) perm.emplace(block.count);

            for (u128 chunk_begin = 0; chunk_begin < block.count; chunk_begin += cfg.chunk) {
                if (out_of_time()) {
                    close_size();
                    // A hit from a partially scanned block is still size-minimal.
                    if (cell.has()) {
                        finish_found(s);
                        return outcome;
                    }
                    outcome.status = Status::TimedOut;
                    outcome.total_millis = millis_since(start);
                    return outcome;
                }
                const u128 remaining = block.count - chunk_begin;
                const std::uint64_t length =
                    remaining < cfg.chunk ? static_cast<std::uint64_t>(remaining) : cfg.chunk;
                const BlockPermutation* p = perm ? &*perm : nullptr;
                if (narrow) {
                    scan_chunk<std::uint64_t>(spec, table, s, block.offset, chunk_begin, length, p, backend, cell);
                } else {
                    scan_chunk<u128>(spec, table, s, block.offset, chunk_begin, length, p, backend, cell);
                }
                stats.candidates += length;
                if (stop_at_chunk && cell.has()) break;
            }
            if (cell.has()) {
                close_size();
                finish_found(s);
                return outcome;
            }
        }
        close_size();
    }
    outcome.status = Status::NotFound;
    outcome.total_millis = millis_since(start);
    return outcome;
}

SynthesisOutcome synthesize(const Specification& spec, const CountTable& table, const EngineConfig& cfg) {
    if (cfg.workers == 1) {
        SequentialBackend backend;
        return synthesize(spec, table, cfg, backend);
    }
    ThreadBackend backend(cfg.workers);
    return synthesize(spec, table, cfg, backend);
}

u128 enumerate_all(int s, const CountTable& table, const std::function<void(std::span<const Token>)>& visitor) {
    std::array<Token, kMaxExprSize> buffer;
    const u128 total = table.total(s);
    for (u128 n = 0; n < total; ++n) {
        decode_into(table, n, s, buffer);
        visitor(std::span<const Token>(buffer.data(), static_cast<std::size_t>(s)));
    }
    return total;
}

RunReport run_stats(const SynthesisOutcome& outcome) {
    RunReport report;
    report.status = outcome.status;
    for (const SizeStats& st : outcome.per_size) {
        const double rate = st.millis > 0 ? to_double(st.candidates) / (st.millis / 1000.0) : 0.0;
        report.rows.push_back({st.size, st.candidates, st.millis, rate});
        report.total_candidates += st.candidates;
    }
    report.total_millis = outcome.total_millis;
    report.per_second =
        outcome.total_millis > 0 ? to_double(report.total_candidates) / (outcome.total_millis / 1000.0) : 0.0;
    return report;
}

std::string outcome_json(const SynthesisOutcome& outcome) {
    nlohmann::ordered_json j;
    j["status"] = to_string(outcome.status);
    if (outcome.expr) {
        j["expr"] = to_infix(*outcome.expr);
        j["size"] = outcome.size;
        j["rank"] = to_string(outcome.rank);
    } else {
        j["expr"] = nullptr;
        j["size"] = nullptr;
        j["rank"] = nullptr;
    }
    auto rows = nlohmann::ordered_json::array();
    for (const SizeStats& st : outcome.per_size) {
        nlohmann::ordered_json row;
        row["size"] = st.size;
        if (st.candidates <= UINT64_MAX) {
            row["candidates"] = static_cast<std::uint64_t>(st.candidates);
        } else {
            row["candidates"] = to_string(st.candidates);
        }
        row["millis"] = st.millis;
        rows.push_back(std::move(row));
    }
    j["per_size"] = std::move(rows);
    j["total_millis"] = outcome.total_millis;
    return j.dump();
}

std::string report_text(const RunReport& report) {
    std::ostringstream out;
    out << "size\tcandidates\tmillis\tcandidates_per_second\n";
    char buf[64];
    for (const auto& row : report.rows) {
        std::snprintf(buf, sizeof buf, "%.3f\t%.0f", row.millis, row.per_second);
        out << row.size << '\t' << to_string(row.candidates) << '\t' << buf << '\n';
    }
    std::snprintf(buf, sizeof buf, "%.3f\t%.0f", report.total_millis, report.per_second);
    out << "total\t" << to_string(report.total_candidates) << '\t' << buf << '\n';
    out << "status\t" << to_string(report.status) << '\n';
    return out.str();
}

}  // namespace mbasynth
