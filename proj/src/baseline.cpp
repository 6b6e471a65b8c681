#include "mbasynth/baseline.hpp"

#include <absl/container/flat_hash_set.h>
#include <absl/hash/hash.h>
#include <absl/types/span.h>

#include <array>
#include <cstdio>
#include <deque>
#include <memory>
#include <sstream>

#include "mbasynth/error.hpp"

namespace mbasynth {

std::uint64_t behavior_bytes(std::size_t n, BitWidth width) {
    return (static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(width.bits()) + 7) / 8;
}

namespace {

using Clock = std::chrono::steady_clock;

/// Behavior vectors in fixed-size blocks so growth never copies old data.
template <typename W>
class BehaviorStore {
public:
    static constexpr std::size_t kBlockEntries = std::size_t{1} << 16;

    explicit BehaviorStore(std::size_t n) : n_(n) {}

    std::uint32_t size() const { return count_; }
    const W* at(std::uint32_t id) const { return blocks_[id / kBlockEntries].get() + (id % kBlockEntries) * n_; }

    std::uint32_t push(const W* words) {
        if (count_ % kBlockEntries == 0) blocks_.push_back(std::make_unique<W[]>(kBlockEntries * n_));
        W* dst = blocks_.back().get() + (count_ % kBlockEntries) * n_;
        std::copy(words, words + n_, dst);
        return count_++;
    }

    std::size_t n() const { return n_; }

private:
    std::size_t n_;
    std::uint32_t count_ = 0;
    std::vector<std::unique_ptr<W[]>> blocks_;
};

/// Lookup key for a vector not (yet) in the store.
template <typename W>
struct Probe {
    const W* words;
};

template <typename W>
struct BehaviorHash {
    using is_transparent = void;
    const BehaviorStore<W>* store;
    std::size_t hash(const W* w) const { return absl::Hash<absl::Span<const W>>{}(absl::Span<const W>(w, store->n())); }
    std::size_t operator()(std::uint32_t id) const { return hash(store->at(id)); }
    std::size_t operator()(Probe<W> p) const { return hash(p.words); }
};

template <typename W>
struct BehaviorEq {
    using is_transparent = void;
    const BehaviorStore<W>* store;
    bool same(const W* a, const W* b) const { return std::equal(a, a + store->n(), b); }
    bool operator()(std::uint32_t a, std::uint32_t b) const { return a == b || same(store->at(a), store->at(b)); }
    bool operator()(std::uint32_t a, Probe<W> b) const { return same(store->at(a), b.words); }
    bool operator()(Probe<W> a, std::uint32_t b) const { return same(a.words, store->at(b)); }
};

/// How a representative was built: a variable, or op over earlier entries.
struct Rep {
    std::uint32_t left;
    std::uint32_t right;
    Token token;
};

template <typename W>
class Enumerator {
public:
    Enumerator(const Specification& spec, const BaselineConfig& cfg)
        : spec_(spec),
          cfg_(cfg),
          n_(spec.n()),
          mask_(static_cast<W>(spec.width().mask())),
          store_(spec.n()),
          index_(0, BehaviorHash<W>{&store_}, BehaviorEq<W>{&store_}),
          target_(spec.n()),
          scratch_(spec.n()),
          table_(CountTable::build(spec.k(), cfg.size_bound)) {
        for (std::size_t i = 0; i < n_; ++i) target_[i] = static_cast<W>(spec.outputs()[i]);
        result_.stats.bytes_per_entry = behavior_bytes(n_, spec.width());
    }

    BaselineResult run() {
        start_ = Clock::now();
        SynthesisOutcome& out = result_.outcome;
        for (int s = 1; s <= cfg_.size_bound; ++s) {
            const auto size_start = Clock::now();
            size_begin_.push_back(store_.size());
            CacheSizeStats row;
            row.size = s;
            row.mba_cumulative = table_.cumulative_total(s);
            candidates_ = 0;

            const Outcome step = s == 1 ? sweep_variables() : sweep_size(s);

            row.stored = store_.size();
            row.candidates = candidates_;
            row.memory_bytes = modeled_memory_bytes(row.stored, n_, spec_.width());
            row.cum_millis = millis(start_);
            row.oom = step == Outcome::OutOfMemory;
            result_.stats.per_size.push_back(row);
            SizeStats engine_row{s, candidates_, millis(size_start), 0};
            out.per_size.push_back(engine_row);

            if (step == Outcome::Found) {
                out.status = Status::Found;
                out.expr = build_expr(found_);
                out.size = s;
                out.rank = 0;
                if (!check(*out.expr, spec_)) throw std::logic_error("baseline produced an unsound expression");
                break;
            }
            if (step == Outcome::OutOfMemory) {
                out.status = Status::OutOfMemory;
                result_.stats.oom_at = s;
                break;
            }
            if (step == Outcome::TimedOut) {
                out.status = Status::TimedOut;
                break;
            }
            out.status = Status::NotFound;
        }
        out.total_millis = millis(start_);
        return std::move(result_);
    }

private:
    enum class Outcome { Continue, Found, OutOfMemory, TimedOut };

    static double millis(Clock::time_point t) {
        return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
    }

    // found_ indexes into pending_ when the winning candidate was not stored.
    Outcome offer(Token token, std::uint32_t left, std::uint32_t right) {
        ++candidates_;
        if ((candidates_ & 0xFFF) == 0 && cfg_.time_budget && Clock::now() - start_ >= *cfg_.time_budget) {
            return Outcome::TimedOut;
        }
        if (std::equal(scratch_.begin(), scratch_.end(), target_.begin())) {
            found_ = Rep{left, right, token};
            return Outcome::Found;
        }
        if (index_.find(Probe<W>{scratch_.data()}) != index_.end()) return Outcome::Continue;
        const std::uint64_t bytes = modeled_memory_bytes(std::uint64_t{store_.size()} + 1, n_, spec_.width());
        if (bytes > cfg_.memory_budget || store_.size() == UINT32_MAX) return Outcome::OutOfMemory;
        const std::uint32_t id = store_.push(scratch_.data());
        reps_.push_back(Rep{left, right, token});
        index_.insert(id);
        return Outcome::Continue;
    }

    Outcome sweep_variables() {
        for (int v = 0; v < spec_.k(); ++v) {
            for (std::size_t i = 0; i < n_; ++i) scratch_[i] = static_cast<W>(spec_.input(i)[v]);
            if (auto r = offer(Token::var(v), 0, 0); r != Outcome::Continue) return r;
        }
        return Outcome::Continue;
    }

    Outcome sweep_size(int s) {
        for (Op op : kAllOps) {
            const Token token = Token::op(op);
            if (is_unary(op)) {
                for (std::uint32_t e = size_begin_[s - 2]; e < size_begin_[s - 1]; ++e) {
                    const W* a = store_.at(e);
                    if (op == Op::Not) {
                        for (std::size_t i = 0; i < n_; ++i) scratch_[i] = static_cast<W>(~a[i]) & mask_;
                    } else {
                        for (std::size_t i = 0; i < n_; ++i) scratch_[i] = static_cast<W>(W{0} - a[i]) & mask_;
                    }
                    if (auto r = offer(token, e, 0); r != Outcome::Continue) return r;
                }
                continue;
            }
            for (int j = 1; j <= split_last(s, op); ++j) {
                const int rsize = s - 1 - j;
                for (std::uint32_t l = size_begin_[j - 1]; l < size_begin_[j]; ++l) {
                    const W* a = store_.at(l);
                    for (std::uint32_t r = size_begin_[rsize - 1]; r < size_begin_[rsize]; ++r) {
                        const W* b = store_.at(r);
                        for (std::size_t i = 0; i < n_; ++i) {
                            scratch_[i] = static_cast<W>(detail::apply_binary(op, a[i], b[i])) & mask_;
                        }
                        if (auto res = offer(token, l, r); res != Outcome::Continue) return res;
                    }
                }
            }
        }
        return Outcome::Continue;
    }

    void emit(const Rep& rep, std::vector<Token>& out) const {
        if (rep.token.is_op()) {
            emit(reps_[rep.left], out);
            if (!is_unary(rep.token.op())) emit(reps_[rep.right], out);
        }
        out.push_back(rep.token);
    }

    RpnExpr build_expr(const Rep& rep) const {
        std::vector<Token> tokens;
        emit(rep, tokens);
        return RpnExpr(std::move(tokens));
    }

    const Specification& spec_;
    const BaselineConfig& cfg_;
    std::size_t n_;
    W mask_;
    BehaviorStore<W> store_;
    absl::flat_hash_set<std::uint32_t, BehaviorHash<W>, BehaviorEq<W>> index_;
    std::deque<Rep> reps_;
    // size_begin_[s-1] = first entry id of size s; entries are appended by size.
    std::vector<std::uint32_t> size_begin_;
    std::vector<W> target_;
    std::vector<W> scratch_;
    CountTable table_;
    std::uint64_t candidates_ = 0;
    Rep found_{};
    Clock::time_point start_;
    BaselineResult result_;
};

}  // namespace

BaselineResult run_baseline(const Specification& spec, const BaselineConfig& cfg) {
    if (cfg.size_bound < 1 || cfg.size_bound > kMaxExprSize) {
        throw ConfigError("size bound must be in 1.." + std::to_string(kMaxExprSize));
    }
    if (spec.width().bits() <= 32) return Enumerator<std::uint32_t>(spec, cfg).run();
    return Enumerator<std::uint64_t>(spec, cfg).run();
}

std::string format_memory(std::uint64_t bytes) {
    char buf[32];
    if (bytes < 1'000'000) return "<1 MB";
    if (bytes < 1'000'000'000) {
        std::snprintf(buf, sizeof buf, "%.1f MB", static_cast<double>(bytes) / 1e6);
    } else {
        std::snprintf(buf, sizeof buf, "%.1f GB", static_cast<double>(bytes) / 1e9);
    }
    return buf;
}

std::string cache_report(const CacheStats& stats) {
    std::ostringstream out;
    out << "Size & #MBA & #VFB cache & VFB mem & % cached & cum. time (s, hardware-dependent)\n";
    char buf[64];
    for (const CacheSizeStats& row : stats.per_size) {
        out << row.size << " & " << to_grouped_string(row.mba_cumulative) << " & ";
        if (row.oom) {
            out << "OOM & OOM & OOM & OOM\n";
            continue;
        }
        std::snprintf(buf, sizeof buf, "%.1f%%", row.cached_percent());
        out << to_grouped_string(row.stored) << " & " << format_memory(row.memory_bytes) << " & " << buf << " & ";
        std::snprintf(buf, sizeof buf, "%.3f", row.cum_millis / 1000.0);
        out << buf << '\n';
    }
    return out.str();
}

std::string cache_report_csv(const CacheStats& stats) {
    std::ostringstream out;
    out << "size,mba,stored,candidates,memory_bytes,cached_percent,cum_seconds,oom\n";
    char buf[64];
    for (const CacheSizeStats& row : stats.per_size) {
        std::snprintf(buf, sizeof buf, "%.1f,%.3f", row.cached_percent(), row.cum_millis / 1000.0);
        out << row.size << ',' << to_string(row.mba_cumulative) << ',' << row.stored << ',' << row.candidates << ','
            << row.memory_bytes << ',' << buf << ',' << (row.oom ? 1 : 0) << '\n';
    }
    return out.str();
}

}  // namespace mbasynth
