// Counts of canonical RPN expressions by size and top-level operator.
//
// Canonical means every commutative node has a left subtree no larger than
// its right subtree. Equal-size children are counted as ordered pairs.

#ifndef MBASYNTH_COUNTING_HPP
#define MBASYNTH_COUNTING_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mbasynth/expr.hpp"
#include "mbasynth/uint128.hpp"

namespace mbasynth {

/// Column index of the per-size total; columns 0..7 are the Op values.
inline constexpr int kTotalSlot = 8;
inline constexpr int kNumSlots = 9;

inline constexpr int slot_of(Op op) { return static_cast<int>(op); }

/// Smallest and largest left-subtree size for a binary operator at size s.
inline constexpr int split_first(int /*s*/) { return 1; }
inline constexpr int split_last(int s, Op op) { return is_commutative(op) ? (s - 1) / 2 : s - 2; }

class CountTable {
public:
    /// Throws ConfigError for k < 1 or max_size < 1, and CapacityError
    /// naming (size, slot) on the first entry that overflows 128 bits.
    static CountTable build(int k, int max_size);

    int k() const { return k_; }
    int max_size() const { return max_size_; }

    /// T[s][slot] for 1 <= s <= max_size, 0 <= slot <= 8.
    u128 at(int s, int slot) const { return rows_[s][slot]; }
    u128 at(int s, Op op) const { return rows_[s][slot_of(op)]; }
    u128 total(int s) const { return rows_[s][kTotalSlot]; }

    /// Sum of T[s'][8] for s' <= s. Throws CapacityError if it overflows.
    u128 cumulative_total(int s) const;

    /// Sum of T[s][op'] over slots before op; zero for NOT.
    u128 operator_offset(int s, Op op) const { return offsets_[s][slot_of(op)]; }

    /// Number of (left, right) pairs with left size j: T[j][8] * T[s-1-j][8].
    u128 split_count(int s, int j) const { return split_prefix_[s][j + 1] - split_prefix_[s][j]; }
    /// Sum of split_count(s, j') for 1 <= j' < j; split_offset(s, 1) = 0.
    u128 split_offset(int s, int j) const { return split_prefix_[s][j]; }

    /// True when T[s][8] fits in 64 bits (so do all smaller sizes).
    bool fits_u64(int s) const { return total(s) <= UINT64_MAX; }

private:
    int k_ = 0;
    int max_size_ = 0;
    std::vector<std::array<u128, kNumSlots>> rows_;
    std::vector<std::array<u128, kNumSlots>> offsets_;
    // split_prefix_[s][j], j in 1..s-1; index 0 unused.
    std::vector<std::vector<u128>> split_prefix_;
    std::vector<std::optional<u128>> cumulative_;
};

/// Slot label used in reports: "NOT", "AND", ..., "TOTAL".
std::string slot_name(int slot);

}  // namespace mbasynth

#endif
