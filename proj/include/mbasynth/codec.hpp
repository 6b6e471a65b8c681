// Bijection between ranks 0..T[s][8]-1 and canonical expressions of size s.
//
// A rank first selects the top operator block (slot order NOT, AND, OR,
// XOR, NEG, ADD, SUB, MUL). Inside a binary block it selects the left
// subtree size j, and the remainder n'' splits as
//   left  = n'' / T[s-1-j][8]
//   right = n'' % T[s-1-j][8]
// so consecutive ranks share the left subtree and step through right ones.

#ifndef MBASYNTH_CODEC_HPP
#define MBASYNTH_CODEC_HPP

#include <array>
#include <random>
#include <span>

#include "mbasynth/counting.hpp"
#include "mbasynth/expr.hpp"
#include "mbasynth/uint128.hpp"

namespace mbasynth {

struct Rank {
    u128 value = 0;
    int size = 0;
    friend bool operator==(const Rank&, const Rank&) = default;
};

namespace detail {

/// Writes the size-s expression with the given rank into out[0..s).
/// U is u128, or std::uint64_t when table.fits_u64(s). No range checks.
template <typename U>
void decode_unchecked(const CountTable& table, U rank, int s, Token* out) {
    struct Frame {
        U rank;
        int size;
        int end;  // one past the subtree's last token
    };
    std::array<Frame, kMaxExprSize> agenda;
    int top = 0;
    agenda[0] = {rank, s, s};
    while (top >= 0) {
        const Frame f = agenda[top--];
        if (f.size == 1) {
            out[f.end - 1] = Token::var(static_cast<int>(f.rank));
            continue;
        }
        int slot = kNumOps - 1;
        while (static_cast<U>(table.operator_offset(f.size, static_cast<Op>(slot))) > f.rank) --slot;
        const Op op = static_cast<Op>(slot);
        const U local = f.rank - static_cast<U>(table.operator_offset(f.size, op));
        out[f.end - 1] = Token::op(op);
        if (is_unary(op)) {
            agenda[++top] = {local, f.size - 1, f.end - 1};
            continue;
        }
        int j = 1;
        const int last = split_last(f.size, op);
        while (j < last && static_cast<U>(table.split_offset(f.size, j + 1)) <= local) ++j;
        const U within = local - static_cast<U>(table.split_offset(f.size, j));
        const U right_count = static_cast<U>(table.total(f.size - 1 - j));
        const int begin = f.end - f.size;
        agenda[++top] = {within / right_count, j, begin + j};
        agenda[++top] = {within % right_count, f.size - 1 - j, f.end - 1};
    }
}

}  // namespace detail

/// Decodes into out[0..s); out must hold at least s tokens. Throws
/// DomainError if s is outside the table (or above kMaxExprSize) or the
/// rank is not below T[s][8].
void decode_into(const CountTable& table, u128 rank, int s, std::span<Token> out);

RpnExpr decode(u128 rank, int s, const CountTable& table);
inline RpnExpr decode(Rank rank, const CountTable& table) { return decode(rank.value, rank.size, table); }

/// Inverse of decode. Throws CanonicalityError for a commutative node with
/// a larger left subtree, ArityError / StructuralError for invalid input,
/// DomainError if the size exceeds the table.
Rank encode(std::span<const Token> expr, const CountTable& table);
inline Rank encode(const RpnExpr& expr, const CountTable& table) { return encode(expr.view(), table); }

/// Rank permutation i -> (i * 2246822507) mod modulus.
class ShuffleParams {
public:
    static constexpr u128 kMultiplier = 2246822507u;

    /// Throws ConfigError unless modulus > 0 and gcd(multiplier, modulus) = 1.
    explicit ShuffleParams(u128 modulus);

    u128 multiplier() const { return kMultiplier; }
    u128 modulus() const { return modulus_; }

private:
    u128 modulus_;
};

/// Throws DomainError when i >= modulus.
u128 shuffle(u128 i, const ShuffleParams& params);

/// Uniform integer in [0, bound) by rejection; bound > 0.
u128 uniform_below(u128 bound, std::mt19937_64& rng);

/// Uniform canonical expression of size s.
RpnExpr sample_uniform(int s, const CountTable& table, std::mt19937_64& rng);

}  // namespace mbasynth

#endif
