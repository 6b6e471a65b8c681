#include "mbasynth/codec.hpp"

#include <string>

#include "mbasynth/error.hpp"

namespace mbasynth {

namespace {

void check_size(const CountTable& table, int s) {
    if (s < 1 || s > table.max_size() || s > kMaxExprSize) {
        throw DomainError("size " + std::to_string(s) + " outside 1.." +
                          std::to_string(std::min(table.max_size(), kMaxExprSize)));
    }
}

}  // namespace

void decode_into(const CountTable& table, u128 rank, int s, std::span<Token> out) {
    check_size(table, s);
    if (rank >= table.total(s)) {
        throw DomainError("rank " + to_string(rank) + " not below T[" + std::to_string(s) +
                          "][8] = " + to_string(table.total(s)));
    }
    if (out.size() < static_cast<std::size_t>(s)) throw DomainError("decode buffer too small");
    if (table.fits_u64(s)) {
        detail::decode_unchecked<std::uint64_t>(table, static_cast<std::uint64_t>(rank), s, out.data());
    } else {
        detail::decode_unchecked<u128>(table, rank, s, out.data());
    }
}

RpnExpr decode(u128 rank, int s, const CountTable& table) {
    std::vector<Token> tokens(static_cast<std::size_t>(std::max(s, 0)));
    decode_into(table, rank, s, tokens);
    return RpnExpr(std::move(tokens));
}

Rank encode(std::span<const Token> expr, const CountTable& table) {
    validate(expr, table.k());
    const int s = static_cast<int>(expr.size());
    check_size(table, s);
    const std::vector<int> sizes = subtree_sizes(expr);

    // Node ranks, filled in token order (children precede parents).
    std::vector<u128> rank(expr.size());
    for (std::size_t i = 0; i < expr.size(); ++i) {
        const Token t = expr[i];
        const int size = sizes[i];
        if (t.is_var()) {
            rank[i] = static_cast<u128>(t.var_index());
            continue;
        }
        const Op op = t.op();
        u128 value = table.operator_offset(size, op);
        if (is_unary(op)) {
            value += rank[i - 1];
        } else {
            const std::size_t right = i - 1;
            const int right_size = sizes[right];
            const std::size_t left = right - static_cast<std::size_t>(right_size);
            const int left_size = size - 1 - right_size;
            if (is_commutative(op) && left_size > right_size) {
                throw CanonicalityError("operator '" + std::string(op_symbol(op)) + "' at token " +
                                            std::to_string(i) + " has left subtree of size " +
                                            std::to_string(left_size) + " > right subtree of size " +
                                            std::to_string(right_size),
                                        i);
            }
            value += table.split_offset(size, left_size) + rank[left] * table.total(right_size) + rank[right];
        }
        rank[i] = value;
    }
    return Rank{rank.back(), s};
}

ShuffleParams::ShuffleParams(u128 modulus) : modulus_(modulus) {
    if (modulus == 0) throw ConfigError("shuffle modulus must be positive");
    if (gcd(kMultiplier, modulus) != 1) {
        throw ConfigError("shuffle modulus " + to_string(modulus) + " shares a factor with multiplier " +
                          to_string(kMultiplier) + "; the permutation would not be bijective");
    }
}

u128 shuffle(u128 i, const ShuffleParams& params) {
    if (i >= params.modulus()) {
        throw DomainError("shuffle index " + to_string(i) + " not below modulus " + to_string(params.modulus()));
    }
    return mulmod(i, params.multiplier(), params.modulus());
}

u128 uniform_below(u128 bound, std::mt19937_64& rng) {
    if (bound == 0) throw DomainError("uniform_below needs a positive bound");
    if (bound <= (u128{1} << 64)) {
        std::uniform_int_distribution<std::uint64_t> dist(0, static_cast<std::uint64_t>(bound - 1));
        return dist(rng);
    }
    int bits = 128;
    while (((bound - 1) >> (bits - 1)) == 0) --bits;
    const u128 mask = bits == 128 ? kU128Max : ((u128{1} << bits) - 1);
    for (;;) {
        const u128 hi = rng();
        const u128 candidate = ((hi << 64) | rng()) & mask;
        if (candidate < bound) return candidate;
    }
}

RpnExpr sample_uniform(int s, const CountTable& table, std::mt19937_64& rng) {
    check_size(table, s);
    return decode(uniform_below(table.total(s), rng), s, table);
}

}  // namespace mbasynth
