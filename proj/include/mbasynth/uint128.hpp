// 128-bit unsigned helpers shared by the counting table and the rank codec.

#ifndef MBASYNTH_UINT128_HPP
#define MBASYNTH_UINT128_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace mbasynth {

using u128 = unsigned __int128;

inline constexpr u128 kU128Max = ~u128{0};

/// Returns nullopt when the product does not fit in 128 bits.
inline std::optional<u128> checked_mul(u128 a, u128 b) {
    u128 out;
    if (__builtin_mul_overflow(a, b, &out)) return std::nullopt;
    return out;
}

inline std::optional<u128> checked_add(u128 a, u128 b) {
    u128 out;
    if (__builtin_add_overflow(a, b, &out)) return std::nullopt;
    return out;
}

/// Decimal rendering.
std::string to_string(u128 value);

/// Decimal rendering with ',' thousands separators ("438,822,815").
std::string to_grouped_string(u128 value);

/// Parses a non-empty decimal string; nullopt on junk or overflow.
std::optional<u128> parse_u128(std::string_view text);

/// (a * b) mod m for m > 0 without intermediate overflow.
u128 mulmod(u128 a, u128 b, u128 m);

inline u128 gcd(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline double to_double(u128 v) { return static_cast<double>(v); }

}  // namespace mbasynth

#endif
