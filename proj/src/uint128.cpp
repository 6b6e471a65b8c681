#include "mbasynth/uint128.hpp"

#include <algorithm>

namespace mbasynth {

std::string to_string(u128 value) {
    if (value == 0) return "0";
    std::string out;
    while (value != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
        value /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::string to_grouped_string(u128 value) {
    const std::string plain = to_string(value);
    std::string out;
    const std::size_t lead = plain.size() % 3;
    for (std::size_t i = 0; i < plain.size(); ++i) {
        if (i != 0 && (i % 3) == lead) out.push_back(',');
        out.push_back(plain[i]);
    }
    return out;
}

std::optional<u128> parse_u128(std::string_view text) {
    if (text.empty()) return std::nullopt;
    u128 value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') return std::nullopt;
        auto scaled = checked_mul(value, 10);
        if (!scaled) return std::nullopt;
        auto next = checked_add(*scaled, static_cast<u128>(c - '0'));
        if (!next) return std::nullopt;
        value = *next;
    }
    return value;
}

u128 mulmod(u128 a, u128 b, u128 m) {
    a %= m;
    b %= m;
    if (auto direct = checked_mul(a, b)) return *direct % m;
    // Double-and-add; every intermediate stays below m.
    u128 result = 0;
    while (b != 0) {
        if (b & 1) result = (result >= m - a) ? result - (m - a) : result + a;
        a = (a >= m - a) ? a - (m - a) : a + a;
        b >>= 1;
    }
    return result;
}

}  // namespace mbasynth
