#include "mbasynth/spec.hpp"

#include <algorithm>
#include <string>

namespace mbasynth {

Specification::Specification(int k, BitWidth width, std::span<const IoPair> pairs)
    : k_(k), width_(width) {
    if (k < 1 || k > Token::kMaxVariables) {
        throw ConfigError("variable count must be in 1.." + std::to_string(Token::kMaxVariables));
    }
    if (pairs.empty()) throw ConfigError("specification needs at least one pair");
    const Word mask = width.mask();
    inputs_.reserve(pairs.size() * static_cast<std::size_t>(k));
    outputs_.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const IoPair& p = pairs[i];
        if (p.input.size() != static_cast<std::size_t>(k)) {
            throw ConfigError("pair " + std::to_string(i) + " has " + std::to_string(p.input.size()) +
                              " inputs, expected " + std::to_string(k));
        }
        for (Word v : p.input) {
            if ((v & ~mask) != 0) {
                throw ConfigError("pair " + std::to_string(i) + " input exceeds " +
                                  std::to_string(width.bits()) + " bits");
            }
        }
        if ((p.output & ~mask) != 0) {
            throw ConfigError("pair " + std::to_string(i) + " output exceeds " +
                              std::to_string(width.bits()) + " bits");
        }
        inputs_.insert(inputs_.end(), p.input.begin(), p.input.end());
        outputs_.push_back(p.output);
    }

    std::vector<std::span<const Word>> rows;
    rows.reserve(n());
    for (std::size_t i = 0; i < n(); ++i) rows.push_back(input(i));
    std::sort(rows.begin(), rows.end(), [](auto a, auto b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (std::equal(rows[i - 1].begin(), rows[i - 1].end(), rows[i].begin())) {
            throw ConfigError("specification inputs must be pairwise distinct");
        }
    }
}

Specification Specification::from_target(const RpnExpr& target, int k, BitWidth width,
                                         std::span<const std::vector<Word>> inputs) {
    validate(target.view(), k);
    std::vector<IoPair> pairs;
    pairs.reserve(inputs.size());
    for (const auto& in : inputs) {
        if (in.size() != static_cast<std::size_t>(k)) {
            throw ConfigError("input tuple arity differs from variable count");
        }
        pairs.push_back({in, evaluate(target, in, width)});
    }
    return Specification(k, width, pairs);
}

std::vector<IoPair> Specification::pairs() const {
    std::vector<IoPair> out;
    out.reserve(n());
    for (std::size_t i = 0; i < n(); ++i) {
        auto in = input(i);
        out.push_back({std::vector<Word>(in.begin(), in.end()), outputs_[i]});
    }
    return out;
}

bool check(std::span<const Token> expr, const Specification& spec) {
    validate(expr, spec.k());
    const bool small = expr.size() <= static_cast<std::size_t>(kMaxExprSize);
    for (std::size_t i = 0; i < spec.n(); ++i) {
        const Word got = small ? evaluate_unchecked(expr, spec.input(i).data(), spec.width().mask())
                               : evaluate(expr, spec.input(i), spec.width());
        if (got != spec.outputs()[i]) return false;
    }
    return true;
}

std::vector<Word> observational_behavior(std::span<const Token> expr, const Specification& spec) {
    validate(expr, spec.k());
    std::vector<Word> out;
    out.reserve(spec.n());
    for (std::size_t i = 0; i < spec.n(); ++i) out.push_back(evaluate(expr, spec.input(i), spec.width()));
    return out;
}

}  // namespace mbasynth
