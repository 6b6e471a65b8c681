// Input-output specifications and checking expressions against them.

#ifndef MBASYNTH_SPEC_HPP
#define MBASYNTH_SPEC_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "mbasynth/expr.hpp"

namespace mbasynth {

struct IoPair {
    std::vector<Word> input;
    Word output = 0;
};

/// n pairwise-distinct k-tuples with expected outputs, all reduced to w bits.
class Specification {
public:
    /// Throws ConfigError when n == 0, a tuple has the wrong arity, a value
    /// does not fit in w bits, or two inputs coincide.
    Specification(int k, BitWidth width, std::span<const IoPair> pairs);

    /// Samples `target` on the given inputs.
    static Specification from_target(const RpnExpr& target, int k, BitWidth width,
                                     std::span<const std::vector<Word>> inputs);

    int k() const { return k_; }
    BitWidth width() const { return width_; }
    std::size_t n() const { return outputs_.size(); }

    /// Row-major n x k block of inputs.
    std::span<const Word> inputs() const { return inputs_; }
    std::span<const Word> input(std::size_t i) const {
        return std::span<const Word>(inputs_).subspan(i * static_cast<std::size_t>(k_), k_);
    }
    std::span<const Word> outputs() const { return outputs_; }
    std::vector<IoPair> pairs() const;

private:
    int k_;
    BitWidth width_;
    std::vector<Word> inputs_;
    std::vector<Word> outputs_;
};

/// True iff the expression reproduces every output. Stops at the first
/// mismatch.
bool check(std::span<const Token> expr, const Specification& spec);
inline bool check(const RpnExpr& expr, const Specification& spec) { return check(expr.view(), spec); }

/// Outputs of the expression on the specification inputs, in order.
std::vector<Word> observational_behavior(std::span<const Token> expr, const Specification& spec);
inline std::vector<Word> observational_behavior(const RpnExpr& expr, const Specification& spec) {
    return observational_behavior(expr.view(), spec);
}

}  // namespace mbasynth

#endif
