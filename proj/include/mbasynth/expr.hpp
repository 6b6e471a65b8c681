// MBA expressions as reverse Polish token sequences, and their semantics
// over w-bit words.

#ifndef MBASYNTH_EXPR_HPP
#define MBASYNTH_EXPR_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "mbasynth/error.hpp"

namespace mbasynth {

using Word = std::uint64_t;

/// Operators, numbered in enumeration slot order.
enum class Op : std::uint8_t {
    Not = 0,
    And = 1,
    Or = 2,
    Xor = 3,
    Neg = 4,
    Add = 5,
    Sub = 6,
    Mul = 7,
};

inline constexpr int kNumOps = 8;
inline constexpr std::array<Op, kNumOps> kAllOps = {Op::Not, Op::And, Op::Or,  Op::Xor,
                                                   Op::Neg, Op::Add, Op::Sub, Op::Mul};

constexpr bool is_unary(Op op) { return op == Op::Not || op == Op::Neg; }
constexpr int arity(Op op) { return is_unary(op) ? 1 : 2; }
constexpr bool is_commutative(Op op) {
    return op == Op::And || op == Op::Or || op == Op::Xor || op == Op::Add || op == Op::Mul;
}

/// Infix symbol; NEG and SUB both print as "-".
std::string_view op_symbol(Op op);

/// One RPN token: a variable x_i or an operator, packed in a byte.
class Token {
public:
    static constexpr int kMaxVariables = 256 - kNumOps;

    constexpr Token() = default;
    static constexpr Token var(int index) { return Token(static_cast<std::uint8_t>(kNumOps + index)); }
    static constexpr Token op(Op o) { return Token(static_cast<std::uint8_t>(o)); }

    constexpr bool is_var() const { return code_ >= kNumOps; }
    constexpr bool is_op() const { return code_ < kNumOps; }
    constexpr int var_index() const { return code_ - kNumOps; }
    constexpr Op op() const { return static_cast<Op>(code_); }
    constexpr std::uint8_t code() const { return code_; }

    friend constexpr bool operator==(Token, Token) = default;

private:
    constexpr explicit Token(std::uint8_t code) : code_(code) {}
    std::uint8_t code_ = kNumOps;
};

/// Largest expression the allocation-free evaluator and decoder accept.
inline constexpr int kMaxExprSize = 63;
/// RPN depth never exceeds the leaf count, which is at most ceil(s/2).
inline constexpr int kEvalStackCapacity = (kMaxExprSize + 1) / 2 + 1;

struct RpnExpr {
    std::vector<Token> tokens;

    RpnExpr() = default;
    explicit RpnExpr(std::vector<Token> t) : tokens(std::move(t)) {}
    RpnExpr(std::span<const Token> t) : tokens(t.begin(), t.end()) {}

    int size() const { return static_cast<int>(tokens.size()); }
    std::span<const Token> view() const { return tokens; }

    friend bool operator==(const RpnExpr&, const RpnExpr&) = default;
};

class BitWidth {
public:
    constexpr BitWidth() = default;
    /// Throws ConfigError outside 1..64.
    explicit BitWidth(int bits);

    constexpr int bits() const { return bits_; }
    constexpr Word mask() const { return bits_ == 64 ? ~Word{0} : ((Word{1} << bits_) - 1); }

    friend constexpr bool operator==(BitWidth, BitWidth) = default;

private:
    int bits_ = 32;
};

/// Throws StructuralError on underflow or a residue other than one, and
/// ArityError on a variable index >= k.
void validate(std::span<const Token> expr, int k);

/// Highest variable index in the expression, or -1 if there is none.
int max_var_index(std::span<const Token> expr);

/// For each token position, the token count of the subtree rooted there.
/// Requires a structurally valid expression.
std::vector<int> subtree_sizes(std::span<const Token> expr);

namespace detail {

inline Word apply_binary(Op op, Word a, Word b) {
    switch (op) {
        case Op::And: return a & b;
        case Op::Or: return a | b;
        case Op::Xor: return a ^ b;
        case Op::Add: return a + b;
        case Op::Sub: return a - b;
        case Op::Mul: return a * b;
        default: return 0;
    }
}

}  // namespace detail

/// Hot-path interpreter. Requires a valid expression of size <=
/// kMaxExprSize whose variables index into `input`. Every operator is
/// compatible with reduction mod 2^w, so the result is masked once.
inline Word evaluate_unchecked(std::span<const Token> expr, const Word* input, Word mask) {
    std::array<Word, kEvalStackCapacity> stack;
    int top = -1;
    for (Token t : expr) {
        if (t.is_var()) {
            stack[++top] = input[t.var_index()];
            continue;
        }
        switch (t.op()) {
            case Op::Not: stack[top] = ~stack[top]; break;
            case Op::Neg: stack[top] = Word{0} - stack[top]; break;
            case Op::And: --top; stack[top] &= stack[top + 1]; break;
            case Op::Or: --top; stack[top] |= stack[top + 1]; break;
            case Op::Xor: --top; stack[top] ^= stack[top + 1]; break;
            case Op::Add: --top; stack[top] += stack[top + 1]; break;
            case Op::Sub: --top; stack[top] -= stack[top + 1]; break;
            case Op::Mul: --top; stack[top] *= stack[top + 1]; break;
        }
    }
    return stack[0] & mask;
}

/// Checked evaluation of an expression on one k-tuple.
Word evaluate(std::span<const Token> expr, std::span<const Word> input, BitWidth width);

inline Word evaluate(const RpnExpr& expr, std::span<const Word> input, BitWidth width = {}) {
    return evaluate(expr.view(), input, width);
}

}  // namespace mbasynth

#endif
