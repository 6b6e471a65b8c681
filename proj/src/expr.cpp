#include "mbasynth/expr.hpp"

#include <string>

namespace mbasynth {

std::string_view op_symbol(Op op) {
    switch (op) {
        case Op::Not: return "~";
        case Op::And: return "&";
        case Op::Or: return "|";
        case Op::Xor: return "^";
        case Op::Neg: return "-";
        case Op::Add: return "+";
        case Op::Sub: return "-";
        case Op::Mul: return "*";
    }
    return "?";
}

BitWidth::BitWidth(int bits) : bits_(bits) {
    if (bits < 1 || bits > 64) {
        throw ConfigError("bit width must be in 1..64, got " + std::to_string(bits));
    }
}

void validate(std::span<const Token> expr, int k) {
    int depth = 0;
    for (std::size_t i = 0; i < expr.size(); ++i) {
        const Token t = expr[i];
        if (t.is_var()) {
            if (t.var_index() >= k) {
                throw ArityError("variable x" + std::to_string(t.var_index()) + " at token " +
                                 std::to_string(i) + " but only " + std::to_string(k) +
                                 " variables exist");
            }
            ++depth;
            continue;
        }
        const int need = arity(t.op());
        if (depth < need) {
            throw StructuralError("stack underflow at token " + std::to_string(i));
        }
        depth -= need - 1;
    }
    if (depth != 1) {
        throw StructuralError("expression leaves " + std::to_string(depth) +
                              " values on the stack, expected 1");
    }
}

int max_var_index(std::span<const Token> expr) {
    int best = -1;
    for (Token t : expr) {
        if (t.is_var() && t.var_index() > best) best = t.var_index();
    }
    return best;
}

std::vector<int> subtree_sizes(std::span<const Token> expr) {
    std::vector<int> sizes(expr.size());
    std::vector<int> stack;  // sizes of pending operands
    for (std::size_t i = 0; i < expr.size(); ++i) {
        const Token t = expr[i];
        int size = 1;
        if (t.is_op()) {
            for (int a = 0; a < arity(t.op()); ++a) {
                size += stack.back();
                stack.pop_back();
            }
        }
        sizes[i] = size;
        stack.push_back(size);
    }
    return sizes;
}

Word evaluate(std::span<const Token> expr, std::span<const Word> input, BitWidth width) {
    validate(expr, static_cast<int>(input.size()));
    if (expr.size() <= static_cast<std::size_t>(kMaxExprSize)) {
        return evaluate_unchecked(expr, input.data(), width.mask());
    }
    std::vector<Word> stack;
    for (Token t : expr) {
        if (t.is_var()) {
            stack.push_back(input[t.var_index()]);
        } else if (t.op() == Op::Not) {
            stack.back() = ~stack.back();
        } else if (t.op() == Op::Neg) {
            stack.back() = Word{0} - stack.back();
        } else {
            const Word rhs = stack.back();
            stack.pop_back();
            stack.back() = detail::apply_binary(t.op(), stack.back(), rhs);
        }
    }
    return stack.back() & width.mask();
}

}  // namespace mbasynth
