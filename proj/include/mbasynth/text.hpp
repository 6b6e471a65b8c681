// Text forms of expressions.
//
// Infix: variables x0..x{k-1}, unary ~E and -E, binary & | ^ + - *.
// Precedence (tightest first): unary, *, + and -, then & ^ | together.
// Binary operators are left-associative. The emitter always fully
// parenthesizes: "(x0 + x1)", "~(x0 & x1)", "-(x1)".
//
// RPN: whitespace-separated tokens "x0 x1 & ~"; unary minus is "neg".

#ifndef MBASYNTH_TEXT_HPP
#define MBASYNTH_TEXT_HPP

#include <span>
#include <string>
#include <string_view>

#include "mbasynth/expr.hpp"

namespace mbasynth {

std::string to_infix(std::span<const Token> expr);
inline std::string to_infix(const RpnExpr& expr) { return to_infix(expr.view()); }

/// Throws ParseError (with byte offset) or ArityError for x_i with i >= k.
RpnExpr parse_infix(std::string_view text, int k);

std::string to_rpn_string(std::span<const Token> expr);
inline std::string to_rpn_string(const RpnExpr& expr) { return to_rpn_string(expr.view()); }

RpnExpr parse_rpn(std::string_view text, int k);

}  // namespace mbasynth

#endif
