#include "mbasynth/text.hpp"

#include <cctype>
#include <sstream>
#include <utility>
#include <vector>

namespace mbasynth {

std::string to_infix(std::span<const Token> expr) {
    validate(expr, Token::kMaxVariables);
    // (text, is_binary)
    std::vector<std::pair<std::string, bool>> stack;
    for (Token t : expr) {
        if (t.is_var()) {
            stack.emplace_back("x" + std::to_string(t.var_index()), false);
            continue;
        }
        const std::string_view sym = op_symbol(t.op());
        if (is_unary(t.op())) {
            auto& [child, binary] = stack.back();
            child = std::string(sym) + (binary ? child : "(" + child + ")");
            binary = false;
            continue;
        }
        std::string rhs = std::move(stack.back().first);
        stack.pop_back();
        auto& [lhs, binary] = stack.back();
        lhs = "(" + lhs + " " + std::string(sym) + " " + rhs + ")";
        binary = true;
    }
    return std::move(stack.back().first);
}

namespace {

class InfixParser {
public:
    InfixParser(std::string_view text, int k) : text_(text), k_(k) {}

    RpnExpr run() {
        parse_bitwise();
        skip_space();
        if (pos_ != text_.size()) fail("binary operator or end of input");
        return RpnExpr(std::move(out_));
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    [[noreturn]] void fail(std::string_view expected) {
        std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
        throw ParseError("at offset " + std::to_string(pos_) + ": expected " + std::string(expected) +
                             ", found " + found,
                         pos_);
    }

    void parse_bitwise() {
        parse_additive();
        for (;;) {
            const char c = peek();
            Op op;
            if (c == '&') op = Op::And;
            else if (c == '|') op = Op::Or;
            else if (c == '^') op = Op::Xor;
            else return;
            ++pos_;
            parse_additive();
            out_.push_back(Token::op(op));
        }
    }

    void parse_additive() {
        parse_multiplicative();
        for (;;) {
            const char c = peek();
            if (c != '+' && c != '-') return;
            ++pos_;
            parse_multiplicative();
            out_.push_back(Token::op(c == '+' ? Op::Add : Op::Sub));
        }
    }

    void parse_multiplicative() {
        parse_unary();
        while (peek() == '*') {
            ++pos_;
            parse_unary();
            out_.push_back(Token::op(Op::Mul));
        }
    }

    void parse_unary() {
        const char c = peek();
        if (c == '~' || c == '-') {
            ++pos_;
            parse_unary();
            out_.push_back(Token::op(c == '~' ? Op::Not : Op::Neg));
            return;
        }
        parse_primary();
    }

    void parse_primary() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            parse_bitwise();
            if (peek() != ')') fail("')'");
            ++pos_;
            return;
        }
        if (c == 'x') {
            const std::size_t start = pos_;
            ++pos_;
            std::size_t digits_begin = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ == digits_begin || pos_ - digits_begin > 3) {
                pos_ = digits_begin;
                fail("variable index");
            }
            const int index = std::stoi(std::string(text_.substr(digits_begin, pos_ - digits_begin)));
            if (index >= k_) {
                throw ArityError("variable x" + std::to_string(index) + " at offset " + std::to_string(start) +
                                 " but only " + std::to_string(k_) + " variables exist");
            }
            out_.push_back(Token::var(index));
            return;
        }
        fail("variable, '(' or unary operator");
    }

    std::string_view text_;
    int k_;
    std::size_t pos_ = 0;
    std::vector<Token> out_;
};

}  // namespace

RpnExpr parse_infix(std::string_view text, int k) { return InfixParser(text, k).run(); }

std::string to_rpn_string(std::span<const Token> expr) {
    std::string out;
    for (Token t : expr) {
        if (!out.empty()) out.push_back(' ');
        if (t.is_var()) out += "x" + std::to_string(t.var_index());
        else if (t.op() == Op::Neg) out += "neg";
        else out += op_symbol(t.op());
    }
    return out;
}

RpnExpr parse_rpn(std::string_view text, int k) {
    std::istringstream in{std::string(text)};
    std::vector<Token> tokens;
    std::string word;
    while (in >> word) {
        if (word == "~") tokens.push_back(Token::op(Op::Not));
        else if (word == "neg") tokens.push_back(Token::op(Op::Neg));
        else if (word == "&") tokens.push_back(Token::op(Op::And));
        else if (word == "|") tokens.push_back(Token::op(Op::Or));
        else if (word == "^") tokens.push_back(Token::op(Op::Xor));
        else if (word == "+") tokens.push_back(Token::op(Op::Add));
        else if (word == "-") tokens.push_back(Token::op(Op::Sub));
        else if (word == "*") tokens.push_back(Token::op(Op::Mul));
        else if (word.size() >= 2 && word.size() <= 4 && word[0] == 'x' &&
                 word.find_first_not_of("0123456789", 1) == std::string::npos) {
            const int index = std::stoi(word.substr(1));
            if (index >= k) {
                throw ArityError("variable " + word + " but only " + std::to_string(k) + " variables exist");
            }
            tokens.push_back(Token::var(index));
        } else {
            const auto pos = in.tellg();
            const std::size_t end = pos == std::streampos(-1) ? text.size() : static_cast<std::size_t>(pos);
            const std::size_t offset = end - word.size();
            throw ParseError("unknown RPN token '" + word + "'", offset);
        }
    }
    validate(tokens, k);
    return RpnExpr(std::move(tokens));
}

}  // namespace mbasynth
