#include "qwirt/expression.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace qwirt {

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expression parse() {
        Expression e = expr();
        skip();
        if (pos_ < text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    int nat() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        if (start == pos_) fail("expected a natural number");
        if (pos_ - start > 6) {
            pos_ = start;
            fail("number too large");
        }
        return std::stoi(std::string(text_.substr(start, pos_ - start)));
    }

    static Expression node(Expression::Kind kind, std::size_t offset, std::vector<Expression> children = {}) {
        Expression e;
        e.kind = kind;
        e.offset = offset;
        e.children = std::move(children);
        return e;
    }

    Expression expr() {
        Expression lhs = term();
        for (;;) {
            skip();
            const std::size_t at = pos_;
            if (accept('+')) {
                lhs = node(Expression::Kind::Sum, at, {std::move(lhs), term()});
            } else if (accept('-')) {
                lhs = node(Expression::Kind::Difference, at, {std::move(lhs), term()});
            } else {
                return lhs;
            }
        }
    }

    Expression term() {
        Expression lhs = unary();
        for (;;) {
            skip();
            const std::size_t at = pos_;
            if (!accept('*')) return lhs;
            lhs = node(Expression::Kind::Product, at, {std::move(lhs), unary()});
        }
    }

    Expression unary() {
        skip();
        const std::size_t at = pos_;
        if (accept('-')) return node(Expression::Kind::Negate, at, {unary()});
        return factor();
    }

    Expression factor() {
        Expression base = atom();
        skip();
        const std::size_t at = pos_;
        if (!accept('^')) return base;
        Expression e = node(Expression::Kind::Power, at, {std::move(base)});
        e.exponent = nat();
        return e;
    }

    Expression variable(Expression::Kind kind, std::size_t at) {
        skip();
        if (pos_ >= text_.size() || text_[pos_] != 'x') fail("expected a variable");
        ++pos_;
        if (pos_ >= text_.size() || !is_digit(text_[pos_])) fail("expected a variable index");
        const std::size_t index_at = pos_;
        Expression e = node(kind, at);
        e.var = nat();
        if (e.var < 1) {
            pos_ = index_at;
            fail("variable indices start at 1");
        }
        if (e.var > kMaxVars) throw ArityError("variable index " + std::to_string(e.var) + " exceeds " + std::to_string(kMaxVars));
        return e;
    }

    Expression atom() {
        skip();
        const std::size_t at = pos_;
        if (pos_ >= text_.size()) fail("expected an operand");
        const char c = text_[pos_];
        if (c == 'x') return variable(Expression::Kind::Variable, at);
        if (c == '~') {
            ++pos_;
            return variable(Expression::Kind::ConjVariable, at);
        }
        if (text_.substr(pos_, 4) == "conj") {
            pos_ += 4;
            expect('(');
            Expression e = variable(Expression::Kind::ConjVariable, at);
            expect(')');
            return e;
        }
        if (c == '(') {
            ++pos_;
            Expression e = expr();
            expect(')');
            return e;
        }
        return literal();
    }

    Expression literal() {
        const std::size_t at = pos_;
        Rational value(1);
        const bool has_number = scan_unsigned_rational(text_, pos_, value);
        Expression e = node(Expression::Kind::Literal, at);
        const char c = pos_ < text_.size() ? text_[pos_] : '\0';
        if (c == 'i' || c == 'j' || c == 'k') {
            ++pos_;
            (c == 'i' ? e.literal.x : c == 'j' ? e.literal.y : e.literal.z) = value;
        } else if (has_number) {
            e.literal.w = value;
        } else {
            fail("expected an operand");
        }
        return e;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression parse_expression(std::string_view text) { return Parser(text).parse(); }

int max_variable(const Expression& e) {
    int m = e.var;
    for (const auto& c : e.children) m = std::max(m, max_variable(c));
    return m;
}

SliceFunction lower(const Expression& e, int n) {
    using K = Expression::Kind;
    switch (e.kind) {
        case K::Variable:
        case K::ConjVariable:
            if (e.var > n) {
                throw ArityError("variable index " + std::to_string(e.var) + " exceeds n = " + std::to_string(n));
            }
            return e.kind == K::Variable ? SliceFunction::variable(n, e.var) : SliceFunction::conj_variable(n, e.var);
        case K::Literal: return SliceFunction::constant(n, e.literal);
        case K::Sum: return lower(e.children[0], n) + lower(e.children[1], n);
        case K::Difference: return lower(e.children[0], n) - lower(e.children[1], n);
        case K::Product: return slice_product(lower(e.children[0], n), lower(e.children[1], n));
        case K::Negate: return -lower(e.children[0], n);
        case K::Power:
            if (e.exponent > kMaxDegreePerVar) {
                throw InvalidArgument("exponent " + std::to_string(e.exponent) + " exceeds the degree cap");
            }
            return slice_power(lower(e.children[0], n), e.exponent);
    }
    throw InvalidArgument("unknown expression node");
}

SliceFunction parse_slice(std::string_view text, int n) {
    const Expression e = parse_expression(text);
    return lower(e, n > 0 ? n : std::max(1, max_variable(e)));
}

std::vector<QuatQ> parse_point(std::string_view text) {
    std::vector<QuatQ> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t end = text.find(';', start);
        const std::string_view part = text.substr(start, end == std::string_view::npos ? text.npos : end - start);
        try {
            out.push_back(parse_quaternion(part));
        } catch (const SyntaxError& e) {
            throw SyntaxError("bad quaternion literal '" + std::string(part) + "'", start + e.offset());
        }
        if (end == std::string_view::npos) return out;
        start = end + 1;
    }
}

}  // namespace qwirt
