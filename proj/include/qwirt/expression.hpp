#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "qwirt/quaternion.hpp"
#include "qwirt/slice_function.hpp"

namespace qwirt {

/// Syntax tree of the CLI expression language:
///
///   expr   := term (('+' | '-') term)*
///   term   := unary ('*' unary)*
///   unary  := '-' unary | factor
///   factor := atom ('^' nat)?
///   atom   := var | '~' var | 'conj(' var ')' | qlit | '(' expr ')'
///   var    := 'x' nat
///   qlit   := (nat ('/' nat | '.' digits)?)? ('i' | 'j' | 'k')?   (not empty)
///
/// `*` is always the slice product.
struct Expression {
    enum class Kind { Variable, ConjVariable, Literal, Sum, Difference, Product, Power, Negate };

    Kind kind = Kind::Literal;
    int var = 0;
    QuatQ literal;
    int exponent = 0;
    std::vector<Expression> children;
    std::size_t offset = 0;
};

/// Throws SyntaxError with the byte offset of the first offending character.
Expression parse_expression(std::string_view text);

/// Largest variable index, 0 for constant expressions.
int max_variable(const Expression& e);

/// Throws ArityError when a variable index exceeds n.
SliceFunction lower(const Expression& e, int n);

/// Parse and lower; n = 0 infers n from the expression (at least 1).
SliceFunction parse_slice(std::string_view text, int n = 0);

/// Semicolon-separated quaternion literals, e.g. "i;1/2+j".
std::vector<QuatQ> parse_point(std::string_view text);

}  // namespace qwirt
