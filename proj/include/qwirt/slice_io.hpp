#pragma once

#include <map>
#include <string>
#include <utility>

#include <json.hpp>

#include "qwirt/slice_function.hpp"

namespace qwirt {

/// Exponent pair (ℓ, h) of x_1^{ℓ_1} x̄_1^{h_1} ... x_n^{ℓ_n} x̄_n^{h_n}.
using ConjugateExponents = std::pair<MultiIndex, MultiIndex>;

/// Rewrites f uniquely as Σ x^ℓ x̄^h a_{ℓ,h} by substituting
/// α_m = (x_m + x̄_m)/2 and β_m = -e_m(x_m - x̄_m)/2 in the stem.
std::map<ConjugateExponents, QuatQ> to_conjugate_basis(const SliceFunction& f);

/// Expression text in the CLI grammar, e.g. `x1^2*~x2*(1+2i) - 3`.
/// Terms follow the canonical variable order x_1 < x̄_1 < x_2 < ...
std::string to_expression(const SliceFunction& f);

/// {n, terms: [{alpha_exps, beta_exps, components: [{mask, quaternion}]}]}
/// with exact quaternion literals and masks as integers (bit h-1 <-> h).
nlohmann::json to_json(const SliceFunction& f);
SliceFunction slice_from_json(const nlohmann::json& j);

nlohmann::json quaternion_json(const QuatD& q);

}  // namespace qwirt
