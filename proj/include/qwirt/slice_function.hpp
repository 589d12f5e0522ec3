#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qwirt/quaternion.hpp"
#include "qwirt/stem_algebra.hpp"

namespace qwirt {

/// Highest exponent allowed for any single real variable α_m or β_m, and for
/// their sum per quaternionic variable.
inline constexpr int kMaxDegreePerVar = 32;

/// α^a β^b with a, b in N^n. Slots are laid out at fixed positions so that
/// monomials of different ambient n still compare consistently.
struct Monomial {
    std::array<std::uint8_t, 2 * kMaxVars> exps{};

    int alpha(int m) const { return exps[m - 1]; }
    int beta(int m) const { return exps[kMaxVars + m - 1]; }
    void set_alpha(int m, int e) { exps[m - 1] = static_cast<std::uint8_t>(e); }
    void set_beta(int m, int e) { exps[kMaxVars + m - 1] = static_cast<std::uint8_t>(e); }

    auto operator<=>(const Monomial&) const = default;
};

/// Product of monomials; throws InvalidArgument past the per-variable cap.
Monomial operator*(const Monomial& a, const Monomial& b);

/// Polynomial in (α_1, β_1, ..., α_n, β_n) with coefficients in H ⊗ R^{2^n}.
/// Stem parity is a separate check (`has_stem_parity`) so that intermediate
/// algebra may pass through non-stem polynomials.
class StemPolynomial {
public:
    using Map = std::map<Monomial, StemElement>;

    StemPolynomial() = default;
    explicit StemPolynomial(int n);

    int n() const { return n_; }
    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Monomial& mono, const StemElement& coef);
    void add(const Monomial& mono, SubsetMask k, const QuatQ& a);

    StemPolynomial& operator+=(const StemPolynomial& o);
    StemPolynomial& operator-=(const StemPolynomial& o);
    StemPolynomial operator-() const;
    friend StemPolynomial operator+(StemPolynomial a, const StemPolynomial& b) { return a += b; }
    friend StemPolynomial operator-(StemPolynomial a, const StemPolynomial& b) { return a -= b; }

    /// Pointwise product in H ⊗ R^{2^n}: exponents add, coefficients multiply
    /// with stem_mul (left factor first).
    friend StemPolynomial operator*(const StemPolynomial& a, const StemPolynomial& b);

    StemPolynomial times_right(const QuatQ& a) const;
    StemPolynomial scaled(const Rational& s) const;

    StemPolynomial d_alpha(int m) const;
    StemPolynomial d_beta(int m) const;
    StemPolynomial apply_J(int h) const;

    /// For every term and component e_K: exponent of β_h is odd iff h ∈ K.
    bool has_stem_parity() const;

    /// True iff no component mask meets `k`.
    bool avoids_masks(SubsetMask k) const;

    friend bool operator==(const StemPolynomial& a, const StemPolynomial& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

private:
    int n_ = 0;
    Map terms_;
};

using MultiIndex = std::vector<int>;

/// A slice function f = I(F) of n quaternionic variables induced by a
/// polynomial stem F. Construction enforces stem parity.
class SliceFunction {
public:
    SliceFunction() = default;
    explicit SliceFunction(StemPolynomial stem);

    int n() const { return stem_.n(); }
    const StemPolynomial& stem() const { return stem_; }
    bool is_zero() const { return stem_.is_zero(); }

    static SliceFunction zero(int n) { return SliceFunction(StemPolynomial(n)); }
    static SliceFunction constant(int n, const QuatQ& a);
    /// x_m, stem e_∅ α_m + e_m β_m.
    static SliceFunction variable(int n, int m);
    /// x̄_m, stem e_∅ α_m - e_m β_m.
    static SliceFunction conj_variable(int n, int m);
    /// Re(x_m), stem e_∅ α_m.
    static SliceFunction real_part(int n, int m);
    /// Im(x_m), stem e_m β_m.
    static SliceFunction imag_part(int n, int m);

    SliceFunction& operator+=(const SliceFunction& o);
    SliceFunction& operator-=(const SliceFunction& o);
    SliceFunction operator-() const { return SliceFunction(-stem_, Unchecked{}); }
    friend SliceFunction operator+(SliceFunction a, const SliceFunction& b) { return a += b; }
    friend SliceFunction operator-(SliceFunction a, const SliceFunction& b) { return a -= b; }

    /// f·a for a constant quaternion a on the right.
    SliceFunction times_right(const QuatQ& a) const {
        return SliceFunction(stem_.times_right(a), Unchecked{});
    }
    SliceFunction scaled(const Rational& s) const { return SliceFunction(stem_.scaled(s), Unchecked{}); }

    friend bool operator==(const SliceFunction& a, const SliceFunction& b) { return a.stem_ == b.stem_; }

private:
    struct Unchecked {};
    SliceFunction(StemPolynomial stem, Unchecked) : stem_(std::move(stem)) {}

    StemPolynomial stem_;
};

/// x_1^{l_1} x̄_1^{h_1} ... x_n^{l_n} x̄_n^{h_n} a.
SliceFunction monomial(const MultiIndex& l, const MultiIndex& h, const QuatQ& a);

/// f·g := I(FG).
SliceFunction slice_product(const SliceFunction& f, const SliceFunction& g);

/// f·f·...·f (k ≥ 0 factors; k = 0 gives 1).
SliceFunction slice_power(const SliceFunction& f, int k);

/// (f)°_{s,x_m}: keeps the components whose mask avoids m.
SliceFunction spherical_value(const SliceFunction& f, int m);

/// (f)'_{s,x_m}: components with m ∈ K are divided by β_m and relabelled
/// K -> K∖{m}; the others are dropped. On functions whose masks containing m
/// have no smaller element (e.g. m = 1, or after truncation in x_1..x_{m-1}),
/// this equals ½ Im(x_m)^{-1}(f(x) - f(x̄^m)) pointwise.
SliceFunction spherical_derivative(const SliceFunction& f, int m);

/// ∂f/∂x_m = I(½(∂F/∂α_m - J_m ∂F/∂β_m)).
SliceFunction slice_partial(const SliceFunction& f, int m);
/// ∂f/∂x_m^c = I(½(∂F/∂α_m + J_m ∂F/∂β_m)).
SliceFunction slice_partial_conj(const SliceFunction& f, int m);

/// f̄ = I(Σ_K e_K (-1)^{|K|} F_K).
SliceFunction conjugate_slice(const SliceFunction& f);

/// ∂f/∂x_m^c vanishes for every m.
bool is_slice_regular(const SliceFunction& f);

/// Floating-point evaluator for a slice function, built once and safe to
/// share between threads.
class CompiledSlice {
public:
    CompiledSlice() = default;
    explicit CompiledSlice(const SliceFunction& f);

    int n() const { return n_; }

    /// f(x) = Σ_K J_K F_K(α, β) with x_m = α_m + J_m β_m, β_m = |Im(x_m)|.
    /// On the real axis of x_m the unit J_m = i is used.
    QuatD operator()(std::span<const QuatD> x) const;

    /// Same sum with explicitly supplied (α, β, J); J_m must be imaginary units.
    QuatD eval_stem(std::span<const double> alpha, std::span<const double> beta,
                    std::span<const QuatD> units) const;

private:
    struct Term {
        std::array<std::uint8_t, kMaxVars> alpha{};
        std::array<std::uint8_t, kMaxVars> beta{};
        std::uint32_t mask = 0;
        QuatD coef;
    };
    int n_ = 0;
    int max_exp_ = 0;
    std::vector<Term> terms_;
};

inline QuatD evaluate(const SliceFunction& f, std::span<const QuatD> x) {
    return CompiledSlice(f)(x);
}

}  // namespace qwirt
