#include "qwirt/slice_function.hpp"

#include <cmath>
#include <string>

namespace qwirt {

namespace {

void check_var(int n, int m, const char* what) {
    if (m < 1 || m > n) {
        throw InvalidArgument(std::string(what) + ": variable index " + std::to_string(m) +
                              " outside 1.." + std::to_string(n));
    }
}

void check_same_n(int a, int b) {
    if (a != b) {
        throw InvalidArgument("ambient dimensions differ (" + std::to_string(a) + " vs " +
                              std::to_string(b) + ")");
    }
}

}  // namespace

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int m = 1; m <= kMaxVars; ++m) {
        const int ea = a.alpha(m) + b.alpha(m);
        const int eb = a.beta(m) + b.beta(m);
        if (ea + eb > kMaxDegreePerVar) {
            throw InvalidArgument("degree in x_" + std::to_string(m) + " exceeds the cap of " +
                                  std::to_string(kMaxDegreePerVar));
        }
        r.set_alpha(m, ea);
        r.set_beta(m, eb);
    }
    return r;
}

// --- StemPolynomial ---------------------------------------------------------

StemPolynomial::StemPolynomial(int n) : n_(n) {
    if (n < 1 || n > kMaxVars) {
        throw InvalidArgument("number of variables must be in 1.." + std::to_string(kMaxVars));
    }
}

void StemPolynomial::add(const Monomial& mono, const StemElement& coef) {
    if (coef.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(mono, coef);
    if (inserted) return;
    it->second += coef;
    if (it->second.is_zero()) terms_.erase(it);
}

void StemPolynomial::add(const Monomial& mono, SubsetMask k, const QuatQ& a) {
    add(mono, StemElement(k, a));
}

StemPolynomial& StemPolynomial::operator+=(const StemPolynomial& o) {
    check_same_n(n_, o.n_);
    for (const auto& [mono, c] : o.terms_) add(mono, c);
    return *this;
}

StemPolynomial& StemPolynomial::operator-=(const StemPolynomial& o) {
    check_same_n(n_, o.n_);
    for (const auto& [mono, c] : o.terms_) add(mono, -c);
    return *this;
}

StemPolynomial StemPolynomial::operator-() const {
    StemPolynomial r(n_);
    for (const auto& [mono, c] : terms_) r.terms_.emplace(mono, -c);
    return r;
}

StemPolynomial operator*(const StemPolynomial& a, const StemPolynomial& b) {
    check_same_n(a.n_, b.n_);
    StemPolynomial r(a.n_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) r.add(ma * mb, stem_mul(ca, cb));
    }
    return r;
}

StemPolynomial StemPolynomial::times_right(const QuatQ& a) const {
    StemPolynomial r(n_);
    for (const auto& [mono, c] : terms_) r.add(mono, c.times_right(a));
    return r;
}

StemPolynomial StemPolynomial::scaled(const Rational& s) const {
    StemPolynomial r(n_);
    if (s == 0) return r;
    for (const auto& [mono, c] : terms_) r.terms_.emplace(mono, c.scaled(s));
    return r;
}

StemPolynomial StemPolynomial::d_alpha(int m) const {
    check_var(n_, m, "d_alpha");
    StemPolynomial r(n_);
    for (const auto& [mono, c] : terms_) {
        const int e = mono.alpha(m);
        if (e == 0) continue;
        Monomial d = mono;
        d.set_alpha(m, e - 1);
        r.add(d, c.scaled(Rational(e)));
    }
    return r;
}

StemPolynomial StemPolynomial::d_beta(int m) const {
    check_var(n_, m, "d_beta");
    StemPolynomial r(n_);
    for (const auto& [mono, c] : terms_) {
        const int e = mono.beta(m);
        if (e == 0) continue;
        Monomial d = mono;
        d.set_beta(m, e - 1);
        r.add(d, c.scaled(Rational(e)));
    }
    return r;
}

StemPolynomial StemPolynomial::apply_J(int h) const {
    check_var(n_, h, "apply_J");
    StemPolynomial r(n_);
    for (const auto& [mono, c] : terms_) r.add(mono, qwirt::apply_J(h, c));
    return r;
}

bool StemPolynomial::has_stem_parity() const {
    for (const auto& [mono, c] : terms_) {
        for (const auto& [k, a] : c.components()) {
            if ((k.bits >> n_) != 0) return false;
            for (int h = 1; h <= n_; ++h) {
                if ((mono.beta(h) % 2 == 1) != k.contains(h)) return false;
            }
        }
        for (int h = n_ + 1; h <= kMaxVars; ++h) {
            if (mono.alpha(h) != 0 || mono.beta(h) != 0) return false;
        }
    }
    return true;
}

bool StemPolynomial::avoids_masks(SubsetMask k) const {
    for (const auto& [mono, c] : terms_) {
        for (const auto& [mask, a] : c.components()) {
            if (mask.intersects(k)) return false;
        }
    }
    return true;
}

// --- SliceFunction ----------------------------------------------------------

SliceFunction::SliceFunction(StemPolynomial stem) : stem_(std::move(stem)) {
    if (!stem_.has_stem_parity()) throw InvalidArgument("polynomial violates stem parity");
}

SliceFunction SliceFunction::constant(int n, const QuatQ& a) {
    StemPolynomial p(n);
    p.add(Monomial{}, SubsetMask{}, a);
    return SliceFunction(std::move(p));
}

SliceFunction SliceFunction::variable(int n, int m) {
    check_var(n, m, "variable");
    StemPolynomial p(n);
    Monomial a, b;
    a.set_alpha(m, 1);
    b.set_beta(m, 1);
    p.add(a, SubsetMask{}, QuatQ(Rational(1)));
    p.add(b, SubsetMask::single(m), QuatQ(Rational(1)));
    return SliceFunction(std::move(p));
}

SliceFunction SliceFunction::conj_variable(int n, int m) {
    check_var(n, m, "conj_variable");
    StemPolynomial p(n);
    Monomial a, b;
    a.set_alpha(m, 1);
    b.set_beta(m, 1);
    p.add(a, SubsetMask{}, QuatQ(Rational(1)));
    p.add(b, SubsetMask::single(m), QuatQ(Rational(-1)));
    return SliceFunction(std::move(p));
}

SliceFunction SliceFunction::real_part(int n, int m) {
    check_var(n, m, "real_part");
    StemPolynomial p(n);
    Monomial a;
    a.set_alpha(m, 1);
    p.add(a, SubsetMask{}, QuatQ(Rational(1)));
    return SliceFunction(std::move(p));
}

SliceFunction SliceFunction::imag_part(int n, int m) {
    check_var(n, m, "imag_part");
    StemPolynomial p(n);
    Monomial b;
    b.set_beta(m, 1);
    p.add(b, SubsetMask::single(m), QuatQ(Rational(1)));
    return SliceFunction(std::move(p));
}

SliceFunction& SliceFunction::operator+=(const SliceFunction& o) {
    stem_ += o.stem_;
    return *this;
}

SliceFunction& SliceFunction::operator-=(const SliceFunction& o) {
    stem_ -= o.stem_;
    return *this;
}

SliceFunction monomial(const MultiIndex& l, const MultiIndex& h, const QuatQ& a) {
    if (l.size() != h.size() || l.empty()) {
        throw InvalidArgument("monomial: multi-indices must be non-empty and of equal length");
    }
    const int n = static_cast<int>(l.size());
    SliceFunction r = SliceFunction::constant(n, QuatQ(Rational(1)));
    for (int m = 1; m <= n; ++m) {
        if (l[m - 1] < 0 || h[m - 1] < 0) throw InvalidArgument("monomial: negative exponent");
        r = slice_product(r, slice_power(SliceFunction::variable(n, m), l[m - 1]));
        r = slice_product(r, slice_power(SliceFunction::conj_variable(n, m), h[m - 1]));
    }
    return r.times_right(a);
}

SliceFunction slice_product(const SliceFunction& f, const SliceFunction& g) {
    return SliceFunction(f.stem() * g.stem());
}

SliceFunction slice_power(const SliceFunction& f, int k) {
    if (k < 0) throw InvalidArgument("slice_power: negative exponent");
    SliceFunction r = SliceFunction::constant(f.n(), QuatQ(Rational(1)));
    SliceFunction base = f;
    while (k > 0) {
        if (k & 1) r = slice_product(r, base);
        k >>= 1;
        if (k > 0) base = slice_product(base, base);
    }
    return r;
}

SliceFunction spherical_value(const SliceFunction& f, int m) {
    check_var(f.n(), m, "spherical_value");
    StemPolynomial r(f.n());
    for (const auto& [mono, c] : f.stem().terms()) {
        for (const auto& [k, a] : c.components()) {
            if (!k.contains(m)) r.add(mono, k, a);
        }
    }
    return SliceFunction(std::move(r));
}

SliceFunction spherical_derivative(const SliceFunction& f, int m) {
    check_var(f.n(), m, "spherical_derivative");
    StemPolynomial r(f.n());
    for (const auto& [mono, c] : f.stem().terms()) {
        for (const auto& [k, a] : c.components()) {
            if (!k.contains(m)) continue;
            // Parity makes the β_m exponent odd here, so the division is exact.
            Monomial d = mono;
            d.set_beta(m, mono.beta(m) - 1);
            r.add(d, k.without(m), a);
        }
    }
    return SliceFunction(std::move(r));
}

SliceFunction slice_partial(const SliceFunction& f, int m) {
    check_var(f.n(), m, "slice_partial");
    const StemPolynomial& F = f.stem();
    return SliceFunction((F.d_alpha(m) - F.d_beta(m).apply_J(m)).scaled(Rational(1, 2)));
}

SliceFunction slice_partial_conj(const SliceFunction& f, int m) {
    check_var(f.n(), m, "slice_partial_conj");
    const StemPolynomial& F = f.stem();
    return SliceFunction((F.d_alpha(m) + F.d_beta(m).apply_J(m)).scaled(Rational(1, 2)));
}

SliceFunction conjugate_slice(const SliceFunction& f) {
    StemPolynomial r(f.n());
    for (const auto& [mono, c] : f.stem().terms()) {
        for (const auto& [k, a] : c.components()) r.add(mono, k, k.size() % 2 == 0 ? a : -a);
    }
    return SliceFunction(std::move(r));
}

bool is_slice_regular(const SliceFunction& f) {
    for (int m = 1; m <= f.n(); ++m) {
        if (!slice_partial_conj(f, m).is_zero()) return false;
    }
    return true;
}

// --- CompiledSlice ----------------------------------------------------------

CompiledSlice::CompiledSlice(const SliceFunction& f) : n_(f.n()) {
    for (const auto& [mono, c] : f.stem().terms()) {
        for (const auto& [k, a] : c.components()) {
            Term t;
            for (int m = 1; m <= n_; ++m) {
                t.alpha[m - 1] = static_cast<std::uint8_t>(mono.alpha(m));
                t.beta[m - 1] = static_cast<std::uint8_t>(mono.beta(m));
                max_exp_ = std::max({max_exp_, mono.alpha(m), mono.beta(m)});
            }
            t.mask = k.bits;
            t.coef = to_double(a);
            terms_.push_back(t);
        }
    }
}

QuatD CompiledSlice::operator()(std::span<const QuatD> x) const {
    if (static_cast<int>(x.size()) != n_) {
        throw InvalidArgument("point has " + std::to_string(x.size()) + " coordinates, expected " +
                              std::to_string(n_));
    }
    std::array<double, kMaxVars> alpha{}, beta{};
    std::array<QuatD, kMaxVars> units{};
    for (int m = 0; m < n_; ++m) {
        alpha[m] = x[m].w;
        beta[m] = std::sqrt(x[m].imag_norm2());
        units[m] = beta[m] > 0.0 ? imaginary_unit(x[m]) : QuatD::i();
    }
    return eval_stem(std::span<const double>(alpha.data(), n_), std::span<const double>(beta.data(), n_),
                     std::span<const QuatD>(units.data(), n_));
}

QuatD CompiledSlice::eval_stem(std::span<const double> alpha, std::span<const double> beta,
                               std::span<const QuatD> units) const {
    std::array<std::array<double, kMaxDegreePerVar + 1>, kMaxVars> pa{}, pb{};
    for (int m = 0; m < n_; ++m) {
        pa[m][0] = pb[m][0] = 1.0;
        for (int e = 1; e <= max_exp_; ++e) {
            pa[m][e] = pa[m][e - 1] * alpha[m];
            pb[m][e] = pb[m][e - 1] * beta[m];
        }
    }
    // J_K = J_{k_1} ... J_{k_p} with k_1 < ... < k_p.
    std::array<QuatD, (1u << kMaxVars)> jk{};
    jk[0] = QuatD(1.0);
    for (std::uint32_t k = 1; k < (1u << n_); ++k) {
        const int top = 31 - std::countl_zero(k);
        jk[k] = jk[k & ~(1u << top)] * units[top];
    }
    QuatD sum;
    for (const Term& t : terms_) {
        double mono = 1.0;
        for (int m = 0; m < n_; ++m) mono *= pa[m][t.alpha[m]] * pb[m][t.beta[m]];
        sum += jk[t.mask] * (t.coef * mono);
    }
    return sum;
}

}  // namespace qwirt
