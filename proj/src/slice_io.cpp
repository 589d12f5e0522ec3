#include "qwirt/slice_io.hpp"

#include <algorithm>

namespace qwirt {

namespace {

// (z_m + w_m)/2 with z in the α slot and w in the β slot.
StemPolynomial alpha_substitute(int n, int m) {
    StemPolynomial p(n);
    Monomial z, w;
    z.set_alpha(m, 1);
    w.set_beta(m, 1);
    p.add(z, SubsetMask{}, QuatQ(Rational(1, 2)));
    p.add(w, SubsetMask{}, QuatQ(Rational(1, 2)));
    return p;
}

// -e_m (z_m - w_m)/2
StemPolynomial beta_substitute(int n, int m) {
    StemPolynomial p(n);
    Monomial z, w;
    z.set_alpha(m, 1);
    w.set_beta(m, 1);
    p.add(z, SubsetMask::single(m), QuatQ(Rational(-1, 2)));
    p.add(w, SubsetMask::single(m), QuatQ(Rational(1, 2)));
    return p;
}

StemPolynomial power(const StemPolynomial& p, int k) {
    StemPolynomial r(p.n());
    r.add(Monomial{}, SubsetMask{}, QuatQ(Rational(1)));
    for (int i = 0; i < k; ++i) r = r * p;
    return r;
}

std::string factor_string(const char* prefix, int m, int e) {
    std::string s = std::string(prefix) + "x" + std::to_string(m);
    if (e > 1) s += "^" + std::to_string(e);
    return s;
}

bool single_component(const QuatQ& q) {
    int nonzero = (q.w != 0) + (q.x != 0) + (q.y != 0) + (q.z != 0);
    return nonzero <= 1;
}

}  // namespace

std::map<ConjugateExponents, QuatQ> to_conjugate_basis(const SliceFunction& f) {
    const int n = f.n();
    std::vector<StemPolynomial> alpha_sub, beta_sub;
    for (int m = 1; m <= n; ++m) {
        alpha_sub.push_back(alpha_substitute(n, m));
        beta_sub.push_back(beta_substitute(n, m));
    }
    StemPolynomial expanded(n);
    for (const auto& [mono, c] : f.stem().terms()) {
        StemPolynomial t(n);
        t.add(Monomial{}, c);
        for (int m = 1; m <= n; ++m) {
            if (mono.alpha(m) > 0) t = t * power(alpha_sub[m - 1], mono.alpha(m));
            if (mono.beta(m) > 0) t = t * power(beta_sub[m - 1], mono.beta(m));
        }
        expanded += t;
    }
    std::map<ConjugateExponents, QuatQ> out;
    for (const auto& [mono, c] : expanded.terms()) {
        for (const auto& [k, a] : c.components()) {
            // Stem parity forces every e_K with K ≠ ∅ to cancel.
            if (!k.empty()) throw InvalidArgument("stem is not induced by a conjugate polynomial");
            MultiIndex l(n), h(n);
            for (int m = 1; m <= n; ++m) {
                l[m - 1] = mono.alpha(m);
                h[m - 1] = mono.beta(m);
            }
            out.emplace(ConjugateExponents{l, h}, a);
        }
    }
    return out;
}

std::string to_expression(const SliceFunction& f) {
    const auto basis = to_conjugate_basis(f);
    if (basis.empty()) return "0";
    // Display order: interleave (ℓ_1, h_1, ℓ_2, h_2, ...) and sort descending.
    std::vector<std::pair<std::vector<int>, const std::pair<const ConjugateExponents, QuatQ>*>> order;
    for (const auto& entry : basis) {
        std::vector<int> key;
        for (std::size_t m = 0; m < entry.first.first.size(); ++m) {
            key.push_back(entry.first.first[m]);
            key.push_back(entry.first.second[m]);
        }
        order.emplace_back(std::move(key), &entry);
    }
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::string out;
    for (const auto& [key, entry] : order) {
        const auto& [exps, a] = *entry;
        const auto& [l, h] = exps;
        std::string factors;
        for (std::size_t m = 0; m < l.size(); ++m) {
            if (l[m] > 0) factors += (factors.empty() ? "" : "*") + factor_string("", int(m) + 1, l[m]);
            if (h[m] > 0) factors += (factors.empty() ? "" : "*") + factor_string("~", int(m) + 1, h[m]);
        }
        QuatQ coef = a;
        const bool negative = single_component(coef) && (coef.w < 0 || coef.x < 0 || coef.y < 0 || coef.z < 0);
        if (negative) coef = -coef;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        const bool unit = coef == QuatQ(Rational(1));
        std::string coef_str = to_string(coef);
        if (!single_component(coef)) coef_str = "(" + coef_str + ")";
        if (factors.empty()) {
            out += coef_str;
        } else {
            out += factors;
            if (!unit) out += "*" + coef_str;
        }
    }
    return out;
}

nlohmann::json to_json(const SliceFunction& f) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [mono, c] : f.stem().terms()) {
        nlohmann::json alpha = nlohmann::json::array(), beta = nlohmann::json::array();
        for (int m = 1; m <= f.n(); ++m) {
            alpha.push_back(mono.alpha(m));
            beta.push_back(mono.beta(m));
        }
        nlohmann::json comps = nlohmann::json::array();
        for (const auto& [k, a] : c.components()) {
            comps.push_back({{"mask", k.bits}, {"quaternion", to_string(a)}});
        }
        terms.push_back({{"alpha_exps", alpha}, {"beta_exps", beta}, {"components", comps}});
    }
    return {{"n", f.n()}, {"terms", terms}};
}

SliceFunction slice_from_json(const nlohmann::json& j) {
    try {
        const int n = j.at("n").get<int>();
        StemPolynomial p(n);
        for (const auto& t : j.at("terms")) {
            const auto& alpha = t.at("alpha_exps");
            const auto& beta = t.at("beta_exps");
            if (static_cast<int>(alpha.size()) != n || static_cast<int>(beta.size()) != n) {
                throw InvalidArgument("exponent vector length differs from n");
            }
            Monomial mono;
            for (int m = 1; m <= n; ++m) {
                const int a = alpha[m - 1].get<int>(), b = beta[m - 1].get<int>();
                if (a < 0 || b < 0 || a + b > kMaxDegreePerVar) throw InvalidArgument("bad exponent");
                mono.set_alpha(m, a);
                mono.set_beta(m, b);
            }
            for (const auto& c : t.at("components")) {
                const auto bits = c.at("mask").get<std::uint32_t>();
                p.add(mono, SubsetMask(bits), parse_quaternion(c.at("quaternion").get<std::string>()));
            }
        }
        return SliceFunction(std::move(p));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed slice-function JSON: ") + e.what());
    }
}

nlohmann::json quaternion_json(const QuatD& q) { return nlohmann::json::array({q.w, q.x, q.y, q.z}); }

}  // namespace qwirt
