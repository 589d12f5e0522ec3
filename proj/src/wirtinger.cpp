#include "qwirt/wirtinger.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace qwirt {

namespace {

NumericField numeric_wirtinger(const NumericField& f, int m, bool bar) {
    if (m < 1 || m > f.n()) throw ArityError("variable index " + std::to_string(m) + " outside 1.." + std::to_string(f.n()));
    if (m > kMaxNumericWirtinger) {
        throw InvalidArgument("numeric Wirtinger operators are capped at m <= " + std::to_string(kMaxNumericWirtinger));
    }
    auto global = [bar](const NumericField& g, int h) { return bar ? thetabar_global(g, h) : theta_global(g, h); };
    if (m == 1) return global(f, 1);
    const ComponentFamily family = gamma_components(f, m - 1);
    std::vector<NumericField> terms;
    for (std::uint32_t bits = 0; bits < family.size(); ++bits) terms.push_back(global(family.field(SubsetMask(bits)), m));
    const SubsetMask all = SubsetMask::prefix(m - 1);
    return terms.front().map([terms, all](std::span<const QuatD> p) {
        QuatD sum;
        for (std::uint32_t bits = 0; bits < terms.size(); ++bits) {
            sum += ordered_conj_product(all ^ SubsetMask(bits), p) * terms[bits](p);
        }
        return sum;
    });
}

std::string op_name(bool bar, int m) { return std::string(bar ? "thetabar_" : "theta_") + std::to_string(m); }

// Rank of a matrix over H under left row operations.
int quaternion_rank(std::vector<std::vector<QuatQ>> rows, int cols) {
    int rank = 0;
    for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        auto pivot = std::find_if(rows.begin() + rank, rows.end(), [c](const auto& r) { return !r[c].is_zero(); });
        if (pivot == rows.end()) continue;
        std::iter_swap(rows.begin() + rank, pivot);
        auto& p = rows[rank];
        const QuatQ inv = qinv(p[c]);
        for (auto& v : p) v = inv * v;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<int>(r) == rank || rows[r][c].is_zero()) continue;
            const QuatQ factor = rows[r][c];
            for (int k = 0; k < cols; ++k) rows[r][k] -= factor * p[k];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

SliceFunction wirtinger_theta(const SliceFunction& f, int m) { return slice_partial(f, m); }

SliceFunction wirtinger_thetabar(const SliceFunction& f, int m) { return slice_partial_conj(f, m); }

NumericField wirtinger_theta(const NumericField& f, int m) { return numeric_wirtinger(f, m, false); }

NumericField wirtinger_thetabar(const NumericField& f, int m) { return numeric_wirtinger(f, m, true); }

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Regular: return "regular";
        case Verdict::NotRegular: return "not regular";
        default: return "inconclusive";
    }
}

double RegularityReport::max_residual() const {
    double r = 0.0;
    for (const auto& o : residuals) r = std::max(r, o.max_residual);
    return r;
}

double SlicenessReport::max_residual() const {
    double r = 0.0;
    for (const auto& o : residuals) r = std::max(r, o.max_residual);
    return r;
}

RegularityReport check_regularity(const SliceFunction& f) {
    RegularityReport report{"symbolic", Verdict::Regular, 0.0, 0, 0, {}, {}};
    for (int m = 1; m <= f.n(); ++m) {
        const bool zero = wirtinger_thetabar(f, m).is_zero();
        report.residuals.push_back({op_name(true, m), m, zero ? 0.0 : 1.0});
        if (!zero) report.verdict = Verdict::NotRegular;
    }
    return report;
}

RegularityReport check_regularity(const NumericField& f, std::span<const Point> points, double tol, bool known_slice,
                                  std::uint64_t seed, Exec exec) {
    RegularityReport report{"numeric", Verdict::Regular, tol, static_cast<int>(points.size()), seed, {}, {}};
    const int top = std::min(f.n(), kMaxNumericWirtinger);
    if (f.n() > kMaxNumericWirtinger) {
        report.warnings.push_back("numeric θ̄_m evaluated for m <= " + std::to_string(kMaxNumericWirtinger) + " only");
    }
    if (top >= 3) report.warnings.push_back("numeric θ̄_3 nests three difference quotients");
    for (int m = 1; m <= top; ++m) {
        const NumericField op = wirtinger_thetabar(f, m);
        const double r = max_over([&op](const Point& p) { return abs(op(p)); }, points, exec);
        report.residuals.push_back({op_name(true, m), m, r});
        if (!(r <= tol)) report.verdict = Verdict::NotRegular;
    }
    if (report.verdict == Verdict::Regular && !known_slice) {
        if (!check_strong_sliceness(f, points, tol, exec).passes()) {
            report.verdict = Verdict::Inconclusive;
            report.warnings.push_back("θ̄ residuals vanish but the field fails the sliceness test");
        }
    }
    return report;
}

SlicenessReport check_strong_sliceness(const NumericField& f, std::span<const Point> points, double tol, Exec exec) {
    SlicenessReport report{{}, tol, static_cast<int>(points.size())};
    for (int m = 1; m <= f.n(); ++m) {
        const ComponentFamily family = gamma_components(f, m);
        for (std::uint32_t bits = 0; bits < family.size(); ++bits) {
            for (int h = 1; h <= m; ++h) {
                for (int i = 1; i <= 3; ++i) {
                    for (int j = i + 1; j <= 3; ++j) {
                        const NumericField l = tangential_L(family.field(SubsetMask(bits)), h, i, j);
                        const double r = max_over([&l](const Point& p) { return abs(l(p)); }, points, exec);
                        report.residuals.push_back({m, h, i, j, SubsetMask(bits), r});
                    }
                }
            }
        }
    }
    return report;
}

bool check_conjugation_identity(const SliceFunction& f, int m) {
    const SliceFunction fc = conjugate_slice(f);
    return conjugate_slice(wirtinger_theta(f, m)) == wirtinger_thetabar(fc, m) &&
           conjugate_slice(wirtinger_thetabar(f, m)) == wirtinger_theta(fc, m);
}

IndependenceReport check_independence(const SliceFunction& f, int m, std::span<const Point> points, FdConfig config) {
    if (m < 1 || m > f.n()) throw ArityError("variable index outside 1..n");
    const SubsetMask lower = SubsetMask::prefix(m - 1);
    for (const auto& [mono, c] : f.stem().terms()) {
        for (int h = 1; h < m; ++h) {
            if (mono.alpha(h) != 0 || mono.beta(h) != 0) throw InvalidArgument("f depends on a variable before x_m");
        }
    }
    if (!f.stem().avoids_masks(lower)) throw InvalidArgument("f has a component mask meeting {1..m-1}");

    IndependenceReport report{true, 0.0, 0.0};
    for (int h = 1; h < m; ++h) {
        report.lower_vanish = report.lower_vanish && wirtinger_theta(f, h).is_zero() && wirtinger_thetabar(f, h).is_zero();
    }
    const NumericField lift = NumericField::lift(f, config);
    const NumericField theta = theta_global(lift, m), thetabar = thetabar_global(lift, m);
    const CompiledSlice exact_theta(wirtinger_theta(f, m)), exact_thetabar(wirtinger_thetabar(f, m));
    for (const auto& p : points) {
        report.theta_deviation = std::max(report.theta_deviation, abs(theta(p) - exact_theta(p)));
        report.thetabar_deviation = std::max(report.thetabar_deviation, abs(thetabar(p) - exact_thetabar(p)));
    }
    return report;
}

HomogeneityReport homogeneous_kernel(const std::vector<int>& degrees) {
    const int n = static_cast<int>(degrees.size());
    if (n < 1 || n > kMaxVars) throw InvalidArgument("degree vector length must be in 1..kMaxVars");
    std::vector<MultiIndex> ls{MultiIndex{}};
    for (int m = 0; m < n; ++m) {
        std::vector<MultiIndex> next;
        for (const auto& l : ls) {
            for (int e = 0; e <= degrees[m]; ++e) {
                MultiIndex r = l;
                r.push_back(e);
                next.push_back(std::move(r));
            }
        }
        ls = std::move(next);
    }
    const QuatQ one(Rational(1));
    std::vector<SliceFunction> basis;
    int pure = -1;
    for (const auto& l : ls) {
        MultiIndex h(n);
        for (int m = 0; m < n; ++m) h[m] = degrees[m] - l[m];
        if (l == degrees) pure = static_cast<int>(basis.size());
        basis.push_back(monomial(l, h, one));
    }
    const int cols = static_cast<int>(basis.size());
    std::map<std::tuple<int, Monomial, SubsetMask>, std::vector<QuatQ>> equations;
    for (int b = 0; b < cols; ++b) {
        for (int m = 1; m <= n; ++m) {
            const SliceFunction d = wirtinger_thetabar(basis[b], m);
            for (const auto& [mono, c] : d.stem().terms()) {
                for (const auto& [k, a] : c.components()) {
                    auto& row = equations[{m, mono, k}];
                    row.resize(cols);
                    row[b] = a;
                }
            }
        }
    }
    std::vector<std::vector<QuatQ>> rows;
    for (auto& [key, row] : equations) rows.push_back(std::move(row));
    const int rank = quaternion_rank(std::move(rows), cols);
    bool pure_in_kernel = true;
    for (int m = 1; m <= n; ++m) pure_in_kernel = pure_in_kernel && wirtinger_thetabar(basis[pure], m).is_zero();
    return {degrees, cols, cols - rank, pure_in_kernel};
}

}  // namespace qwirt
