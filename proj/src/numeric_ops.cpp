#include "qwirt/numeric_ops.hpp"

#include <array>
#include <cmath>
#include <string>

namespace qwirt {

namespace {

double& coord(QuatD& q, int i) {
    switch (i) {
        case 0: return q.w;
        case 1: return q.x;
        case 2: return q.y;
        default: return q.z;
    }
}

double coord(const QuatD& q, int i) { return coord(const_cast<QuatD&>(q), i); }

void check_var(const NumericField& f, int m) {
    if (m < 1 || m > f.n()) {
        throw ArityError("variable index " + std::to_string(m) + " outside 1.." + std::to_string(f.n()));
    }
}

// Central difference of f in x_{m_i} at p with step h.
QuatD central(const NumericField& f, int m, int i, std::span<const QuatD> p, double h) {
    Point q(p.begin(), p.end());
    double& c = coord(q[m - 1], i);
    const double c0 = c;
    c = c0 + h;
    const QuatD plus = f(q);
    c = c0 - h;
    const QuatD minus = f(q);
    return (plus - minus) * (0.5 / h);
}

// ∂/∂x_{m_i} for i in [first, 3].
std::array<QuatD, 4> gradient(const NumericField& f, int m, std::span<const QuatD> p, double h, int first) {
    std::array<QuatD, 4> g{};
    for (int i = first; i < 4; ++i) g[i] = central(f, m, i, p, h);
    return g;
}

QuatD euler(const std::array<QuatD, 4>& g, const QuatD& x) {
    return g[1] * x.x + g[2] * x.y + g[3] * x.z;
}

}  // namespace

NumericField::NumericField(int n, Fn fn, int smoothness, FdConfig config)
    : n_(n), fn_(std::make_shared<const Fn>(std::move(fn))), budget_(smoothness), config_(config) {
    if (n < 1 || n > kMaxVars) throw InvalidArgument("numeric field needs 1 <= n <= " + std::to_string(kMaxVars));
}

NumericField NumericField::lift(const SliceFunction& f, FdConfig config) {
    auto compiled = std::make_shared<const CompiledSlice>(f);
    return NumericField(f.n(), [compiled](std::span<const QuatD> p) { return (*compiled)(p); },
                        kDefaultSmoothness, config);
}

NumericField NumericField::constant(int n, const QuatD& c, FdConfig config) {
    return NumericField(n, [c](std::span<const QuatD>) { return c; }, kDefaultSmoothness, config);
}

NumericField NumericField::derive(Fn fn, int cost) const {
    if (budget_ < cost) {
        throw DepthExhausted("smoothness budget " + std::to_string(budget_) + " cannot cover a derivative of order " +
                             std::to_string(cost));
    }
    NumericField r(n_, std::move(fn), budget_ - cost, config_);
    r.depth_ = depth_ + cost;
    return r;
}

NumericField NumericField::map(Fn fn) const {
    NumericField r(n_, std::move(fn), budget_, config_);
    r.depth_ = depth_;
    return r;
}

void require_off_axis(std::span<const QuatD> p, int m, double delta) {
    if (std::sqrt(p[m - 1].imag_norm2()) < delta) {
        throw NearRealAxis("|Im(x" + std::to_string(m) + ")| is below the exclusion band " + std::to_string(delta));
    }
}

NumericField partial(const NumericField& f, int m, int i) {
    check_var(f, m);
    if (i < 0 || i > 3) throw InvalidArgument("coordinate index must be in 0..3");
    const double h = f.step();
    return f.derive([f, m, i, h](std::span<const QuatD> p) { return central(f, m, i, p, h); });
}

NumericField theta_global(const NumericField& f, int m) {
    check_var(f, m);
    const double h = f.step(), delta = f.config().delta;
    return f.derive([f, m, h, delta](std::span<const QuatD> p) {
        require_off_axis(p, m, delta);
        const auto g = gradient(f, m, p, h, 0);
        return 0.5 * (g[0] + qinv(p[m - 1].imag()) * euler(g, p[m - 1]));
    });
}

NumericField thetabar_global(const NumericField& f, int m) {
    check_var(f, m);
    const double h = f.step(), delta = f.config().delta;
    return f.derive([f, m, h, delta](std::span<const QuatD> p) {
        require_off_axis(p, m, delta);
        const auto g = gradient(f, m, p, h, 0);
        return 0.5 * (g[0] - qinv(p[m - 1].imag()) * euler(g, p[m - 1]));
    });
}

NumericField tangential_L(const NumericField& f, int m, int i, int j) {
    check_var(f, m);
    if (i < 1 || i > 3 || j < 1 || j > 3) throw InvalidArgument("tangential indices must be in 1..3");
    const double h = f.step();
    return f.derive([f, m, i, j, h](std::span<const QuatD> p) {
        if (i == j) return QuatD{};
        const QuatD& x = p[m - 1];
        return central(f, m, j, p, h) * coord(x, i) - central(f, m, i, p, h) * coord(x, j);
    });
}

NumericField gamma(const NumericField& f, int m) {
    check_var(f, m);
    const double h = f.step();
    return f.derive([f, m, h](std::span<const QuatD> p) {
        const auto g = gradient(f, m, p, h, 1);
        const QuatD& x = p[m - 1];
        const QuatD l23 = g[3] * x.y - g[2] * x.z;
        const QuatD l13 = g[3] * x.x - g[1] * x.z;
        const QuatD l12 = g[2] * x.x - g[1] * x.y;
        return -(QuatD::i() * l23) + QuatD::j() * l13 - QuatD::k() * l12;
    });
}

NumericField crf(const NumericField& f, int m) {
    check_var(f, m);
    const double h = f.step();
    return f.derive([f, m, h](std::span<const QuatD> p) {
        const auto g = gradient(f, m, p, h, 0);
        return 0.5 * (g[0] + QuatD::i() * g[1] + QuatD::j() * g[2] + QuatD::k() * g[3]);
    });
}

NumericField laplacian(const NumericField& f, int m) {
    check_var(f, m);
    const double h = f.step();
    return f.derive(
        [f, m, h](std::span<const QuatD> p) {
            Point q(p.begin(), p.end());
            const QuatD centre = f(p);
            QuatD sum;
            for (int i = 0; i < 4; ++i) {
                double& c = coord(q[m - 1], i);
                const double c0 = c;
                c = c0 + h;
                const QuatD plus = f(q);
                c = c0 - h;
                const QuatD minus = f(q);
                c = c0;
                sum += (plus + minus - 2.0 * centre) * (1.0 / (h * h));
            }
            return sum;
        },
        2);
}

NumericField left_mul_variable(const NumericField& f, int m) {
    check_var(f, m);
    return f.map([f, m](std::span<const QuatD> p) { return p[m - 1] * f(p); });
}

}  // namespace qwirt
