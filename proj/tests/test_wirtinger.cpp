#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qwirt/wirtinger.hpp"
#include "test_support.hpp"

using namespace qwirt;
using testing::dist;

namespace {

const QuatQ kOne(Rational(1));

SliceFunction x(int n, int m) { return SliceFunction::variable(n, m); }
SliceFunction xc(int n, int m) { return SliceFunction::conj_variable(n, m); }
SliceFunction operator*(const SliceFunction& f, const SliceFunction& g) { return slice_product(f, g); }

NumericField witness_field() {
    return NumericField(2, [](std::span<const QuatD> p) {
        const double dot = p[0].x * p[1].x + p[0].y * p[1].y + p[0].z * p[1].z;
        return QuatD(p[0].w) + p[1].imag() * (dot / p[1].imag_norm2());
    });
}

}  // namespace

TEST_CASE("symbolic Wirtinger examples") {
    const SliceFunction x1x2 = x(2, 1) * x(2, 2);
    CHECK(wirtinger_theta(x1x2, 2) == x(2, 1));
    CHECK(wirtinger_theta(x1x2, 1) == x(2, 2));
    CHECK(wirtinger_thetabar(xc(2, 1) * slice_power(xc(2, 2), 3), 2) ==
          (xc(2, 1) * slice_power(xc(2, 2), 2)).scaled(Rational(3)));
}

TEST_CASE("numeric Wirtinger operators follow the definition") {
    testing::Rng rng(81);
    const SliceFunction x1x2 = x(2, 1) * x(2, 2);
    const NumericField f = NumericField::lift(x1x2);
    const NumericField t2 = wirtinger_theta(f, 2), tb2 = wirtinger_thetabar(f, 2);
    for (const auto& p : sample_admissible(rng, 2, 10)) {
        CHECK(dist(t2(p), p[0]) < 1e-4);
        CHECK(abs(tb2(p)) < 1e-4);
    }
    for (int t = 0; t < 5; ++t) {
        const SliceFunction g = testing::random_slice_polynomial(rng, 2, 4, 4);
        const NumericField ng = NumericField::lift(g);
        const CompiledSlice e(wirtinger_theta(g, 2)), eb(wirtinger_thetabar(g, 2));
        const NumericField n2 = wirtinger_theta(ng, 2), nb2 = wirtinger_thetabar(ng, 2);
        for (const auto& p : sample_admissible(rng, 2, 10)) {
            CHECK(dist(n2(p), e(p)) < 1e-3);
            CHECK(dist(nb2(p), eb(p)) < 1e-3);
        }
    }
    CHECK_THROWS_AS(wirtinger_theta(NumericField::constant(4, QuatD(1.0)), 4), InvalidArgument);
}

TEST_CASE("power rules") {
    for (int n = 1; n <= 2; ++n) {
        for (int a = 0; a <= 3; ++a) {
            for (int b = 0; b <= 3 - a; ++b) {
                MultiIndex l(n, 0), zero(n, 0);
                l[0] = a;
                if (n == 2) l[1] = b;
                const SliceFunction xl = monomial(l, zero, kOne), xbl = monomial(zero, l, kOne);
                for (int m = 1; m <= n; ++m) {
                    MultiIndex lm = l;
                    SliceFunction expected = SliceFunction::zero(n), expected_bar = SliceFunction::zero(n);
                    if (l[m - 1] > 0) {
                        --lm[m - 1];
                        expected = monomial(lm, zero, kOne).scaled(Rational(l[m - 1]));
                        expected_bar = monomial(zero, lm, kOne).scaled(Rational(l[m - 1]));
                    }
                    CHECK(wirtinger_theta(xl, m) == expected);
                    CHECK(wirtinger_thetabar(xl, m).is_zero());
                    CHECK(wirtinger_theta(xbl, m).is_zero());
                    CHECK(wirtinger_thetabar(xbl, m) == expected_bar);
                }
            }
        }
    }
}

TEST_CASE("check_regularity symbolic") {
    const auto r = check_regularity(slice_power(x(2, 1), 2) * x(2, 2));
    CHECK(r.verdict == Verdict::Regular);
    const auto s = check_regularity(xc(1, 1));
    CHECK(s.verdict == Verdict::NotRegular);
    REQUIRE(s.residuals.size() == 1);
    CHECK(s.residuals[0].op == "thetabar_1");
    CHECK(s.residuals[0].max_residual == 1.0);
    CHECK(check_regularity(SliceFunction::constant(2, parse_quaternion("1-k"))).verdict == Verdict::Regular);
}

TEST_CASE("kernel is exactly the polynomials without conjugate factors") {
    testing::Rng rng(82);
    for (int t = 0; t < 20; ++t) {
        const SliceFunction f = testing::random_slice_polynomial(rng, 3, 4, 4, true);
        CHECK(check_regularity(f).verdict == Verdict::Regular);
        MultiIndex l(3, 0), h(3, 0);
        h[t % 3] = 1;
        const SliceFunction g = f + monomial(l, h, testing::random_nonzero_quat(rng));
        CHECK(check_regularity(g).verdict == Verdict::NotRegular);
    }
}

TEST_CASE("check_regularity numeric") {
    testing::Rng rng(83);
    const auto points = sample_admissible(rng, 2, 10);
    const NumericField reg = NumericField::lift(x(2, 1) * x(2, 2));
    CHECK(check_regularity(reg, points, 1e-3, true).verdict == Verdict::Regular);
    const NumericField not_reg = NumericField::lift(x(2, 1) * xc(2, 2));
    const auto r = check_regularity(not_reg, points, 1e-3, true);
    CHECK(r.verdict == Verdict::NotRegular);
    CHECK(r.residuals[0].max_residual < 1e-3);
    CHECK(r.residuals[1].max_residual > 0.1);

    // Pointwise x_1 x_2 on a ball away from the real axes.
    const NumericField pointwise(2, [](std::span<const QuatD> p) { return p[0] * p[1]; });
    const Point centre{QuatD(0.5, 1, 0.5, 0), QuatD(-0.2, 0, 1, 1)};
    const auto ball = sample_ball(rng, centre, 0.3, 10, 0.1);
    const auto b = check_regularity(pointwise, ball, 1e-3, false);
    CHECK(b.verdict == Verdict::Regular);
}

TEST_CASE("check_strong_sliceness") {
    testing::Rng rng(84);
    const auto points = sample_admissible(rng, 2, 6);
    const NumericField f = NumericField::lift(x(2, 1) + slice_power(x(2, 2), 2));
    const auto r = check_strong_sliceness(f, points, 1e-3);
    CHECK(r.passes());
    CHECK(r.residuals.size() == 6 + 24);
    CHECK(check_strong_sliceness(NumericField::constant(2, QuatD(1, 2, 0, 0)), points, 1e-3).max_residual() < 1e-8);
    const auto w = check_strong_sliceness(witness_field(), points, 1e-3);
    CHECK(w.max_residual() > 1e-2);
}

TEST_CASE("inconclusive verdict for a non-slice field with small θ̄") {
    testing::Rng rng(85);
    // Pointwise x_2 x_1 is not slice, and θ̄_1 of it vanishes while θ̄_2 does not.
    const NumericField reversed(2, [](std::span<const QuatD> p) { return p[1] * p[0]; });
    const auto points = sample_admissible(rng, 2, 6);
    const auto r = check_regularity(reversed, points, 1e-3, false);
    CHECK(r.verdict != Verdict::Regular);
    // Depends only on the direction of Im(x), so θ̄ = 0, yet it is not affine in J.
    const NumericField direction(1, [](std::span<const QuatD> p) { return QuatD(p[0].x * p[0].x / p[0].imag_norm2()); });
    const auto one_points = sample_admissible(rng, 1, 6);
    const auto d = check_regularity(direction, one_points, 1e-3, false);
    CHECK(d.residuals[0].max_residual < 1e-5);
    CHECK(d.verdict == Verdict::Inconclusive);
    // A slice field passes without the sliceness hint.
    const NumericField one_var(2, [](std::span<const QuatD> p) { return p[0] * p[0]; });
    CHECK(check_regularity(one_var, points, 1e-3, false).verdict == Verdict::Regular);
}

TEST_CASE("conjugation identity") {
    CHECK(check_conjugation_identity(slice_power(x(1, 1), 2), 1));
    CHECK(conjugate_slice(wirtinger_theta(slice_power(x(1, 1), 2), 1)) == xc(1, 1).scaled(Rational(2)));
    CHECK(check_conjugation_identity(SliceFunction::constant(1, parse_quaternion("2+j")), 1));
    CHECK(check_conjugation_identity(x(2, 1) * x(2, 2), 2));
    testing::Rng rng(86);
    for (int t = 0; t < 10; ++t) {
        const SliceFunction f = testing::random_slice_polynomial(rng, 3, 4, 4);
        for (int m = 1; m <= 3; ++m) CHECK(check_conjugation_identity(f, m));
    }
}

TEST_CASE("independence") {
    testing::Rng rng(87);
    const auto pts2 = sample_admissible(rng, 2, 10);
    const auto r = check_independence(slice_power(x(2, 2), 2), 2, pts2);
    CHECK(r.holds(1e-5));
    CHECK(wirtinger_theta(slice_power(x(2, 2), 2), 2) == x(2, 2).scaled(Rational(2)));
    CHECK(check_independence(SliceFunction::constant(2, kOne), 2, pts2).holds(1e-12));
    const auto pts4 = sample_admissible(rng, 4, 10);
    const SliceFunction x3x4 = x(4, 3) * x(4, 4);
    const auto s = check_independence(x3x4, 3, pts4);
    CHECK(s.lower_vanish);
    CHECK(s.holds(1e-5));
    CHECK_THROWS_AS(check_independence(x(2, 1) * x(2, 2), 2, pts2), InvalidArgument);
}

TEST_CASE("homogeneous slice-regular polynomials are pure powers") {
    for (int d1 = 0; d1 <= 4; ++d1) {
        for (int d2 = 0; d1 + d2 <= 4; ++d2) {
            const auto r = homogeneous_kernel({d1, d2});
            CHECK(r.basis_size == (d1 + 1) * (d2 + 1));
            CHECK(r.kernel_dimension == 1);
            CHECK(r.contains_pure_power);
        }
    }
}
