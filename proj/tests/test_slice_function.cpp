#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qwirt/slice_function.hpp"
#include "qwirt/slice_io.hpp"
#include "test_support.hpp"

using namespace qwirt;
using testing::dist;

namespace {

const QuatQ kOne(Rational(1));

SliceFunction x(int n, int m) { return SliceFunction::variable(n, m); }
SliceFunction xc(int n, int m) { return SliceFunction::conj_variable(n, m); }
SliceFunction c(int n, const char* lit) { return SliceFunction::constant(n, parse_quaternion(lit)); }
SliceFunction operator*(const SliceFunction& f, const SliceFunction& g) { return slice_product(f, g); }

Monomial mono(std::initializer_list<int> alpha, std::initializer_list<int> beta) {
    Monomial r;
    int m = 1;
    for (int e : alpha) r.set_alpha(m++, e);
    m = 1;
    for (int e : beta) r.set_beta(m++, e);
    return r;
}

// Conjugates the m-th coordinate of a point.
std::vector<QuatD> conj_at(std::vector<QuatD> p, int m) {
    p[m - 1] = p[m - 1].conj();
    return p;
}

}  // namespace

TEST_CASE("monomial examples") {
    StemPolynomial x1(2);
    x1.add(mono({1, 0}, {0, 0}), SubsetMask{}, kOne);
    x1.add(mono({0, 0}, {1, 0}), SubsetMask::single(1), kOne);
    CHECK(monomial({1, 0}, {0, 0}, kOne).stem() == x1);

    // (e_∅ α + e_1 β)^2 expanded by hand with e_1^2 = -1.
    StemPolynomial sq(1);
    sq.add(mono({2}, {0}), SubsetMask{}, kOne);
    sq.add(mono({0}, {2}), SubsetMask{}, -kOne);
    sq.add(mono({1}, {1}), SubsetMask::single(1), QuatQ(Rational(2)));
    CHECK(monomial({2}, {0}, kOne).stem() == sq);

    StemPolynomial conj(1);
    conj.add(mono({1}, {0}), SubsetMask{}, kOne);
    conj.add(mono({0}, {1}), SubsetMask::single(1), -kOne);
    CHECK(monomial({0}, {1}, kOne).stem() == conj);
}

TEST_CASE("stem parity is enforced") {
    StemPolynomial bad(1);
    bad.add(mono({0}, {1}), SubsetMask{}, kOne);
    CHECK_THROWS_AS(SliceFunction{bad}, InvalidArgument);
    StemPolynomial bad2(2);
    bad2.add(mono({1, 0}, {0, 0}), SubsetMask::single(2), kOne);
    CHECK_THROWS_AS(SliceFunction{bad2}, InvalidArgument);
}

TEST_CASE("degree cap") {
    CHECK_NOTHROW(slice_power(x(1, 1), 32));
    CHECK_THROWS_AS(slice_power(x(1, 1), 33), InvalidArgument);
}

TEST_CASE("slice_product examples") {
    CHECK(x(2, 2) * x(2, 1) == monomial({1, 1}, {0, 0}, kOne));
    const SliceFunction f = monomial({1, 2}, {1, 0}, parse_quaternion("1+2i-k"));
    CHECK(f * SliceFunction::constant(2, kOne) == f);
    StemPolynomial norm2(1);
    norm2.add(mono({2}, {0}), SubsetMask{}, kOne);
    norm2.add(mono({0}, {2}), SubsetMask{}, kOne);
    CHECK((x(1, 1) * xc(1, 1)).stem() == norm2);
    const std::vector<QuatD> p{QuatD(0.5, 1.0, -2.0, 0.25)};
    CHECK(evaluate(x(1, 1) * xc(1, 1), p).w == doctest::Approx(p[0].norm2()));
}

TEST_CASE("evaluate examples") {
    const SliceFunction x1x2 = x(2, 1) * x(2, 2);
    CHECK(evaluate(x1x2, std::vector<QuatD>{QuatD::i(), QuatD::j()}) == QuatD::k());
    const std::vector<QuatD> p{QuatD(1, 1, 0, 0), QuatD(0, 0, 2, 0)};
    CHECK(dist(evaluate(x1x2, p), p[0] * p[1]) < 1e-14);
    CHECK(dist(evaluate(x1x2, p), QuatD(0, 0, 2, 2)) < 1e-14);
    CHECK(evaluate(slice_power(x(1, 1), 2), std::vector<QuatD>{QuatD(-1.5)}) == QuatD(2.25));
}

TEST_CASE("polynomials with ordered variables evaluate as pointwise products") {
    testing::Rng rng(31);
    for (int t = 0; t < 30; ++t) {
        const auto p = testing::random_admissible_point(rng, 3);
        const QuatQ a = testing::random_quat(rng);
        const SliceFunction f = monomial({2, 1, 3}, {0, 0, 0}, a);
        const QuatD expected = p[0] * p[0] * p[1] * p[2] * p[2] * p[2] * to_double(a);
        CHECK(dist(evaluate(f, p), expected) < 1e-10 * (1 + abs(expected)));
        const SliceFunction g = monomial({1, 0, 1}, {1, 2, 0}, a);
        const QuatD eg = p[0] * p[0].conj() * p[1].conj() * p[1].conj() * p[2] * to_double(a);
        CHECK(dist(evaluate(g, p), eg) < 1e-10 * (1 + abs(eg)));
    }
}

TEST_CASE("the unit chosen on the real axis does not matter") {
    testing::Rng rng(32);
    const SliceFunction f = testing::random_slice_polynomial(rng, 2, 4, 6);
    const CompiledSlice cf(f);
    const std::vector<double> alpha{0.7, -0.4}, beta{0.0, 1.3};
    std::vector<QuatD> u1{QuatD::i(), QuatD::k()}, u2{QuatD(0, 0.6, 0.8, 0), QuatD::k()};
    CHECK(dist(cf.eval_stem(alpha, beta, u1), cf.eval_stem(alpha, beta, u2)) < 1e-13);
}

TEST_CASE("spherical value examples") {
    CHECK(spherical_value(x(1, 1), 1) == SliceFunction::real_part(1, 1));
    CHECK(spherical_value(xc(1, 1), 1) == SliceFunction::real_part(1, 1));
    const SliceFunction x1x2 = x(2, 1) * x(2, 2);
    CHECK(spherical_value(x1x2, 2) == x(2, 1) * SliceFunction::real_part(2, 2));
    // Averaging oracle: ½(f(x) + f(x with x_2 conjugated)).
    testing::Rng rng(33);
    for (int t = 0; t < 10; ++t) {
        const auto p = testing::random_admissible_point(rng, 2);
        const QuatD avg = 0.5 * (evaluate(x1x2, p) + evaluate(x1x2, conj_at(p, 2)));
        CHECK(dist(evaluate(spherical_value(x1x2, 2), p), avg) < 1e-12);
    }
}

TEST_CASE("spherical derivative examples") {
    CHECK(spherical_derivative(x(1, 1), 1) == SliceFunction::constant(1, kOne));
    const SliceFunction sq = slice_power(x(1, 1), 2);
    CHECK(spherical_derivative(sq, 1) == SliceFunction::real_part(1, 1).scaled(Rational(2)));
    CHECK(spherical_derivative(x(2, 2), 1).is_zero());
    // Oracle ½ Im(x)^{-1} (f(x) - f(x̄)) at random points.
    testing::Rng rng(34);
    for (int t = 0; t < 10; ++t) {
        const auto p = testing::random_admissible_point(rng, 1);
        const QuatD oracle = 0.5 * qinv(p[0].imag()) * (evaluate(sq, p) - evaluate(sq, conj_at(p, 1)));
        CHECK(dist(evaluate(spherical_derivative(sq, 1), p), oracle) < 1e-12);
    }
}

TEST_CASE("spherical derivative matches the pointwise quotient after truncation") {
    testing::Rng rng(35);
    for (int t = 0; t < 10; ++t) {
        const SliceFunction f = testing::random_slice_polynomial(rng, 3, 4, 5);
        // Truncating in x_1 removes every mask containing 1, so x_2 leads.
        for (const SliceFunction& g : {spherical_value(f, 1), spherical_derivative(f, 1)}) {
            const auto p = testing::random_admissible_point(rng, 3);
            const QuatD oracle = 0.5 * qinv(p[1].imag()) * (evaluate(g, p) - evaluate(g, conj_at(p, 2)));
            const QuatD got = evaluate(spherical_derivative(g, 2), p);
            CHECK(dist(got, oracle) < 1e-9 * (1 + abs(oracle)));
        }
    }
}

TEST_CASE("reconstruction f = f°_s + Im(x_m)·f'_s") {
    testing::Rng rng(36);
    for (int t = 0; t < 20; ++t) {
        const SliceFunction f = testing::random_slice_polynomial(rng, 3, 4, 5);
        for (int m = 1; m <= 3; ++m) {
            const SliceFunction rebuilt = spherical_value(f, m) +
                                          SliceFunction::imag_part(3, m) * spherical_derivative(f, m);
            CHECK(rebuilt == f);
        }
        // Pointwise in x_1, where Im(x_1) multiplies from the left.
        const CompiledSlice value(spherical_value(f, 1)), deriv(spherical_derivative(f, 1)), cf(f);
        for (int s = 0; s < 50; ++s) {
            const auto p = testing::random_admissible_point(rng, 3);
            const QuatD expected = cf(p);
            CHECK(dist(value(p) + p[0].imag() * deriv(p), expected) < 1e-10 * (1 + abs(expected)));
        }
    }
}

TEST_CASE("product rule for the spherical derivative") {
    testing::Rng rng(37);
    for (int t = 0; t < 20; ++t) {
        const SliceFunction f = testing::random_slice_polynomial(rng, 3, 3, 4);
        const SliceFunction g = testing::random_slice_polynomial(rng, 3, 3, 4);
        for (int m = 1; m <= 3; ++m) {
            CHECK(spherical_derivative(f * g, m) ==
                  spherical_derivative(f, m) * spherical_value(g, m) +
                      spherical_value(f, m) * spherical_derivative(g, m));
        }
    }
}

TEST_CASE("slice partial examples") {
    const SliceFunction sq = slice_power(x(1, 1), 2);
    CHECK(slice_partial(sq, 1) == x(1, 1).scaled(Rational(2)));
    CHECK(slice_partial_conj(sq, 1).is_zero());
    CHECK(slice_partial_conj(xc(2, 2), 2) == SliceFunction::constant(2, kOne));
    CHECK(slice_partial(xc(2, 2), 2).is_zero());
}

TEST_CASE("slice partials: Leibniz and commutation") {
    testing::Rng rng(38);
    for (int t = 0; t < 20; ++t) {
        const SliceFunction f = testing::random_slice_polynomial(rng, 3, 3, 4);
        const SliceFunction g = testing::random_slice_polynomial(rng, 3, 3, 4);
        for (int m = 1; m <= 3; ++m) {
            CHECK(slice_partial(f * g, m) == slice_partial(f, m) * g + f * slice_partial(g, m));
            CHECK(slice_partial_conj(f * g, m) == slice_partial_conj(f, m) * g + f * slice_partial_conj(g, m));
            for (int h = 1; h <= 3; ++h) {
                CHECK(slice_partial(slice_partial_conj(f, h), m) == slice_partial_conj(slice_partial(f, m), h));
                CHECK(slice_partial(slice_partial(f, h), m) == slice_partial(slice_partial(f, m), h));
                CHECK(slice_partial_conj(slice_partial_conj(f, h), m) ==
                      slice_partial_conj(slice_partial_conj(f, m), h));
            }
        }
    }
}

TEST_CASE("conjugate slice function") {
    CHECK(conjugate_slice(x(1, 1)) == xc(1, 1));
    CHECK(conjugate_slice(x(2, 1) * x(2, 2)) == xc(2, 1) * xc(2, 2));
    CHECK(conjugate_slice(c(2, "3-2j")) == c(2, "3-2j"));
    testing::Rng rng(39);
    for (int t = 0; t < 20; ++t) {
        const SliceFunction f = testing::random_slice_polynomial(rng, 3, 3, 4);
        const SliceFunction g = testing::random_slice_polynomial(rng, 3, 3, 4);
        CHECK(conjugate_slice(f * g) == conjugate_slice(f) * conjugate_slice(g));
        CHECK(conjugate_slice(conjugate_slice(f)) == f);
    }
}

TEST_CASE("slice product is associative") {
    testing::Rng rng(40);
    for (int t = 0; t < 30; ++t) {
        const SliceFunction f = testing::random_slice_polynomial(rng, 3, 2, 1);
        const SliceFunction g = testing::random_slice_polynomial(rng, 3, 2, 1);
        const SliceFunction h = testing::random_slice_polynomial(rng, 3, 2, 1);
        CHECK((f * g) * h == f * (g * h));
    }
}

TEST_CASE("regularity") {
    CHECK(is_slice_regular(monomial({2, 1}, {0, 0}, kOne)));
    CHECK_FALSE(is_slice_regular(xc(1, 1)));
    CHECK(is_slice_regular(c(2, "1-i+j")));
    CHECK_FALSE(is_slice_regular(x(2, 1) * xc(2, 1)));
}

TEST_CASE("JSON form and conjugate basis round trip") {
    testing::Rng rng(41);
    for (int t = 0; t < 30; ++t) {
        const SliceFunction f = testing::random_slice_polynomial(rng, 3, 4, 5);
        CHECK(slice_from_json(to_json(f)) == f);
        SliceFunction rebuilt = SliceFunction::zero(3);
        for (const auto& [exps, a] : to_conjugate_basis(f)) rebuilt += monomial(exps.first, exps.second, a);
        CHECK(rebuilt == f);
    }
    const auto j = to_json(x(1, 1));
    CHECK(j["n"] == 1);
    CHECK(j["terms"].size() == 2);
    CHECK_THROWS_AS(slice_from_json(nlohmann::json{{"n", 1}}), InvalidArgument);
}

TEST_CASE("expression printing") {
    CHECK(to_expression(x(2, 1) * x(2, 2)) == "x1*x2");
    CHECK(to_expression(SliceFunction::zero(1)) == "0");
    CHECK(to_expression(c(1, "1+2i")) == "(1+2i)");
    CHECK(to_expression(slice_power(x(1, 1), 2).scaled(Rational(-3))) == "-x1^2*3");
    CHECK(to_expression(x(1, 1) - xc(1, 1).times_right(QuatQ::k())) == "x1 - ~x1*k");
    CHECK(to_expression(SliceFunction::real_part(1, 1).scaled(Rational(2))) == "x1 + ~x1");
}
