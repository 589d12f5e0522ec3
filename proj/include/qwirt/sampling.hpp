#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "qwirt/numeric_ops.hpp"

namespace qwirt {

using Rng = std::mt19937_64;

enum class Exec { Serial, Parallel };

/// Points with Re(x_m) in [re_lo, re_hi] and |Im(x_m)| in [im_lo, im_hi]
/// along a uniformly random imaginary direction.
struct AdmissibleBox {
    double re_lo = -1.0, re_hi = 1.0;
    double im_lo = 0.3, im_hi = 2.0;
};

std::vector<Point> sample_admissible(Rng& rng, int n, int count, const AdmissibleBox& box = {});

/// Uniform points of the ball |p - centre| < radius in R^{4n}. Points with
/// |Im(p_m)| < delta for some m are rejected.
std::vector<Point> sample_ball(Rng& rng, const Point& centre, double radius, int count, double delta);

/// Uniformly random imaginary unit.
QuatD random_unit(Rng& rng);

/// Seed from --seed if given, else QWIRT_SEED, else 0.
std::uint64_t resolve_seed(const std::uint64_t* explicit_seed);

using PointFn = std::function<double(const Point&)>;
using PointValueFn = std::function<QuatD(const Point&)>;

/// Evaluates `fn` at every point. The parallel variant distributes points
/// over OpenMP threads; an exception from any point is rethrown.
std::vector<QuatD> evaluate_all(const PointValueFn& fn, std::span<const Point> points, Exec exec = Exec::Parallel);

/// max over points of `fn`.
double max_over(const PointFn& fn, std::span<const Point> points, Exec exec = Exec::Parallel);

}  // namespace qwirt
