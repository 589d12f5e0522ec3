#include "qwirt/sampling.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>

namespace qwirt {

namespace {

QuatD direction(Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    for (;;) {
        const QuatD v(0.0, g(rng), g(rng), g(rng));
        const double r = std::sqrt(v.imag_norm2());
        if (r > 1e-8) return v * (1.0 / r);
    }
}

// Runs body(i) for i in [0, count), rethrowing the first exception.
template <class Body>
void sweep(std::size_t count, Exec exec, Body body) {
    if (exec == Exec::Serial) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(qwirt_sweep_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace

QuatD random_unit(Rng& rng) { return direction(rng); }

std::vector<Point> sample_admissible(Rng& rng, int n, int count, const AdmissibleBox& box) {
    std::uniform_real_distribution<double> re(box.re_lo, box.re_hi), im(box.im_lo, box.im_hi);
    std::vector<Point> points(count, Point(n));
    for (auto& p : points) {
        for (auto& q : p) {
            const QuatD u = direction(rng);
            q = QuatD(re(rng)) + u * im(rng);
        }
    }
    return points;
}

std::vector<Point> sample_ball(Rng& rng, const Point& centre, double radius, int count, double delta) {
    const int n = static_cast<int>(centre.size());
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point> points;
    int attempts = 0;
    while (static_cast<int>(points.size()) < count) {
        if (++attempts > 1000 * count) throw InvalidArgument("ball lies inside the exclusion band");
        std::vector<double> v(4 * n);
        double r = 0;
        for (auto& c : v) {
            c = g(rng);
            r += c * c;
        }
        const double scale = radius * std::pow(u(rng), 1.0 / (4 * n)) / std::sqrt(r);
        Point p = centre;
        bool ok = true;
        for (int m = 0; m < n; ++m) {
            p[m] += QuatD(v[4 * m], v[4 * m + 1], v[4 * m + 2], v[4 * m + 3]) * scale;
            ok = ok && std::sqrt(p[m].imag_norm2()) >= delta;
        }
        if (ok) points.push_back(std::move(p));
    }
    return points;
}

std::uint64_t resolve_seed(const std::uint64_t* explicit_seed) {
    if (explicit_seed) return *explicit_seed;
    if (const char* env = std::getenv("QWIRT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw InvalidArgument(std::string("QWIRT_SEED is not an unsigned integer: ") + env);
        }
    }
    return 0;
}

std::vector<QuatD> evaluate_all(const PointValueFn& fn, std::span<const Point> points, Exec exec) {
    std::vector<QuatD> out(points.size());
    sweep(points.size(), exec, [&](std::size_t i) { out[i] = fn(points[i]); });
    return out;
}

double max_over(const PointFn& fn, std::span<const Point> points, Exec exec) {
    std::vector<double> values(points.size());
    sweep(points.size(), exec, [&](std::size_t i) { values[i] = fn(points[i]); });
    double best = 0.0;
    for (double v : values) {
        if (std::isnan(v)) return v;
        best = std::max(best, v);
    }
    return best;
}

}  // namespace qwirt
