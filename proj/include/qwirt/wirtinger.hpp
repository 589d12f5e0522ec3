#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qwirt/almansi.hpp"
#include "qwirt/numeric_ops.hpp"
#include "qwirt/sampling.hpp"
#include "qwirt/slice_function.hpp"

namespace qwirt {

/// Highest m for which the numeric θ_m, θ̄_m are offered.
inline constexpr int kMaxNumericWirtinger = 3;

/// θ_m(f) = ∂f/∂x_m on slice functions.
SliceFunction wirtinger_theta(const SliceFunction& f, int m);
/// θ̄_m(f) = ∂f/∂x_m^c on slice functions.
SliceFunction wirtinger_thetabar(const SliceFunction& f, int m);

/// θ_m(f) = Σ_{K ⊆ {1..m-1}} (-x̄)_{K^c} θ_{x_m} Γ^{m-1}_K(f), evaluated as
/// written. Throws InvalidArgument for m > kMaxNumericWirtinger.
NumericField wirtinger_theta(const NumericField& f, int m);
NumericField wirtinger_thetabar(const NumericField& f, int m);

enum class Verdict { Regular, NotRegular, Inconclusive };

std::string to_string(Verdict v);

struct OperatorResidual {
    std::string op;
    int m;
    double max_residual;
};

struct RegularityReport {
    std::string realization;
    Verdict verdict;
    double tolerance;
    int samples;
    std::uint64_t seed;
    std::vector<OperatorResidual> residuals;
    std::vector<std::string> warnings;

    double max_residual() const;
};

/// Exact zero test of θ̄_1(f), ..., θ̄_n(f). Residual is 0 or 1 per operator.
RegularityReport check_regularity(const SliceFunction& f);

/// max |θ̄_m(f)| over `points` for m <= min(n, 3). A field not known to be
/// slice whose residuals pass is re-examined with check_strong_sliceness,
/// and reported Inconclusive if that fails.
RegularityReport check_regularity(const NumericField& f, std::span<const Point> points, double tol, bool known_slice,
                                  std::uint64_t seed = 0, Exec exec = Exec::Parallel);

struct SlicenessResidual {
    int m;
    int h;
    int i;
    int j;
    SubsetMask k;
    double max_residual;
};

struct SlicenessReport {
    std::vector<SlicenessResidual> residuals;
    double tolerance;
    int samples;

    double max_residual() const;
    bool passes() const { return max_residual() <= tolerance; }
};

/// Residuals L^h_{ij}(Γ^m_K(f)) for m <= n, h <= m, 1 <= i < j <= 3, K ⊆ {1..m}.
SlicenessReport check_strong_sliceness(const NumericField& f, std::span<const Point> points, double tol,
                                       Exec exec = Exec::Parallel);

/// conj∘θ_m = θ̄_m∘conj and conj∘θ̄_m = θ_m∘conj, as exact stems.
bool check_conjugation_identity(const SliceFunction& f, int m);

struct IndependenceReport {
    bool lower_vanish;
    double theta_deviation;
    double thetabar_deviation;

    bool holds(double tol) const { return lower_vanish && theta_deviation <= tol && thetabar_deviation <= tol; }
};

/// For f depending on x_m..x_n only: θ_h f = θ̄_h f = 0 for h < m exactly,
/// and θ_m f, θ̄_m f against θ_{x_m}, θ̄_{x_m} of the lift at `points`.
IndependenceReport check_independence(const SliceFunction& f, int m, std::span<const Point> points,
                                      FdConfig config = {});

struct HomogeneityReport {
    std::vector<int> degrees;
    int basis_size;
    int kernel_dimension;
    bool contains_pure_power;
};

/// Right H-dimension of the common kernel of θ̄_1..θ̄_n on the span of
/// x^l x̄^h with l_m + h_m = d_m, by exact Gaussian elimination over H.
HomogeneityReport homogeneous_kernel(const std::vector<int>& degrees);

}  // namespace qwirt
