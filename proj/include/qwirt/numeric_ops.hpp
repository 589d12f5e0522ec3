#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "qwirt/errors.hpp"
#include "qwirt/quaternion.hpp"
#include "qwirt/slice_function.hpp"

namespace qwirt {

using Point = std::vector<QuatD>;

/// Central differences. `step` is used for a derivative taken of an
/// underived field, `nested_step` for every derivative stacked on top of
/// another one. Operators containing Im(x_m)^{-1} refuse |Im(x_m)| < delta.
struct FdConfig {
    double step = 5e-4;
    double nested_step = 3e-4;
    double delta = 0.1;
};

inline constexpr int kDefaultSmoothness = 64;

/// A black-box map H^n -> H with a smoothness budget: every derived field
/// consumes budget, and deriving an exhausted field throws DepthExhausted.
class NumericField {
public:
    using Fn = std::function<QuatD(std::span<const QuatD>)>;

    NumericField(int n, Fn fn, int smoothness = kDefaultSmoothness, FdConfig config = {});

    static NumericField lift(const SliceFunction& f, FdConfig config = {});
    static NumericField constant(int n, const QuatD& c, FdConfig config = {});

    QuatD operator()(std::span<const QuatD> p) const { return (*fn_)(p); }

    int n() const { return n_; }
    int smoothness() const { return budget_; }
    /// Number of derivative layers already stacked into this field.
    int depth() const { return depth_; }
    const FdConfig& config() const { return config_; }
    /// Step for the next derivative taken of this field.
    double step() const { return depth_ == 0 ? config_.step : config_.nested_step; }

    /// A field one derivative deeper; `cost` units of budget are spent.
    NumericField derive(Fn fn, int cost = 1) const;
    /// A field at the same depth and budget (pointwise algebra).
    NumericField map(Fn fn) const;

private:
    int n_;
    std::shared_ptr<const Fn> fn_;
    int budget_;
    int depth_ = 0;
    FdConfig config_;
};

/// Throws NearRealAxis when |Im(p_m)| < delta.
void require_off_axis(std::span<const QuatD> p, int m, double delta);

/// ∂f/∂x_{m_i}, i in 0..3.
NumericField partial(const NumericField& f, int m, int i);

/// θ_{x_m} = ½(∂/∂x_{m_0} + Im(x_m)^{-1} E_{x_m}), E_{x_m} = Σ_i x_{m_i} ∂/∂x_{m_i}.
NumericField theta_global(const NumericField& f, int m);
/// θ̄_{x_m} = ½(∂/∂x_{m_0} - Im(x_m)^{-1} E_{x_m}).
NumericField thetabar_global(const NumericField& f, int m);

/// L^m_{ij} = x_{m_i} ∂/∂x_{m_j} - x_{m_j} ∂/∂x_{m_i}, 1 <= i, j <= 3.
NumericField tangential_L(const NumericField& f, int m, int i, int j);

/// Γ_{x_m} = -i L^m_{23} + j L^m_{13} - k L^m_{12}.
NumericField gamma(const NumericField& f, int m);

/// ∂_{CF,x_m} = ½(∂_0 + i ∂_1 + j ∂_2 + k ∂_3).
NumericField crf(const NumericField& f, int m);

/// Σ_i ∂²/∂x_{m_i}², costing two units of budget.
NumericField laplacian(const NumericField& f, int m);

/// p -> p_m f(p).
NumericField left_mul_variable(const NumericField& f, int m);

}  // namespace qwirt
