#pragma once

#include <vector>

#include "bqmaxwell/dirac_ops.hpp"
#include "bqmaxwell/field_grid.hpp"

namespace bqmaxwell {

/// How the s-integral of the transform is discretized.
enum class TimeQuadrature {
  trapezoid,    // composite trapezoid rule
  exponential,  // propagator integrated exactly against piecewise-linear w^
};

/// Whether sources must vanish outside the padded sub-box (the zero extension
/// of a compactly supported source) or may fill the whole torus.
enum class SupportPolicy { padded_subbox, unrestricted };

struct ParabolicOptions {
  TimeQuadrature quadrature = TimeQuadrature::trapezoid;
  SupportPolicy support = SupportPolicy::padded_subbox;
};

/// Per-mode one-step propagators exp(-/+ 2 pi dt k / lambda) of the Fourier
/// fundamental solution, plus the weights of the exponential quadrature.
/// Built on the derivative wavevector so that it matches apply_D exactly.
class PropagatorCache {
 public:
  PropagatorCache(const SpatialGrid& grid, const OperatorConfig& cfg,
                  double dt);

  const SpatialGrid& grid() const { return grid_; }
  double dt() const { return dt_; }
  Sign sign() const { return sign_; }
  double lambda() const { return lambda_; }

  /// cos(theta) -/+ k^ sin(theta), theta = 2 pi |k| dt / lambda.
  const Quaternion& step(std::size_t mode) const { return step_[mode]; }
  /// Weights of w^(t_j) and w^(t_{j+1}) in the exponential update
  /// S_{j+1} = step S_j + previous w^_j + current w^_{j+1}.
  const Quaternion& previous_weight(std::size_t mode) const {
    return previous_[mode];
  }
  const Quaternion& current_weight(std::size_t mode) const {
    return current_[mode];
  }

 private:
  SpatialGrid grid_;
  double dt_;
  Sign sign_;
  double lambda_;
  std::vector<Quaternion> step_;
  std::vector<Quaternion> previous_;
  std::vector<Quaternion> current_;
};

/// T_{C,+/-,lambda}[w](x, t) =
///   int_0^t F^-1[ exp(-/+ 2 pi (t - s) k / lambda) w^(k, s) ](x) ds.
/// Slice 0 is zero.  The accumulation is incremental in t:
/// S(t + dt) = exp(-/+ 2 pi dt k / lambda) S(t) + (local interval terms).
///
/// Throws StateError for spectral input and ConfigError when the support
/// policy is violated.
SpaceTimeField parabolic_teodorescu(const SpaceTimeField& w,
                                    const OperatorConfig& cfg,
                                    const ParabolicOptions& options = {});

/// T_{C,+/-,lambda}[-/+ (i / lambda) w]; (D +/- i lambda d_t) of the result
/// reproduces w.
SpaceTimeField right_inverse_apply(const SpaceTimeField& w,
                                   const OperatorConfig& cfg,
                                   const ParabolicOptions& options = {});

/// div w_vec +/- i lambda d_t w0 as a complex scalar field (in c0).  Zero
/// exactly when the scalar part of the right inverse solves the wave
/// equation.
SpaceTimeField compatibility_residual(
    const SpaceTimeField& w, const OperatorConfig& cfg,
    DerivativeMethod method = DerivativeMethod::spectral);

}  // namespace bqmaxwell
