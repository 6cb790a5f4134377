#pragma once

#include <string>

#include "bqmaxwell/dirac_ops.hpp"
#include "bqmaxwell/field_grid.hpp"
#include "bqmaxwell/gauge.hpp"
#include "bqmaxwell/teodorescu_static.hpp"

namespace bqmaxwell {

/// int_0^t w(x, s) ds by the cumulative trapezoid rule; slice 0 is zero.
SpaceTimeField time_integral(const SpaceTimeField& w);

struct CompletionOptions {
  DerivativeMethod method = DerivativeMethod::spectral;
  TeodorescuMethod teodorescu = TeodorescuMethod::automatic;
  /// Relative wave-equation residual on the mask above which the result is
  /// flagged (not rejected).
  double wave_tolerance = 1e-2;
};

struct PreconditionStatus {
  bool checked = false;  // false when nt < 3
  bool satisfied = true;
  double measured = 0.0;
  std::string message;
};

struct ConjugateResult {
  SpaceTimeField v;
  PreconditionStatus wave;
};

/// Relative size of (-Laplacian + lambda^2 d_tt) u on the mask, scaled by
/// ||Laplacian u|| + lambda^2 ||d_tt u|| + ||u||.
PreconditionStatus check_wave_equation(const SpaceTimeField& u, double lambda,
                                       const DomainMask& mask,
                                       const CompletionOptions& options = {});

/// v = (1/lambda) int_0^t D u ds - lambda T_Omega[d_t u](x, 0) + grad phi.
/// For u solving (-Laplacian + lambda^2 d_tt) u = 0, u +/- i v lies in the
/// kernel of D +/- i lambda d_t inside Omega, for either sign.
///
/// Throws ConfigError when the mask is on another grid.
ConjugateResult metaharmonic_conjugate(const SpaceTimeField& u,
                                       const OperatorConfig& cfg,
                                       const GaugeSpec& gauge,
                                       const DomainMask& mask,
                                       const CompletionOptions& options = {});

/// U_lambda[u0] = i int_0^t grad u0 ds - i lambda^2 T_Omega[d_t u0](x, 0).
/// Purely vectorial: the scalar component is set to exactly zero.
///
/// Throws DomainError when u0 has a nonzero vector component.
SpaceTimeField conjugate_operator_U(const SpaceTimeField& u0,
                                    const DomainMask& mask,
                                    double lambda = 1.0,
                                    const CompletionOptions& options = {});

/// u0 +/- (1/lambda) U_lambda[u0] + grad h, in the kernel of
/// D +/- i lambda d_t when u0 solves the scalar wave equation.
SpaceTimeField complete_to_kernel(const SpaceTimeField& u0,
                                  const OperatorConfig& cfg,
                                  const GaugeSpec& gauge,
                                  const DomainMask& mask,
                                  const CompletionOptions& options = {});

/// Adds grad h(x) to the vector part of every slice.
void add_gauge_gradient(SpaceTimeField& w, const GaugeSpec& gauge,
                        Complex factor = 1.0);

}  // namespace bqmaxwell
