#pragma once

#include <array>

#include "bqmaxwell/field_grid.hpp"

namespace bqmaxwell {

enum class Sign { plus, minus };

inline double sign_factor(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }
inline Sign opposite(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

/// Selects D + i lambda d_t or D - i lambda d_t; lambda > 0, c = 1 / lambda.
class OperatorConfig {
 public:
  explicit OperatorConfig(Sign sign = Sign::plus, double lambda = 1.0);

  Sign sign() const { return sign_; }
  double lambda() const { return lambda_; }
  double c() const { return 1.0 / lambda_; }
  double sign_factor() const { return bqmaxwell::sign_factor(sign_); }

 private:
  Sign sign_;
  double lambda_;
};

enum class DerivativeMethod {
  spectral,  // multiply mode k by 2 pi i k
  fd2,       // second-order centered differences, periodic wrap
};

/// d_1 f, d_2 f, d_3 f, component by component.
std::array<BiquatField, 3> partial_derivatives(const BiquatField& f,
                                               DerivativeMethod method);

/// D f = e1 d_1 f + e2 d_2 f + e3 d_3 f (left action).
BiquatField apply_D(const BiquatField& f,
                    DerivativeMethod method = DerivativeMethod::spectral);
SpaceTimeField apply_D(const SpaceTimeField& w,
                       DerivativeMethod method = DerivativeMethod::spectral);

/// Classical operators on f = f0 + f_vec: div f_vec (in c0), grad f0 and
/// curl f_vec (in c1..c3).  D f = -div + grad + curl.
struct DivGradCurl {
  BiquatField div;
  BiquatField grad;
  BiquatField curl;
};

DivGradCurl div_grad_curl(const BiquatField& f,
                          DerivativeMethod method = DerivativeMethod::spectral);

/// Component-wise Laplacian.  The spectral multiplier is -4 pi^2 |k|^2 with
/// the derivative wavevector, so that D D = -Laplacian holds mode by mode.
BiquatField laplacian(const BiquatField& f,
                      DerivativeMethod method = DerivativeMethod::spectral);

/// d_t with second-order centered differences inside and second-order
/// one-sided differences at t = 0 and t = T.
SpaceTimeField time_derivative(const SpaceTimeField& w);
BiquatField time_derivative_at(const SpaceTimeField& w, int j);
/// d_tt, second order everywhere (one-sided four-point stencils at the ends).
SpaceTimeField second_time_derivative(const SpaceTimeField& w);

/// (D +/- i lambda d_t) w.  Throws SizeError when nt < 3.
SpaceTimeField apply_parabolic(
    const SpaceTimeField& w, const OperatorConfig& cfg,
    DerivativeMethod method = DerivativeMethod::spectral);

/// Imbalances of the four div-curl equations characterizing the kernel of
/// D +/- i lambda d_t, w = (u0 + u) + i (v0 + v):
///   [0] -div u        -/+ lambda d_t v0
///   [1] grad u0 + curl u -/+ lambda d_t v
///   [2] -div v        +/- lambda d_t u0
///   [3] grad v0 + curl v +/- lambda d_t u
/// as L2 norms over the interior slices (and region, when given).
struct KernelResidual {
  std::array<double, 4> norms{};
  double max() const;
};

KernelResidual kernel_residual(
    const SpaceTimeField& w, const OperatorConfig& cfg,
    DerivativeMethod method = DerivativeMethod::spectral,
    const DomainMask* region = nullptr);

/// (-Laplacian + lambda^2 d_tt) w, component by component.
SpaceTimeField wave_residual(
    const SpaceTimeField& w, double lambda,
    DerivativeMethod method = DerivativeMethod::spectral);

}  // namespace bqmaxwell
