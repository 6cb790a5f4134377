#pragma once

#include <array>

#include "bqmaxwell/completion.hpp"
#include "bqmaxwell/parabolic_teodorescu.hpp"

namespace bqmaxwell {

enum class Units { gaussian, si };

/// Charge density rho (real, in c0) and current density j (real, in
/// c1..c3) on one space-time grid.
struct SourceSpec {
  SpaceTimeField rho;
  SpaceTimeField j;
  Units units = Units::gaussian;

  static SourceSpec zero(const SpatialGrid& grid, int steps, double dt,
                         Units units = Units::gaussian);

  /// Throws ConfigError on mismatched grids or time axes, a non-scalar or
  /// complex rho, or a non-vector or complex j.
  void validate() const;
};

SourceSpec operator+(const SourceSpec& a, const SourceSpec& b);
SourceSpec operator*(double s, const SourceSpec& src);

/// Real vector fields E and B (c1..c3) with the medium constants.
struct EMSolution {
  SpaceTimeField E;
  SpaceTimeField B;
  double eps = 1.0;
  double mu = 1.0;
  Units units = Units::gaussian;
};

struct ConservationReport {
  double absolute = 0.0;  // ||div j + lambda d_t rho||, trapezoid in t
  double relative = 0.0;
};

/// ||div j + lambda d_t rho|| and its size relative to
/// ||div j|| + lambda ||d_t rho|| + ||j|| / L + lambda ||rho|| / T.
ConservationReport charge_conservation(
    const SourceSpec& src, double lambda,
    DerivativeMethod method = DerivativeMethod::spectral);

/// The absolute norm of charge_conservation.
double validate_charge_conservation(
    const SourceSpec& src, double lambda,
    DerivativeMethod method = DerivativeMethod::spectral);

struct MaxwellOptions {
  double conservation_tolerance = 1e-6;
  TimeQuadrature quadrature = TimeQuadrature::trapezoid;
  SupportPolicy support = SupportPolicy::padded_subbox;
  CompletionOptions completion;
};

/// Right-hand side w of (D - i lambda d_t) phi = w:
///   gaussian: -4 pi (rho - i j)
///   si:       -(rho / sqrt(eps) - i sqrt(mu) j)
SpaceTimeField source_term(const SourceSpec& src, double eps = 1.0,
                           double mu = 1.0);

/// Gaussian units, lambda = 1.  phi_raw = T_-[i w], u0 = Sc phi_raw,
/// phi = Vec phi_raw + U[u0] (Omega = padded sub-box), E = Re phi + grad h1,
/// B = Im phi + grad h2.
///
/// Throws PreconditionError (charge conservation) with the measured
/// relative residual, ConfigError on unit mismatch or support violation.
EMSolution solve_gaussian(const SourceSpec& src,
                          const GaugeSpec& h1 = GaugeSpec::zero(),
                          const GaugeSpec& h2 = GaugeSpec::zero(),
                          const MaxwellOptions& options = {});

/// Homogeneous isotropic medium, lambda = sqrt(eps mu).  The potential is
/// phi = sqrt(eps) E + i B / sqrt(mu); E = Re phi / sqrt(eps) + grad h1,
/// B = sqrt(mu) Im phi + grad h2.  Conservation is checked as
/// div j + d_t rho = 0.
EMSolution solve_si(const SourceSpec& src, double eps, double mu,
                    const GaugeSpec& h1 = GaugeSpec::zero(),
                    const GaugeSpec& h2 = GaugeSpec::zero(),
                    const MaxwellOptions& options = {});

/// Gaussian: E + i B.  SI: sqrt(eps) E + i B / sqrt(mu).
SpaceTimeField to_biquaternion(const EMSolution& sol);

struct ResidualOptions {
  DerivativeMethod method = DerivativeMethod::spectral;
  const DomainMask* region = nullptr;
};

/// Imbalances over interior slices, in the order
///   [0] div E - 4 pi rho              (si: div E - rho / eps)
///   [1] curl E + d_t B
///   [2] div B
///   [3] curl B - 4 pi j - d_t E       (si: curl B - mu j - mu eps d_t E)
/// relative[i] = absolute[i] / sqrt(sum of squared norms of the terms of
/// equation i, plus curl E for [0] and curl B for [2]); 0 when all vanish.
struct MaxwellResidual {
  std::array<double, 4> absolute{};
  std::array<double, 4> relative{};
  double max_relative() const;
};

/// Throws ConfigError when sol and src use different units or grids.
MaxwellResidual maxwell_residual(const EMSolution& sol, const SourceSpec& src,
                                 const ResidualOptions& options = {});

/// Norms of Re Sc, Re Vec, Im Sc, Im Vec of (D - i lambda d_t) phi - w over
/// interior slices, with phi = to_biquaternion(sol).
std::array<double, 4> biquaternion_residual(
    const EMSolution& sol, const SourceSpec& src,
    const ResidualOptions& options = {});

/// c[i] with biquaternion_residual[i] = c[i] * maxwell_residual.absolute[i]
/// for exact derivatives: (1, 1, 1, 1) in Gaussian units and
/// (sqrt eps, sqrt eps, 1/sqrt mu, 1/sqrt mu) in SI.
std::array<double, 4> equivalence_constants(const EMSolution& sol);

// Presets.

/// rho = 0, j = sin(2 pi nu t) (k^ x a) sin(2 pi <k, x>), k = mode / L.
/// Divergence free for the spectral derivative; fills the torus.
SourceSpec solenoidal_mode_source(const SpatialGrid& grid, int steps,
                                  double dt, std::array<int, 3> mode,
                                  Vec3 amplitude, double frequency = 1.0,
                                  Units units = Units::gaussian);

/// Polarization P = chi(x) a t^2 with chi = box_window(x, flat, support):
/// j = d_t P, rho = -div P (spectral).
SourceSpec polarization_source(const SpatialGrid& grid, int steps, double dt,
                               Vec3 amplitude, double flat, double support,
                               Units units = Units::gaussian);

/// rho = t chi(x), j = 0: violates charge conservation by ||chi|| sqrt(T).
SourceSpec charge_violating_source(const SpatialGrid& grid, int steps,
                                   double dt, double flat, double support,
                                   Units units = Units::gaussian);

/// Vacuum (or medium) plane wave E = p cos(2 pi (<k, x> - c |k| t)),
/// B = sqrt(eps mu) k^ x E, with p the part of `polarization` normal to k.
EMSolution plane_wave(const SpatialGrid& grid, int steps, double dt,
                      std::array<int, 3> mode, Vec3 polarization,
                      Units units = Units::gaussian, double eps = 1.0,
                      double mu = 1.0);

}  // namespace bqmaxwell
