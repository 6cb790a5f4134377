#include "bqmaxwell/maxwell.hpp"

#include <cmath>
#include <sstream>

#include "bqmaxwell/errors.hpp"

namespace bqmaxwell {
namespace {

bool same_axes(const SpaceTimeField& a, const SpaceTimeField& b) {
  return a.grid() == b.grid() && a.steps() == b.steps() && a.dt() == b.dt();
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError(std::string(what) + " must be positive and finite");
  }
}

// Squared L2 norm of one slice over a region, without the time weight.
double slice_norm2(const BiquatField& f, const DomainMask* region) {
  double sum = 0.0;
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    if (region && !region->contains(idx)) continue;
    sum += f[idx].norm2();
  }
  return sum * f.grid().cell_volume();
}

double trapezoid_weight(int j, int steps, double dt) {
  return (j == 0 || j == steps) ? 0.5 * dt : dt;
}

BiquatField real_field(const BiquatField& f) {
  return transform(f, [](const Biquaternion& q) { return Biquaternion(q.real()); });
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

Vec3 checked_wavevector(const SpatialGrid& grid, std::array<int, 3> mode) {
  for (int m : mode) {
    if (2 * std::abs(m) >= grid.n()) {
      throw ConfigError("source mode must satisfy |m_i| < n/2");
    }
  }
  if (mode[0] == 0 && mode[1] == 0 && mode[2] == 0) {
    throw ConfigError("source mode must be nonzero");
  }
  const double L = grid.length();
  return {mode[0] / L, mode[1] / L, mode[2] / L};
}

double norm3(const Vec3& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

EMSolution assemble(const SpaceTimeField& w, double eps, double mu,
                    Units units, const GaugeSpec& h1, const GaugeSpec& h2,
                    const MaxwellOptions& options) {
  const double lambda = std::sqrt(eps * mu);
  const OperatorConfig cfg(Sign::minus, lambda);
  const SpaceTimeField raw = right_inverse_apply(
      w, cfg, ParabolicOptions{options.quadrature, options.support});
  const DomainMask omega = DomainMask::padded_subbox(w.grid());
  SpaceTimeField phi =
      vector_part(raw) +
      (1.0 / lambda) * conjugate_operator_U(scalar_part(raw), omega, lambda,
                                            options.completion);
  SpaceTimeField E = (1.0 / std::sqrt(eps)) * real_part(phi);
  SpaceTimeField B = std::sqrt(mu) * imag_part(phi);
  add_gauge_gradient(E, h1);
  add_gauge_gradient(B, h2);
  return {std::move(E), std::move(B), eps, mu, units};
}

void require_conservation(const SourceSpec& src, const MaxwellOptions& options,
                          const char* who) {
  const ConservationReport report =
      charge_conservation(src, 1.0, options.completion.method);
  if (report.relative > options.conservation_tolerance) {
    std::ostringstream msg;
    msg << who << ": charge conservation violated (div j + d_t rho): relative "
        << "residual " << report.relative << " > tolerance "
        << options.conservation_tolerance;
    throw PreconditionError(msg.str(), report.relative);
  }
}

}  // namespace

SourceSpec SourceSpec::zero(const SpatialGrid& grid, int steps, double dt,
                            Units units) {
  return {SpaceTimeField(grid, steps, dt), SpaceTimeField(grid, steps, dt),
          units};
}

void SourceSpec::validate() const {
  if (!same_axes(rho, j)) {
    throw ConfigError("source: rho and j must share grid and time axis");
  }
  if (rho.domain() != Domain::physical || j.domain() != Domain::physical) {
    throw ConfigError("source: fields must be in the physical domain");
  }
  for (const auto& s : rho.slices()) {
    for (const auto& q : s.values()) {
      if (q[0].imag() != 0.0 || q[1] != 0.0 || q[2] != 0.0 || q[3] != 0.0) {
        throw ConfigError("source: rho must be a real scalar field");
      }
    }
  }
  for (const auto& s : j.slices()) {
    for (const auto& q : s.values()) {
      if (q[0] != 0.0 || q[1].imag() != 0.0 || q[2].imag() != 0.0 ||
          q[3].imag() != 0.0) {
        throw ConfigError("source: j must be a real vector field");
      }
    }
  }
}

SourceSpec operator+(const SourceSpec& a, const SourceSpec& b) {
  if (a.units != b.units) throw ConfigError("source: unit mismatch");
  return {a.rho + b.rho, a.j + b.j, a.units};
}

SourceSpec operator*(double s, const SourceSpec& src) {
  return {s * src.rho, s * src.j, src.units};
}

ConservationReport charge_conservation(const SourceSpec& src, double lambda,
                                       DerivativeMethod method) {
  src.validate();
  const int steps = src.rho.steps();
  const double dt = src.rho.dt();
  double res2 = 0.0, div2 = 0.0, drho2 = 0.0, j2 = 0.0, rho2 = 0.0;
  for (int t = 0; t <= steps; ++t) {
    const double wt = trapezoid_weight(t, steps, dt);
    const BiquatField div = div_grad_curl(src.j.slice(t), method).div;
    const BiquatField drho = time_derivative_at(src.rho, t);
    BiquatField r = div;
    for (std::size_t idx = 0; idx < r.size(); ++idx) {
      r[idx][0] += lambda * drho[idx][0];
    }
    res2 += wt * slice_norm2(r, nullptr);
    div2 += wt * slice_norm2(div, nullptr);
    drho2 += wt * slice_norm2(drho, nullptr);
    j2 += wt * slice_norm2(src.j.slice(t), nullptr);
    rho2 += wt * slice_norm2(src.rho.slice(t), nullptr);
  }
  ConservationReport report;
  report.absolute = std::sqrt(res2);
  const double scale = std::sqrt(div2) + lambda * std::sqrt(drho2) +
                       std::sqrt(j2) / src.j.grid().length() +
                       lambda * std::sqrt(rho2) / src.rho.duration();
  report.relative = scale > 0.0 ? report.absolute / scale : 0.0;
  return report;
}

double validate_charge_conservation(const SourceSpec& src, double lambda,
                                    DerivativeMethod method) {
  return charge_conservation(src, lambda, method).absolute;
}

SpaceTimeField source_term(const SourceSpec& src, double eps, double mu) {
  src.validate();
  Complex scalar, vector;
  if (src.units == Units::gaussian) {
    scalar = -4.0 * kPi;
    vector = Complex(0.0, 4.0 * kPi);
  } else {
    require_positive(eps, "eps");
    require_positive(mu, "mu");
    scalar = -1.0 / std::sqrt(eps);
    vector = Complex(0.0, std::sqrt(mu));
  }
  return scalar * src.rho + vector * src.j;
}

EMSolution solve_gaussian(const SourceSpec& src, const GaugeSpec& h1,
                          const GaugeSpec& h2, const MaxwellOptions& options) {
  if (src.units != Units::gaussian) {
    throw ConfigError("solve_gaussian: source is not in Gaussian units");
  }
  require_conservation(src, options, "solve_gaussian");
  return assemble(source_term(src), 1.0, 1.0, Units::gaussian, h1, h2,
                  options);
}

EMSolution solve_si(const SourceSpec& src, double eps, double mu,
                    const GaugeSpec& h1, const GaugeSpec& h2,
                    const MaxwellOptions& options) {
  require_positive(eps, "eps");
  require_positive(mu, "mu");
  if (src.units != Units::si) {
    throw ConfigError("solve_si: source is not in SI units");
  }
  require_conservation(src, options, "solve_si");
  return assemble(source_term(src, eps, mu), eps, mu, Units::si, h1, h2,
                  options);
}

SpaceTimeField to_biquaternion(const EMSolution& sol) {
  if (sol.units == Units::gaussian) return sol.E + kI * sol.B;
  return std::sqrt(sol.eps) * sol.E + (kI / std::sqrt(sol.mu)) * sol.B;
}

double MaxwellResidual::max_relative() const {
  double m = 0.0;
  for (double r : relative) m = std::max(m, r);
  return m;
}

MaxwellResidual maxwell_residual(const EMSolution& sol, const SourceSpec& src,
                                 const ResidualOptions& options) {
  if (sol.units != src.units) {
    throw ConfigError("maxwell_residual: solution and source units differ");
  }
  if (!same_axes(sol.E, sol.B) || !same_axes(sol.E, src.rho) ||
      !same_axes(sol.E, src.j)) {
    throw ConfigError("maxwell_residual: fields do not share grid and time");
  }
  if (sol.E.steps() < 3) throw SizeError("maxwell_residual needs nt >= 3");
  const bool si = sol.units == Units::si;
  const double rho_factor = si ? 1.0 / sol.eps : 4.0 * kPi;
  const double j_factor = si ? sol.mu : 4.0 * kPi;
  const double dtE_factor = si ? sol.mu * sol.eps : 1.0;
  const DomainMask* region = options.region;

  // res[i] and the squared norms of every term feeding scale[i].
  std::array<double, 4> res{};
  double divE = 0, curlE = 0, src0 = 0, dtB = 0, divB = 0, curlB = 0,
         srcj = 0, dtE = 0;
  const double dt = sol.E.dt();
  for (int t = 1; t < sol.E.steps(); ++t) {
    const auto e = div_grad_curl(sol.E.slice(t), options.method);
    const auto b = div_grad_curl(sol.B.slice(t), options.method);
    const BiquatField de = time_derivative_at(sol.E, t);
    const BiquatField db = time_derivative_at(sol.B, t);
    const BiquatField& rho = src.rho.slice(t);
    const BiquatField& j = src.j.slice(t);
    const auto& grid = sol.E.grid();
    double r0 = 0, r1 = 0, r2 = 0, r3 = 0;
    double a0 = 0, a1 = 0, a2 = 0, a3 = 0, a4 = 0, a5 = 0, a6 = 0, a7 = 0;
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      if (region && !region->contains(idx)) continue;
      const Complex s0 = rho_factor * rho[idx][0];
      r0 += std::norm(e.div[idx][0] - s0);
      r2 += std::norm(b.div[idx][0]);
      a0 += std::norm(e.div[idx][0]);
      a1 += std::norm(s0);
      a4 += std::norm(b.div[idx][0]);
      for (int c = 1; c < 4; ++c) {
        const Complex ce = e.curl[idx][c], cb = b.curl[idx][c];
        const Complex tb = db[idx][c];
        const Complex sj = j_factor * j[idx][c];
        const Complex te = dtE_factor * de[idx][c];
        r1 += std::norm(ce + tb);
        r3 += std::norm(cb - sj - te);
        a2 += std::norm(ce);
        a3 += std::norm(tb);
        a5 += std::norm(cb);
        a6 += std::norm(sj);
        a7 += std::norm(te);
      }
    }
    const double wt = dt * grid.cell_volume();
    res[0] += wt * r0;
    res[1] += wt * r1;
    res[2] += wt * r2;
    res[3] += wt * r3;
    divE += wt * a0;
    src0 += wt * a1;
    curlE += wt * a2;
    dtB += wt * a3;
    divB += wt * a4;
    curlB += wt * a5;
    srcj += wt * a6;
    dtE += wt * a7;
  }
  const std::array<double, 4> scale2 = {divE + curlE + src0, curlE + dtB,
                                        divB + curlB, curlB + srcj + dtE};
  MaxwellResidual out;
  for (int i = 0; i < 4; ++i) {
    out.absolute[i] = std::sqrt(res[i]);
    out.relative[i] =
        scale2[i] > 0.0 ? out.absolute[i] / std::sqrt(scale2[i]) : 0.0;
  }
  return out;
}

std::array<double, 4> biquaternion_residual(const EMSolution& sol,
                                            const SourceSpec& src,
                                            const ResidualOptions& options) {
  if (sol.units != src.units) {
    throw ConfigError("biquaternion_residual: solution and source units differ");
  }
  const double lambda = std::sqrt(sol.eps * sol.mu);
  const SpaceTimeField phi = to_biquaternion(sol);
  const SpaceTimeField r =
      apply_parabolic(phi, OperatorConfig(Sign::minus, lambda),
                      options.method) -
      source_term(src, sol.eps, sol.mu);
  std::array<double, 4> sums{};
  const auto& grid = r.grid();
  for (int t = 1; t < r.steps(); ++t) {
    const auto& s = r.slice(t);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      if (options.region && !options.region->contains(idx)) continue;
      const Biquaternion& q = s[idx];
      sums[0] += q[0].real() * q[0].real();
      sums[2] += q[0].imag() * q[0].imag();
      for (int c = 1; c < 4; ++c) {
        sums[1] += q[c].real() * q[c].real();
        sums[3] += q[c].imag() * q[c].imag();
      }
    }
  }
  const double wt = r.dt() * grid.cell_volume();
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) out[i] = std::sqrt(wt * sums[i]);
  return out;
}

std::array<double, 4> equivalence_constants(const EMSolution& sol) {
  if (sol.units == Units::gaussian) return {1.0, 1.0, 1.0, 1.0};
  const double se = std::sqrt(sol.eps), im = 1.0 / std::sqrt(sol.mu);
  return {se, se, im, im};
}

SourceSpec solenoidal_mode_source(const SpatialGrid& grid, int steps,
                                  double dt, std::array<int, 3> mode,
                                  Vec3 amplitude, double frequency,
                                  Units units) {
  const Vec3 k = checked_wavevector(grid, mode);
  const double kn = norm3(k);
  const Vec3 b = cross({k[0] / kn, k[1] / kn, k[2] / kn}, amplitude);
  if (norm3(b) == 0.0) {
    throw ConfigError("solenoidal source: amplitude is parallel to the mode");
  }
  SourceSpec src = SourceSpec::zero(grid, steps, dt, units);
  src.j = SpaceTimeField::sample(grid, steps, dt, [&](const Vec3& x, double t) {
    const double g = std::sin(2.0 * kPi * frequency * t) *
                     std::sin(2.0 * kPi * (k[0] * x[0] + k[1] * x[1] +
                                           k[2] * x[2]));
    return Biquaternion{0.0, g * b[0], g * b[1], g * b[2]};
  });
  return src;
}

SourceSpec polarization_source(const SpatialGrid& grid, int steps, double dt,
                               Vec3 amplitude, double flat, double support,
                               Units units) {
  const BiquatField p = BiquatField::sample(grid, [&](const Vec3& x) {
    const double chi = box_window(x, flat, support);
    return Biquaternion{0.0, chi * amplitude[0], chi * amplitude[1],
                        chi * amplitude[2]};
  });
  const BiquatField div_p = real_field(div_grad_curl(p).div);
  SourceSpec src = SourceSpec::zero(grid, steps, dt, units);
  for (int t = 0; t <= steps; ++t) {
    const double time = t * dt;
    src.rho.slice(t) = Complex(-time * time) * div_p;
    src.j.slice(t) = Complex(2.0 * time) * p;
  }
  return src;
}

SourceSpec charge_violating_source(const SpatialGrid& grid, int steps,
                                   double dt, double flat, double support,
                                   Units units) {
  SourceSpec src = SourceSpec::zero(grid, steps, dt, units);
  src.rho =
      SpaceTimeField::sample(grid, steps, dt, [&](const Vec3& x, double t) {
        return Biquaternion{t * box_window(x, flat, support), 0.0, 0.0, 0.0};
      });
  return src;
}

EMSolution plane_wave(const SpatialGrid& grid, int steps, double dt,
                      std::array<int, 3> mode, Vec3 polarization, Units units,
                      double eps, double mu) {
  require_positive(eps, "eps");
  require_positive(mu, "mu");
  const Vec3 k = checked_wavevector(grid, mode);
  const double kn = norm3(k);
  const Vec3 khat{k[0] / kn, k[1] / kn, k[2] / kn};
  const double along = polarization[0] * khat[0] +
                       polarization[1] * khat[1] + polarization[2] * khat[2];
  const Vec3 p{polarization[0] - along * khat[0],
               polarization[1] - along * khat[1],
               polarization[2] - along * khat[2]};
  if (norm3(p) == 0.0) {
    throw ConfigError("plane wave: polarization is parallel to the mode");
  }
  const double index = std::sqrt(eps * mu);
  const double c = 1.0 / index;
  const Vec3 q = cross(khat, p);
  auto phase = [&](const Vec3& x, double t) {
    return std::cos(2.0 * kPi *
                    (k[0] * x[0] + k[1] * x[1] + k[2] * x[2] - c * kn * t));
  };
  EMSolution sol{
      SpaceTimeField::sample(grid, steps, dt,
                             [&](const Vec3& x, double t) {
                               const double f = phase(x, t);
                               return Biquaternion{0.0, f * p[0], f * p[1],
                                                   f * p[2]};
                             }),
      SpaceTimeField::sample(grid, steps, dt,
                             [&](const Vec3& x, double t) {
                               const double f = index * phase(x, t);
                               return Biquaternion{0.0, f * q[0], f * q[1],
                                                   f * q[2]};
                             }),
      eps, mu, units};
  return sol;
}

}  // namespace bqmaxwell
