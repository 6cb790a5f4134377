#include "bqmaxwell/parabolic_teodorescu.hpp"

#include <cmath>

#include "bqmaxwell/errors.hpp"
#include "bqmaxwell/parallel.hpp"

namespace bqmaxwell {
namespace {

// Dimensionless moments of cos(a tau) and sin(a tau) over [0, dt], x = a dt:
//   c0 = sin x / x                 = int cos / dt
//   s0 = (1 - cos x) / x           = int sin / dt
//   c1 = (x sin x + cos x - 1)/x^2 = int tau cos / dt^2
//   s1 = (sin x - x cos x) / x^2   = int tau sin / dt^2
struct Moments {
  double c0, s0, c1, s1;
};

Moments interval_moments(double x) {
  if (x >= 1.0) {
    const double s = std::sin(x), c = std::cos(x);
    const double one_minus_cos = 2.0 * std::sin(0.5 * x) * std::sin(0.5 * x);
    return {s / x, one_minus_cos / x, (x * s - one_minus_cos) / (x * x),
            (s - x * c) / (x * x)};
  }
  // Power series; 2m! grows fast enough that 20 terms reach round-off.
  Moments m{0.0, 0.0, 0.0, 0.0};
  double power = 1.0;      // x^(2n)
  double odd = 0.0;        // x^(2n-1)
  double factorial = 1.0;  // (2n)!
  for (int n = 0; n < 20; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double f1 = factorial * (2 * n + 1);  // (2n+1)!
    const double f2 = f1 * (2 * n + 2);         // (2n+2)!
    m.c0 += sign * power / f1;
    m.s0 += sign * power * x / f2;
    m.c1 += sign * (2 * n + 1) * power / f2;
    if (n >= 1) {
      // (-1)^(n+1) 2n x^(2n-1) / (2n+1)!
      m.s1 += -sign * 2.0 * n * odd / f1;
    }
    odd = power * x;
    power *= x * x;
    factorial = f2;
  }
  return m;
}

Quaternion along(double scalar, double vector_coeff, const Vec3& khat) {
  return {scalar, vector_coeff * khat[0], vector_coeff * khat[1],
          vector_coeff * khat[2]};
}

}  // namespace

PropagatorCache::PropagatorCache(const SpatialGrid& grid,
                                 const OperatorConfig& cfg, double dt)
    : grid_(grid), dt_(dt), sign_(cfg.sign()), lambda_(cfg.lambda()) {
  const std::size_t size = grid.size();
  step_.resize(size);
  previous_.resize(size);
  current_.resize(size);
  const double s = -cfg.sign_factor();  // exp(-/+ ...)
  for (std::size_t idx = 0; idx < size; ++idx) {
    const Vec3 k = grid.derivative_wavevector(idx);
    const double kn = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    const double a = 2.0 * kPi * kn / lambda_;
    step_[idx] = exp_pure(Quaternion::pure(
        {s * 2.0 * kPi * dt * k[0] / lambda_, s * 2.0 * kPi * dt * k[1] / lambda_,
         s * 2.0 * kPi * dt * k[2] / lambda_}));
    const Vec3 khat =
        kn > 0.0 ? Vec3{k[0] / kn, k[1] / kn, k[2] / kn} : Vec3{0.0, 0.0, 0.0};
    const Moments m = interval_moments(a * dt);
    // Over [t_j, t_{j+1}] with tau = t_{j+1} - s, the linear interpolant is
    // w^_j tau/dt + w^_{j+1} (1 - tau/dt).
    previous_[idx] = dt * along(m.c1, s * m.s1, khat);
    current_[idx] = dt * along(m.c0 - m.c1, s * (m.s0 - m.s1), khat);
  }
}

SpaceTimeField parabolic_teodorescu(const SpaceTimeField& w,
                                    const OperatorConfig& cfg,
                                    const ParabolicOptions& options) {
  if (w.domain() != Domain::physical) {
    throw StateError("parabolic_teodorescu requires a physical-domain field");
  }
  if (options.support == SupportPolicy::padded_subbox &&
      !supported_in_padded_subbox(w)) {
    throw ConfigError(
        "parabolic_teodorescu: source is not supported in the padded sub-box "
        "(central box of edge L/2); zero extension would be violated");
  }
  const auto& grid = w.grid();
  const int nt = w.steps();
  const PropagatorCache cache(grid, cfg, w.dt());

  std::vector<BiquatField> spectra;
  spectra.reserve(w.slice_count());
  for (const auto& s : w.slices()) spectra.push_back(dft_forward(s));

  std::vector<BiquatField> accumulated(w.slice_count(),
                                       BiquatField(grid, Domain::spectral));
  const bool exponential = options.quadrature == TimeQuadrature::exponential;
  const Complex half_dt{0.5 * w.dt(), 0.0};
  parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t mode = begin; mode < end; ++mode) {
      const Quaternion& step = cache.step(mode);
      Biquaternion sum;
      for (int j = 0; j < nt; ++j) {
        const Biquaternion& prev = spectra[j][mode];
        const Biquaternion& next = spectra[j + 1][mode];
        if (exponential) {
          sum = step * sum + cache.previous_weight(mode) * prev +
                cache.current_weight(mode) * next;
        } else {
          sum = step * sum + half_dt * (step * prev + next);
        }
        accumulated[j + 1][mode] = sum;
      }
    }
  });

  std::vector<BiquatField> slices;
  slices.reserve(w.slice_count());
  slices.emplace_back(grid);
  for (int j = 1; j <= nt; ++j) slices.push_back(dft_inverse(accumulated[j]));
  return {std::move(slices), w.dt()};
}

SpaceTimeField right_inverse_apply(const SpaceTimeField& w,
                                   const OperatorConfig& cfg,
                                   const ParabolicOptions& options) {
  const Complex factor{0.0, -cfg.sign_factor() / cfg.lambda()};
  return parabolic_teodorescu(factor * w, cfg, options);
}

SpaceTimeField compatibility_residual(const SpaceTimeField& w,
                                      const OperatorConfig& cfg,
                                      DerivativeMethod method) {
  if (w.steps() < 3) throw SizeError("compatibility_residual needs nt >= 3");
  const Complex factor{0.0, cfg.sign_factor() * cfg.lambda()};
  std::vector<BiquatField> slices;
  slices.reserve(w.slice_count());
  for (int j = 0; j <= w.steps(); ++j) {
    const auto dgc = div_grad_curl(w.slice(j), method);
    const BiquatField dt = time_derivative_at(w, j);
    BiquatField r(w.grid());
    for (std::size_t idx = 0; idx < r.size(); ++idx) {
      r[idx][0] = dgc.div[idx][0] + factor * dt[idx][0];
    }
    slices.push_back(std::move(r));
  }
  return {std::move(slices), w.dt()};
}

}  // namespace bqmaxwell
