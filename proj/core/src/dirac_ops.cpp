#include "bqmaxwell/dirac_ops.hpp"

#include <algorithm>
#include <cmath>

#include "bqmaxwell/errors.hpp"

namespace bqmaxwell {

OperatorConfig::OperatorConfig(Sign sign, double lambda)
    : sign_(sign), lambda_(lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("operator.lambda must be positive and finite");
  }
}

namespace {

void require_physical(const BiquatField& f, const char* what) {
  if (f.domain() != Domain::physical) {
    throw StateError(std::string(what) + " requires a physical-domain field");
  }
}

std::array<BiquatField, 3> spectral_partials(const BiquatField& f) {
  const auto& grid = f.grid();
  const BiquatField spectrum = dft_forward(f);
  std::array<BiquatField, 3> out{BiquatField(grid, Domain::spectral),
                                 BiquatField(grid, Domain::spectral),
                                 BiquatField(grid, Domain::spectral)};
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const Vec3 k = grid.derivative_wavevector(idx);
    for (int a = 0; a < 3; ++a) {
      out[a][idx] = Complex{0.0, 2.0 * kPi * k[a]} * spectrum[idx];
    }
  }
  return {dft_inverse(out[0]), dft_inverse(out[1]), dft_inverse(out[2])};
}

std::array<BiquatField, 3> fd2_partials(const BiquatField& f) {
  const auto& grid = f.grid();
  const int n = grid.n();
  const Complex scale{0.5 / grid.spacing(), 0.0};
  std::array<BiquatField, 3> out{BiquatField(grid), BiquatField(grid),
                                 BiquatField(grid)};
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const auto m = grid.multi_index(idx);
    for (int a = 0; a < 3; ++a) {
      auto up = m, down = m;
      up[a] = (m[a] + 1) % n;
      down[a] = (m[a] + n - 1) % n;
      out[a][idx] = scale * (f[grid.index(up[0], up[1], up[2])] -
                             f[grid.index(down[0], down[1], down[2])]);
    }
  }
  return out;
}

}  // namespace

std::array<BiquatField, 3> partial_derivatives(const BiquatField& f,
                                               DerivativeMethod method) {
  require_physical(f, "partial_derivatives");
  return method == DerivativeMethod::spectral ? spectral_partials(f)
                                              : fd2_partials(f);
}

BiquatField apply_D(const BiquatField& f, DerivativeMethod method) {
  require_physical(f, "apply_D");
  const auto& grid = f.grid();
  if (method == DerivativeMethod::spectral) {
    BiquatField spectrum = dft_forward(f);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      const Vec3 k = grid.derivative_wavevector(idx);
      const Quaternion q = Quaternion::pure({2.0 * kPi * k[0], 2.0 * kPi * k[1],
                                             2.0 * kPi * k[2]});
      spectrum[idx] = kI * (q * spectrum[idx]);
    }
    return dft_inverse(spectrum);
  }
  const auto d = fd2_partials(f);
  BiquatField out(grid);
  const Quaternion e[3] = {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    out[idx] = e[0] * d[0][idx] + e[1] * d[1][idx] + e[2] * d[2][idx];
  }
  return out;
}

SpaceTimeField apply_D(const SpaceTimeField& w, DerivativeMethod method) {
  std::vector<BiquatField> slices;
  slices.reserve(w.slice_count());
  for (const auto& s : w.slices()) slices.push_back(apply_D(s, method));
  return {std::move(slices), w.dt()};
}

DivGradCurl div_grad_curl(const BiquatField& f, DerivativeMethod method) {
  const auto d = partial_derivatives(f, method);
  const auto& grid = f.grid();
  DivGradCurl out{BiquatField(grid), BiquatField(grid), BiquatField(grid)};
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    // d[a][idx][c] = d_{a+1} f_c
    out.div[idx][0] = d[0][idx][1] + d[1][idx][2] + d[2][idx][3];
    out.grad[idx] = {Complex{}, d[0][idx][0], d[1][idx][0], d[2][idx][0]};
    out.curl[idx] = {Complex{}, d[1][idx][3] - d[2][idx][2],
                     d[2][idx][1] - d[0][idx][3], d[0][idx][2] - d[1][idx][1]};
  }
  return out;
}

BiquatField laplacian(const BiquatField& f, DerivativeMethod method) {
  require_physical(f, "laplacian");
  const auto& grid = f.grid();
  if (method == DerivativeMethod::spectral) {
    BiquatField spectrum = dft_forward(f);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      const Vec3 k = grid.derivative_wavevector(idx);
      const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
      spectrum[idx] *= Complex{-4.0 * kPi * kPi * k2, 0.0};
    }
    return dft_inverse(spectrum);
  }
  const int n = grid.n();
  const double h = grid.spacing();
  const Complex inv_h2{1.0 / (h * h), 0.0};
  BiquatField out(grid);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const auto m = grid.multi_index(idx);
    Biquaternion acc = Complex{-6.0, 0.0} * f[idx];
    for (int a = 0; a < 3; ++a) {
      auto up = m, down = m;
      up[a] = (m[a] + 1) % n;
      down[a] = (m[a] + n - 1) % n;
      acc += f[grid.index(up[0], up[1], up[2])];
      acc += f[grid.index(down[0], down[1], down[2])];
    }
    out[idx] = inv_h2 * acc;
  }
  return out;
}

namespace {

// Weighted sum of slices: sum_k coeff[k] * w.slice(first + k).
BiquatField combine(const SpaceTimeField& w, int first,
                    std::initializer_list<double> coeffs, double scale) {
  BiquatField out(w.grid(), w.domain());
  int j = first;
  for (double c : coeffs) {
    if (c != 0.0) {
      const auto& s = w.slice(j);
      const Complex cc{c * scale, 0.0};
      for (std::size_t idx = 0; idx < out.size(); ++idx) out[idx] += cc * s[idx];
    }
    ++j;
  }
  return out;
}

}  // namespace

BiquatField time_derivative_at(const SpaceTimeField& w, int j) {
  const int nt = w.steps();
  const double s = 0.5 / w.dt();
  if (j == 0) return combine(w, 0, {-3.0, 4.0, -1.0}, s);
  if (j == nt) return combine(w, nt - 2, {1.0, -4.0, 3.0}, s);
  return combine(w, j - 1, {-1.0, 0.0, 1.0}, s);
}

SpaceTimeField time_derivative(const SpaceTimeField& w) {
  std::vector<BiquatField> slices;
  slices.reserve(w.slice_count());
  for (int j = 0; j <= w.steps(); ++j) slices.push_back(time_derivative_at(w, j));
  return {std::move(slices), w.dt()};
}

SpaceTimeField second_time_derivative(const SpaceTimeField& w) {
  const int nt = w.steps();
  if (nt < 3) throw SizeError("second_time_derivative needs nt >= 3");
  const double s = 1.0 / (w.dt() * w.dt());
  std::vector<BiquatField> slices;
  slices.reserve(w.slice_count());
  for (int j = 0; j <= nt; ++j) {
    if (j == 0) {
      slices.push_back(combine(w, 0, {2.0, -5.0, 4.0, -1.0}, s));
    } else if (j == nt) {
      slices.push_back(combine(w, nt - 3, {-1.0, 4.0, -5.0, 2.0}, s));
    } else {
      slices.push_back(combine(w, j - 1, {1.0, -2.0, 1.0}, s));
    }
  }
  return {std::move(slices), w.dt()};
}

SpaceTimeField apply_parabolic(const SpaceTimeField& w,
                               const OperatorConfig& cfg,
                               DerivativeMethod method) {
  if (w.steps() < 3) throw SizeError("apply_parabolic needs nt >= 3");
  SpaceTimeField out = apply_D(w, method);
  const Complex factor{0.0, cfg.sign_factor() * cfg.lambda()};
  for (int j = 0; j <= w.steps(); ++j) {
    BiquatField dt = time_derivative_at(w, j);
    dt *= factor;
    out.slice(j) += dt;
  }
  return out;
}

double KernelResidual::max() const {
  return *std::max_element(norms.begin(), norms.end());
}

KernelResidual kernel_residual(const SpaceTimeField& w,
                               const OperatorConfig& cfg,
                               DerivativeMethod method,
                               const DomainMask* region) {
  if (w.steps() < 3) throw SizeError("kernel_residual needs nt >= 3");
  const auto& grid = w.grid();
  const double pm = cfg.sign_factor() * cfg.lambda();
  const double weight = w.dt() * grid.cell_volume();
  std::array<double, 4> sums{};
  for (int j = 1; j < w.steps(); ++j) {
    const auto dgc = div_grad_curl(w.slice(j), method);
    const BiquatField dt = time_derivative_at(w, j);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      if (region && !region->contains(idx)) continue;
      const Complex a = -dgc.div[idx][0];
      const Complex t0 = dt[idx][0];
      const double r0 = a.real() - pm * t0.imag();
      const double r2 = a.imag() + pm * t0.real();
      sums[0] += r0 * r0;
      sums[2] += r2 * r2;
      for (int c = 1; c < 4; ++c) {
        const Complex g = dgc.grad[idx][c] + dgc.curl[idx][c];
        const Complex tv = dt[idx][c];
        const double r1 = g.real() - pm * tv.imag();
        const double r3 = g.imag() + pm * tv.real();
        sums[1] += r1 * r1;
        sums[3] += r3 * r3;
      }
    }
  }
  KernelResidual out;
  for (int e = 0; e < 4; ++e) out.norms[e] = std::sqrt(sums[e] * weight);
  return out;
}

SpaceTimeField wave_residual(const SpaceTimeField& w, double lambda,
                             DerivativeMethod method) {
  if (w.steps() < 3) throw SizeError("wave_residual needs nt >= 3");
  SpaceTimeField out = second_time_derivative(w);
  out *= Complex{lambda * lambda, 0.0};
  for (int j = 0; j <= w.steps(); ++j) {
    out.slice(j) -= laplacian(w.slice(j), method);
  }
  return out;
}

}  // namespace bqmaxwell
