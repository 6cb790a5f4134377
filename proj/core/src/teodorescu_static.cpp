#include "bqmaxwell/teodorescu_static.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <vector>

#include "bqmaxwell/errors.hpp"
#include "bqmaxwell/parallel.hpp"
#include "fftw_support.hpp"

namespace bqmaxwell {

Quaternion cauchy_kernel(const Vec3& x) {
  const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  if (r2 == 0.0) throw DomainError("cauchy_kernel: singular at x = 0");
  const double s = -1.0 / (4.0 * kPi * r2 * std::sqrt(r2));
  return {0.0, s * x[0], s * x[1], s * x[2]};
}

namespace {

BiquatField teodorescu_direct(const BiquatField& w, const DomainMask& mask) {
  const auto& grid = w.grid();
  std::vector<std::size_t> sources;
  sources.reserve(mask.count());
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    if (mask.contains(idx) && w[idx].norm2() != 0.0) sources.push_back(idx);
  }
  std::vector<Vec3> positions(sources.size());
  for (std::size_t s = 0; s < sources.size(); ++s) {
    positions[s] = grid.position(sources[s]);
  }
  const double h3 = grid.cell_volume();
  BiquatField out(grid);
  parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t target = begin; target < end; ++target) {
      const Vec3 x = grid.position(target);
      Biquaternion acc;
      for (std::size_t s = 0; s < sources.size(); ++s) {
        if (sources[s] == target) continue;
        const Vec3& y = positions[s];
        // -E(y - x) = (y - x) / (4 pi |y - x|^3)
        const Quaternion k = -cauchy_kernel({y[0] - x[0], y[1] - x[1], y[2] - x[2]});
        acc += k * w[sources[s]];
      }
      out[target] = Complex{h3, 0.0} * acc;
    }
  });
  return out;
}

// Linear (non-periodic) convolution out(x) = h^3 sum_y E(x - y) s(y) on a grid
// doubled in every direction, so node offsets in (-n, n) never alias.
BiquatField teodorescu_fft(const BiquatField& w, const DomainMask& mask) {
  const auto& grid = w.grid();
  const int n = grid.n();
  const int m = 2 * n;
  const std::size_t big = static_cast<std::size_t>(m) * m * m;
  const double h = grid.spacing();
  const double h3 = grid.cell_volume();
  auto big_index = [m](int a, int b, int c) {
    return (static_cast<std::size_t>(a) * m + b) * m + c;
  };

  std::vector<Complex> source(big * 4);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    if (!mask.contains(idx)) continue;
    const auto q = grid.multi_index(idx);
    const std::size_t b = big_index(q[0], q[1], q[2]);
    for (int c = 0; c < 4; ++c) source[4 * b + c] = w[idx][c];
  }
  std::vector<Complex> kernel(big * 3);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      for (int c = 0; c < m; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        const Vec3 d{(a < n ? a : a - m) * h, (b < n ? b : b - m) * h,
                     (c < n ? c : c - m) * h};
        const Quaternion e = cauchy_kernel(d);
        const std::size_t i = big_index(a, b, c);
        for (int k = 0; k < 3; ++k) kernel[3 * i + k] = h3 * e[k + 1];
      }
    }
  }

  const int dims[3] = {m, m, m};
  auto* src = reinterpret_cast<fftw_complex*>(source.data());
  auto* ker = reinterpret_cast<fftw_complex*>(kernel.data());
  fftw_plan fwd_src, fwd_ker, bwd_src;
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fwd_src = fftw_plan_many_dft(3, dims, 4, src, nullptr, 4, 1, src, nullptr,
                                 4, 1, FFTW_FORWARD, flags);
    fwd_ker = fftw_plan_many_dft(3, dims, 3, ker, nullptr, 3, 1, ker, nullptr,
                                 3, 1, FFTW_FORWARD, flags);
    bwd_src = fftw_plan_many_dft(3, dims, 4, src, nullptr, 4, 1, src, nullptr,
                                 4, 1, FFTW_BACKWARD, flags);
  }
  fftw_execute(fwd_src);
  fftw_execute(fwd_ker);
  const Complex inv_size{1.0 / static_cast<double>(big), 0.0};
  for (std::size_t i = 0; i < big; ++i) {
    const Biquaternion e{Complex{}, kernel[3 * i], kernel[3 * i + 1],
                         kernel[3 * i + 2]};
    const Biquaternion s{source[4 * i], source[4 * i + 1], source[4 * i + 2],
                         source[4 * i + 3]};
    const Biquaternion p = inv_size * (e * s);
    for (int c = 0; c < 4; ++c) source[4 * i + c] = p[c];
  }
  fftw_execute(bwd_src);
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(fwd_src);
    fftw_destroy_plan(fwd_ker);
    fftw_destroy_plan(bwd_src);
  }

  BiquatField out(grid);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const auto q = grid.multi_index(idx);
    const std::size_t b = big_index(q[0], q[1], q[2]);
    out[idx] = {source[4 * b], source[4 * b + 1], source[4 * b + 2],
                source[4 * b + 3]};
  }
  return out;
}

}  // namespace

BiquatField teodorescu(const BiquatField& w, const DomainMask& mask,
                       TeodorescuMethod method) {
  if (w.domain() != Domain::physical) {
    throw StateError("teodorescu requires a physical-domain field");
  }
  if (!(mask.grid() == w.grid())) {
    throw ConfigError("teodorescu: mask and field are on different grids");
  }
  if (!mask.within_padded_subbox()) {
    throw ConfigError("teodorescu: domain must lie inside the padded sub-box");
  }
  if (method == TeodorescuMethod::automatic) {
    method = w.grid().n() <= 32 ? TeodorescuMethod::direct : TeodorescuMethod::fft;
  }
  return method == TeodorescuMethod::direct ? teodorescu_direct(w, mask)
                                            : teodorescu_fft(w, mask);
}

}  // namespace bqmaxwell
