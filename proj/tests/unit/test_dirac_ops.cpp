#include <doctest.h>

#include <bqmaxwell/dirac_ops.hpp>
#include <bqmaxwell/errors.hpp>

#include "test_support.hpp"

using namespace bqmaxwell;
using bqtest::Gen;

namespace {

constexpr double kL = 4.0;
constexpr double kFlat = 1.2;
constexpr double kSupport = 1.9;
constexpr double kFactorizationC = 100.0;

double window(const Vec3& x) { return box_window(x, kFlat, kSupport); }

double max_on(const BiquatField& f, const DomainMask& region) {
  double m = 0.0;
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    if (region.contains(idx)) m = std::max(m, std::sqrt(f[idx].norm2()));
  }
  return m;
}

double max_on(const SpaceTimeField& w, const DomainMask& region, int first,
              int last) {
  double m = 0.0;
  for (int j = first; j <= last; ++j) m = std::max(m, max_on(w.slice(j), region));
  return m;
}

// u = x + t, v = -3t + x/3, w = u + s i v.
SpaceTimeField affine_kernel(const SpatialGrid& g, int nt, double dt, double s) {
  return SpaceTimeField::sample(g, nt, dt, [&](const Vec3& x, double t) {
    const Quaternion u{t, x[0], x[1], x[2]};
    const Quaternion v{-3.0 * t, x[0] / 3.0, x[1] / 3.0, x[2] / 3.0};
    return Complex(window(x)) * Biquaternion::from_parts(u, s * v);
  });
}

// u = |x|^2 + 3t^2, v = 2t x, w = u + s i v.
SpaceTimeField quadratic_kernel(const SpatialGrid& g, int nt, double dt, double s) {
  return SpaceTimeField::sample(g, nt, dt, [&](const Vec3& x, double t) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const Quaternion u{r2 + 3.0 * t * t, 0, 0, 0};
    const Quaternion v{0, 2 * t * x[0], 2 * t * x[1], 2 * t * x[2]};
    return Complex(window(x)) * Biquaternion::from_parts(u, s * v);
  });
}

SpaceTimeField smooth_field(const SpatialGrid& g, int nt, double dt,
                            std::uint64_t seed) {
  Gen gen(seed);
  const bqtest::SpaceTimeBandLimited src(gen, g.length(), 1, 0.25, 0.75);
  return src.sample(g, nt, dt);
}

}  // namespace

TEST_CASE("operator config") {
  CHECK_THROWS_AS(OperatorConfig(Sign::plus, 0.0), ConfigError);
  CHECK_THROWS_AS(OperatorConfig(Sign::plus, -1.0), ConfigError);
  const OperatorConfig cfg(Sign::minus, 2.0);
  CHECK(cfg.c() == 0.5);
  CHECK(cfg.sign_factor() == -1.0);
  CHECK(opposite(Sign::minus) == Sign::plus);
}

TEST_CASE("apply_D on windowed polynomials") {
  const SpatialGrid g(16, kL);
  const DomainMask flat = DomainMask::box(g, kFlat).eroded(1);

  // u = x: D u = -div x = -3.
  const BiquatField x = BiquatField::sample(g, [](const Vec3& p) {
    return Complex(window(p)) * Biquaternion(Quaternion::pure(p));
  });
  const BiquatField dx = apply_D(x, DerivativeMethod::fd2);
  const BiquatField minus3 =
      BiquatField::sample(g, [](const Vec3&) { return Biquaternion(-3.0); });
  CHECK(max_on(dx - minus3, flat) <= 1e-12);

  // grad of the harmonic x1^2 - x2^2.
  const BiquatField grad = BiquatField::sample(g, [](const Vec3& p) {
    return Complex(window(p)) *
           Biquaternion(Quaternion{0, 2 * p[0], -2 * p[1], 0});
  });
  CHECK(max_on(apply_D(grad, DerivativeMethod::fd2), flat) <= 1e-12);
}

TEST_CASE("apply_D: spectral vs fd2 converges at second order") {
  Gen gen(31);
  const double L = 2.0;
  const bqtest::BandLimited f(gen, L, 1);
  double diff[2];
  int i = 0;
  for (int n : {16, 32}) {
    const SpatialGrid g(n, L);
    const BiquatField s = BiquatField::sample(g, f);
    diff[i++] = l2_norm(apply_D(s, DerivativeMethod::spectral) -
                        apply_D(s, DerivativeMethod::fd2));
  }
  const double order = std::log2(diff[0] / diff[1]);
  CHECK(order >= 1.8);
  CHECK(order <= 2.2);
  // C h^2 with h = 1/8.
  CHECK(diff[0] <= 10.0 * (L / 16) * (L / 16) * l2_norm(apply_D(
                       BiquatField::sample(SpatialGrid(16, L), f))));
}

TEST_CASE("apply_D: spectral derivative of a lattice mode is exact") {
  const SpatialGrid g(8, 2.0);
  const Vec3 k{0.5, -1.0, 1.5};
  const Biquaternion c(Complex(1.0, 2.0), -1.0, 0.5, Complex(0, 3.0));
  const BiquatField f = BiquatField::sample(
      g, [&](const Vec3& x) { return bqtest::plane_wave(k, x) * c; });
  const Biquaternion multiplier(
      Quaternion{0.0, 2 * kPi * k[0], 2 * kPi * k[1], 2 * kPi * k[2]});
  const BiquatField expected = BiquatField::sample(g, [&](const Vec3& x) {
    return bqtest::plane_wave(k, x) * Complex(0, 1) * (multiplier * c);
  });
  CHECK(bqtest::relative_error(apply_D(f), expected) <= 1e-12);
}

TEST_CASE("div_grad_curl") {
  const SpatialGrid g(16, kL);
  const DomainMask flat = DomainMask::box(g, kFlat).eroded(1);
  const BiquatField x = BiquatField::sample(g, [](const Vec3& p) {
    return Complex(window(p)) * Biquaternion(Quaternion::pure(p));
  });
  const DivGradCurl dx = div_grad_curl(x, DerivativeMethod::fd2);
  const BiquatField three =
      BiquatField::sample(g, [](const Vec3&) { return Biquaternion(3.0); });
  CHECK(max_on(dx.div - three, flat) <= 1e-12);
  CHECK(max_on(dx.curl, flat) <= 1e-12);
  CHECK(max_on(dx.grad, flat) <= 1e-12);

  const BiquatField x1 = BiquatField::sample(g, [](const Vec3& p) {
    return Biquaternion(Complex(window(p) * p[0]));
  });
  const DivGradCurl d1 = div_grad_curl(x1, DerivativeMethod::fd2);
  const BiquatField e1 = BiquatField::sample(
      g, [](const Vec3&) { return Biquaternion(Quaternion{0, 1, 0, 0}); });
  CHECK(max_on(d1.grad - e1, flat) <= 1e-12);

  Gen gen(32);
  const SpatialGrid g2(16, 2.0);
  const BiquatField u = BiquatField::sample(g2, bqtest::BandLimited(gen, 2.0, 2));
  for (auto method : {DerivativeMethod::spectral, DerivativeMethod::fd2}) {
    const DivGradCurl d = div_grad_curl(u, method);
    const BiquatField recombined = d.grad + d.curl - d.div;
    CHECK(bqtest::relative_error(recombined, apply_D(u, method)) <= 1e-10);
  }
}

TEST_CASE("D^2 = -Laplacian spectrally") {
  Gen gen(33);
  const SpatialGrid g(16, 2.0);
  BiquatField f(g);
  for (std::size_t idx = 0; idx < f.size(); ++idx) f[idx] = gen.biquaternion();
  const BiquatField dd = apply_D(apply_D(f));
  const BiquatField lap = laplacian(f);
  CHECK(bqtest::relative_error(dd, Complex(-1.0) * lap) <= 1e-10);
}

TEST_CASE("time derivatives") {
  const SpatialGrid g(4, 1.0);
  // Exact on quadratics in t, at the ends included.
  const SpaceTimeField q = SpaceTimeField::sample(
      g, 5, 0.1, [](const Vec3&, double t) {
        return Biquaternion(Complex(1 + 2 * t + 3 * t * t));
      });
  const SpaceTimeField dq = time_derivative(q);
  const SpaceTimeField ddq = second_time_derivative(q);
  for (int j = 0; j <= 5; ++j) {
    CHECK(std::abs(dq.slice(j)[0][0] - (2 + 6 * 0.1 * j)) <= 1e-12);
    CHECK(std::abs(ddq.slice(j)[0][0] - 6.0) <= 1e-9);
  }
  CHECK(time_derivative_at(q, 3)[0] == dq.slice(3)[0]);

  // Second order on sin.
  double err[2];
  for (int r = 0; r < 2; ++r) {
    const int nt = 10 << r;
    const double dt = 1.0 / nt;
    const SpaceTimeField s = SpaceTimeField::sample(
        g, nt, dt, [](const Vec3&, double t) {
          return Biquaternion(Complex(std::sin(3 * t)));
        });
    const SpaceTimeField ds = time_derivative(s);
    err[r] = 0.0;
    for (int j = 0; j <= nt; ++j) {
      err[r] = std::max(err[r],
                        std::abs(ds.slice(j)[0][0] - 3 * std::cos(3 * j * dt)));
    }
  }
  CHECK(std::log2(err[0] / err[1]) >= 1.8);
}

TEST_CASE("apply_parabolic on the closed-form kernel elements") {
  const SpatialGrid g(16, kL);
  const DomainMask flat = DomainMask::box(g, kFlat).eroded(1);
  const int nt = 8;
  const double dt = 0.05;
  for (Sign sign : {Sign::plus, Sign::minus}) {
    const double s = sign_factor(sign);
    const OperatorConfig op(sign, 1.0);
    const SpaceTimeField p1 =
        apply_parabolic(affine_kernel(g, nt, dt, s), op, DerivativeMethod::fd2);
    CHECK(max_on(p1, flat, 0, nt) <= 1e-9);
    const SpaceTimeField p2 =
        apply_parabolic(quadratic_kernel(g, nt, dt, s), op, DerivativeMethod::fd2);
    // fd2 and the time stencils are exact on quadratics: C (h^2 + dt^2)
    // holds with C = 0 up to rounding.
    CHECK(max_on(p2, flat, 0, nt) <= 1e-9);

    // Opposite pairing is not in the kernel.
    const SpaceTimeField wrong = apply_parabolic(
        affine_kernel(g, nt, dt, -s), op, DerivativeMethod::fd2);
    CHECK(max_on(wrong, flat, 0, nt) >= 1.0);
  }

  const SpaceTimeField c = SpaceTimeField::sample(
      g, 4, 0.1, [](const Vec3&, double) {
        return Biquaternion(Complex(1, 2), 3.0, -1.0, Complex(0, 1));
      });
  CHECK(apply_parabolic(c, OperatorConfig(Sign::plus, 2.0)).max_abs() <= 1e-12);
  CHECK_THROWS_AS(apply_parabolic(SpaceTimeField(g, 2, 0.1), OperatorConfig()),
                  SizeError);
}

TEST_CASE("kernel_residual") {
  const SpatialGrid g(16, kL);
  const DomainMask flat = DomainMask::box(g, kFlat).eroded(1);
  const int nt = 8;
  const double dt = 0.05;
  for (Sign sign : {Sign::plus, Sign::minus}) {
    const double s = sign_factor(sign);
    const OperatorConfig op(sign, 1.0);
    const auto r1 = kernel_residual(affine_kernel(g, nt, dt, s), op,
                                    DerivativeMethod::fd2, &flat);
    const auto r2 = kernel_residual(quadratic_kernel(g, nt, dt, s), op,
                                    DerivativeMethod::fd2, &flat);
    CHECK(r1.max() <= 1e-9);
    CHECK(r2.max() <= 1e-9);

    // u_vec += t e1 changes only grad v0 + curl v +/- d_t u, by +/- e1.
    SpaceTimeField w = affine_kernel(g, nt, dt, s);
    for (int j = 0; j <= nt; ++j) {
      for (std::size_t idx = 0; idx < g.size(); ++idx) {
        w.slice(j)[idx][1] += window(g.position(idx)) * w.time(j);
      }
    }
    const auto r = kernel_residual(w, op, DerivativeMethod::fd2, &flat);
    const double expected =
        std::sqrt(flat.count() * g.cell_volume() * (nt - 1) * dt);
    CHECK(r.norms[0] <= 1e-9);
    CHECK(r.norms[1] <= 1e-9);
    CHECK(r.norms[2] <= 1e-9);
    CHECK(r.norms[3] == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("kernel_residual and apply_parabolic bound each other") {
  const SpatialGrid g(8, 2.0);
  for (std::uint64_t seed = 40; seed < 45; ++seed) {
    const SpaceTimeField w = smooth_field(g, 6, 0.1, seed);
    for (Sign sign : {Sign::plus, Sign::minus}) {
      const OperatorConfig op(sign, 1.5);
      const double kr = kernel_residual(w, op).max();
      const double p = l2_norm(apply_parabolic(w, op), TimeWeights::interior);
      CHECK(kr <= 4.0 * p);
      CHECK(p <= 4.0 * kr);
    }
  }
}

TEST_CASE("wave_residual") {
  const SpatialGrid g(16, kL);
  const DomainMask flat = DomainMask::box(g, kFlat).eroded(1);
  const SpaceTimeField affine = SpaceTimeField::sample(
      g, 6, 0.1, [](const Vec3& x, double t) {
        return Complex(window(x)) *
               Biquaternion(Quaternion{t, x[0] + t, x[1], x[2]});
      });
  CHECK(max_on(wave_residual(affine, 1.0, DerivativeMethod::fd2), flat, 0, 6) <=
        1e-9);
  const SpaceTimeField quad = SpaceTimeField::sample(
      g, 6, 0.1, [](const Vec3& x, double t) {
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        return Biquaternion(Complex(window(x) * (r2 + 3 * t * t)));
      });
  CHECK(max_on(wave_residual(quad, 1.0, DerivativeMethod::fd2), flat, 0, 6) <=
        1e-9);
}

TEST_CASE("factorization of the wave operator") {
  // Compared on slices 2..nt-2, away from the one-sided end stencils.
  auto inner_norm = [](const SpaceTimeField& w) {
    double s = 0.0;
    for (int j = 2; j <= w.steps() - 2; ++j) {
      const double n = l2_norm(w.slice(j));
      s += n * n * w.dt();
    }
    return std::sqrt(s);
  };
  const SpatialGrid g(8, 2.0);
  for (double lambda : {1.0, 2.0}) {
    double diff[2];
    for (int r = 0; r < 2; ++r) {
      const int nt = 16 << r;
      const double dt = 1.0 / nt;
      const SpaceTimeField w = smooth_field(g, nt, dt, 50);
      const OperatorConfig plus(Sign::plus, lambda), minus(Sign::minus, lambda);
      const SpaceTimeField wave = wave_residual(w, lambda);
      const SpaceTimeField pm = apply_parabolic(apply_parabolic(w, minus), plus);
      const SpaceTimeField mp = apply_parabolic(apply_parabolic(w, plus), minus);
      const double scale = inner_norm(w);
      diff[r] = inner_norm(pm - wave) / scale;
      const double swapped = inner_norm(mp - wave) / scale;
      CHECK(swapped <= kFactorizationC * lambda * lambda * dt * dt);
      CHECK(diff[r] <= kFactorizationC * lambda * lambda * dt * dt);
    }
    const double order = std::log2(diff[0] / diff[1]);
    CHECK(order >= 1.8);
    CHECK(order <= 2.2);
  }
}
