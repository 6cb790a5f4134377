#include <doctest.h>

#include <bqmaxwell/completion.hpp>
#include <bqmaxwell/errors.hpp>

#include "test_support.hpp"

using namespace bqmaxwell;

namespace {

double wide(const Vec3& x) { return box_window(x, 1.0, 2.0); }

template <typename Exact>
double interior_error(const SpaceTimeField& w, const DomainMask& region,
                      Exact exact) {
  double num = 0.0, den = 0.0;
  for (int j = 1; j <= w.steps(); ++j) {
    for (std::size_t idx = 0; idx < w.grid().size(); ++idx) {
      if (!region.contains(idx)) continue;
      const Biquaternion e = exact(w.grid().position(idx), w.time(j));
      num += (w.slice(j)[idx] - e).norm2();
      den += e.norm2();
    }
  }
  return std::sqrt(num / den);
}

double max_on(const SpaceTimeField& w, const DomainMask& region) {
  double m = 0.0;
  for (int j = 0; j <= w.steps(); ++j) {
    for (std::size_t idx = 0; idx < w.grid().size(); ++idx) {
      if (region.contains(idx)) {
        m = std::max(m, std::sqrt(w.slice(j)[idx].norm2()));
      }
    }
  }
  return m;
}

SpaceTimeField quadratic_kernel_scalar(const SpatialGrid& g, int nt, double dt) {
  return SpaceTimeField::sample(g, nt, dt, [](const Vec3& x, double t) {
    return Biquaternion(Complex(wide(x) * (bqtest::dot(x, x) + 3 * t * t)));
  });
}

}  // namespace

TEST_CASE("time_integral") {
  const SpatialGrid g(4, 1.0);
  const SpaceTimeField w = SpaceTimeField::sample(
      g, 5, 0.2, [](const Vec3&, double t) {
        return Biquaternion(Complex(1.0 + t));
      });
  const SpaceTimeField iw = time_integral(w);
  for (int j = 0; j <= 5; ++j) {
    const double t = 0.2 * j;
    CHECK(std::abs(iw.slice(j)[0][0] - (t + t * t / 2)) <= 1e-14);
  }
}

TEST_CASE("metaharmonic_conjugate of x + t on the unit ball") {
  const SpatialGrid g(32, 4.0);
  const DomainMask ball = DomainMask::ball(g, 1.0);
  const DomainMask inner = DomainMask::ball(g, 0.6);
  const SpaceTimeField u = SpaceTimeField::sample(
      g, 8, 0.05, [](const Vec3& x, double t) {
        return Complex(wide(x)) * Biquaternion(Quaternion{t, x[0], x[1], x[2]});
      });
  const ConjugateResult r = metaharmonic_conjugate(
      u, OperatorConfig(Sign::plus), GaugeSpec::zero(), ball);
  CHECK(r.wave.checked);
  const double err = interior_error(r.v, inner, [](const Vec3& x, double t) {
    return Biquaternion(Quaternion{-3 * t, x[0] / 3, x[1] / 3, x[2] / 3});
  });
  CHECK(err <= 0.05);

  // The conjugate does not depend on the sign.
  const ConjugateResult m = metaharmonic_conjugate(
      u, OperatorConfig(Sign::minus), GaugeSpec::zero(), ball);
  CHECK((m.v - r.v).max_abs() == 0.0);
}

TEST_CASE("metaharmonic_conjugate: trivial cases and errors") {
  const SpatialGrid g(16, 4.0);
  const DomainMask ball = DomainMask::ball(g, 1.0);
  const SpaceTimeField c = SpaceTimeField::sample(
      g, 4, 0.1, [](const Vec3&, double) {
        return Biquaternion(Quaternion{1.0, 2.0, -1.0, 0.5});
      });
  const ConjugateResult r =
      metaharmonic_conjugate(c, OperatorConfig(), GaugeSpec::zero(), ball);
  CHECK(r.v.max_abs() <= 1e-12);

  // The gauge adds grad h.
  const GaugeSpec h = GaugeSpec::harmonic({{{1, 1, 0}, 2.0}});
  const ConjugateResult rh =
      metaharmonic_conjugate(c, OperatorConfig(), h, ball);
  const std::size_t idx = g.index(9, 10, 3);
  const Vec3 x = g.position(idx);
  CHECK(bqtest::distance(rh.v.slice(2)[idx] - r.v.slice(2)[idx],
                         Biquaternion(Quaternion::pure(
                             {2 * x[1], 2 * x[0], 0.0}))) <= 1e-14);

  CHECK_THROWS_AS(metaharmonic_conjugate(c, OperatorConfig(), GaugeSpec::zero(),
                                         DomainMask::ball(SpatialGrid(8, 4.0), 1.0)),
                  ConfigError);

  // x + t solves the wave equation; fd2 sees that exactly on the flat zone.
  CompletionOptions fd2;
  fd2.method = DerivativeMethod::fd2;
  const SpaceTimeField affine = SpaceTimeField::sample(
      g, 6, 0.1, [](const Vec3& x, double t) {
        return Complex(box_window(x, 1.2, 1.9)) *
               Biquaternion(Quaternion{t, x[0], x[1], x[2]});
      });
  const ConjugateResult ok = metaharmonic_conjugate(
      affine, OperatorConfig(), GaugeSpec::zero(), ball, fd2);
  CHECK(ok.wave.checked);
  CHECK(ok.wave.satisfied);
  CHECK(ok.wave.measured <= 1e-4);

  // u = t^3 violates the wave equation: flagged, not rejected.
  const SpaceTimeField cubic = SpaceTimeField::sample(
      g, 8, 0.1, [](const Vec3&, double t) {
        return Biquaternion(Complex(t * t * t));
      });
  const ConjugateResult flagged =
      metaharmonic_conjugate(cubic, OperatorConfig(), GaugeSpec::zero(), ball);
  CHECK(flagged.wave.checked);
  CHECK(!flagged.wave.satisfied);
  CHECK(flagged.wave.measured > 0.1);
  CHECK(!flagged.wave.message.empty());
}

TEST_CASE("completion contract: u +/- i v in the kernel") {
  for (Sign sign : {Sign::plus, Sign::minus}) {
    const double h = 4.0 / 16, dt = 0.02;
    CHECK(bqtest::completion_contract(16, 16, dt, sign) <= h + dt * dt);
  }
}

TEST_CASE("conjugate_operator_U") {
  const SpatialGrid g(32, 4.0);
  const DomainMask ball = DomainMask::ball(g, 1.0);
  const DomainMask inner = DomainMask::ball(g, 0.6);
  const SpaceTimeField u0 = quadratic_kernel_scalar(g, 8, 0.05);
  const SpaceTimeField U = conjugate_operator_U(u0, ball);
  CHECK(scalar_part(U).max_abs() == 0.0);
  const double err = interior_error(U, inner, [](const Vec3& x, double t) {
    return Complex(0.0, 2 * t) * Biquaternion(Quaternion::pure(x));
  });
  CHECK(err <= 0.05);
}

TEST_CASE("conjugate_operator_U: constant, static harmonic and errors") {
  const SpatialGrid g(16, 4.0);
  const DomainMask ball = DomainMask::ball(g, 1.0);
  const SpaceTimeField c = SpaceTimeField::sample(
      g, 4, 0.1, [](const Vec3&, double) { return Biquaternion(Complex(2, 1)); });
  CHECK(conjugate_operator_U(c, ball).max_abs() <= 1e-12);

  // Static harmonic u0 = x1^2 - x2^2: U = i t grad u0 (fd2 exact on the
  // flat zone of the window).
  CompletionOptions fd2;
  fd2.method = DerivativeMethod::fd2;
  const SpaceTimeField harmonic = SpaceTimeField::sample(
      g, 4, 0.1, [](const Vec3& x, double) {
        return Biquaternion(
            Complex(box_window(x, 1.2, 1.9) * (x[0] * x[0] - x[1] * x[1])));
      });
  const SpaceTimeField U = conjugate_operator_U(harmonic, ball, 1.0, fd2);
  const DomainMask flat = DomainMask::box(g, 1.2).eroded(1);
  const SpaceTimeField exact = SpaceTimeField::sample(
      g, 4, 0.1, [](const Vec3& x, double t) {
        return Complex(0.0, t) *
               Biquaternion(Quaternion::pure({2 * x[0], -2 * x[1], 0.0}));
      });
  CHECK(max_on(U - exact, flat) <= 1e-12);

  const SpaceTimeField vec = SpaceTimeField::sample(
      g, 4, 0.1, [](const Vec3&, double) {
        return Biquaternion(Quaternion{1.0, 0.0, 1e-3, 0.0});
      });
  CHECK_THROWS_AS(conjugate_operator_U(vec, ball), DomainError);
}

TEST_CASE("conjugate_operator_U equals i lambda times the conjugate of the "
          "scalar lift") {
  const SpatialGrid g(16, 4.0);
  const DomainMask ball = DomainMask::ball(g, 1.0);
  const SpaceTimeField u0 = SpaceTimeField::sample(
      g, 6, 0.05, [](const Vec3& x, double t) {
        return Biquaternion(Complex(wide(x) * std::cos(x[0] + 2 * t) *
                                    (1 + x[1] * x[2])));
      });
  for (double lambda : {1.0, 2.0}) {
    const SpaceTimeField U = conjugate_operator_U(u0, ball, lambda);
    const ConjugateResult v = metaharmonic_conjugate(
        u0, OperatorConfig(Sign::plus, lambda), GaugeSpec::zero(), ball);
    const SpaceTimeField iv = Complex(0.0, lambda) * v.v;
    CHECK(bqtest::relative_error(U.slice(6), iv.slice(6)) <= 1e-10);
    CHECK(bqtest::relative_error(U.slice(3), iv.slice(3)) <= 1e-10);
  }
}

TEST_CASE("complete_to_kernel") {
  const SpatialGrid g(16, 4.0);
  const DomainMask ball = DomainMask::ball(g, 1.0);
  const DomainMask flat = DomainMask::box(g, 1.2).eroded(1);
  const DomainMask flat2 = DomainMask::box(g, 1.2).eroded(2);
  CompletionOptions fd2;
  fd2.method = DerivativeMethod::fd2;

  // Quadratic kernel element with fd2 on the flat zone: d_t u0(0) = 0 so the T term
  // vanishes and every stencil is exact on the quadratic.
  const SpaceTimeField u0 = SpaceTimeField::sample(
      g, 8, 0.05, [](const Vec3& x, double t) {
        return Biquaternion(Complex(box_window(x, 1.2, 1.9) *
                                    (bqtest::dot(x, x) + 3 * t * t)));
      });
  for (Sign sign : {Sign::plus, Sign::minus}) {
    const double s = sign_factor(sign);
    const OperatorConfig op(sign, 1.0);
    const SpaceTimeField w =
        complete_to_kernel(u0, op, GaugeSpec::zero(), ball, fd2);
    const SpaceTimeField exact = SpaceTimeField::sample(
        g, 8, 0.05, [&](const Vec3& x, double t) {
          return Biquaternion(Complex(bqtest::dot(x, x) + 3 * t * t)) +
                 Complex(0.0, 2 * s * t) * Biquaternion(Quaternion::pure(x));
        });
    CHECK(max_on(w - exact, flat) <= 1e-10);
    CHECK(max_on(apply_parabolic(w, op, DerivativeMethod::fd2), flat2) <= 1e-9);
  }

  // u0 = 0 with a gauge gives grad h, which is in the kernel.
  const GaugeSpec h = GaugeSpec::harmonic(
      {{{2, 0, 0}, 1.0}, {{0, 0, 2}, -1.0}, {{1, 1, 1}, 0.5}});
  const SpaceTimeField zero(g, 8, 0.05);
  const SpaceTimeField gh =
      complete_to_kernel(zero, OperatorConfig(), h, ball, fd2);
  const std::size_t idx = g.index(5, 9, 12);
  const Vec3 grad = h.gradient(g.position(idx));
  CHECK(gh.slice(4)[idx] == Biquaternion(Quaternion::pure(grad)));
  CHECK(max_on(apply_parabolic(gh, OperatorConfig(), DerivativeMethod::fd2),
               flat) <= 1e-10);
}

TEST_CASE("complete_to_kernel: lambda = 2 standing wave") {
  // u0 = cos(2 pi <k,x>) cos(2 pi |k| t / lambda) solves the wave equation
  // with lambda^2 d_tt; d_t u0(0) = 0.
  const SpatialGrid g(16, 4.0);
  const DomainMask ball = DomainMask::ball(g, 1.0);
  const double lambda = 2.0;
  const Vec3 k{0.25, 0.5, 0.0};
  const double kn = bqtest::norm(k);
  double res[2];
  for (int r = 0; r < 2; ++r) {
    const int nt = 16 << r;
    const double dt = 0.64 / nt;
    const SpaceTimeField u0 = SpaceTimeField::sample(
        g, nt, dt, [&](const Vec3& x, double t) {
          return Biquaternion(Complex(std::cos(2 * kPi * bqtest::dot(k, x)) *
                                      std::cos(2 * kPi * kn * t / lambda)));
        });
    const OperatorConfig op(Sign::minus, lambda);
    const SpaceTimeField w = complete_to_kernel(u0, op, GaugeSpec::zero(), ball);
    res[r] = l2_norm(apply_parabolic(w, op), TimeWeights::interior) /
             l2_norm(apply_D(w), TimeWeights::interior);
  }
  CHECK(res[0] <= 1e-2);
  CHECK(res[0] / res[1] >= 2.0);
}

TEST_CASE("gauge shifts leave the parabolic residual unchanged") {
  const SpatialGrid g(16, 4.0);
  const DomainMask flat = DomainMask::box(g, 1.2).eroded(1);
  const SpaceTimeField u0 = quadratic_kernel_scalar(g, 6, 0.05);
  const OperatorConfig op(Sign::plus);
  CompletionOptions fd2;
  fd2.method = DerivativeMethod::fd2;
  const DomainMask ball = DomainMask::ball(g, 1.0);
  SpaceTimeField w = complete_to_kernel(u0, op, GaugeSpec::zero(), ball, fd2);
  const SpaceTimeField before = apply_parabolic(w, op, DerivativeMethod::fd2);
  add_gauge_gradient(w, GaugeSpec::harmonic({{{1, 2, 0}, 3.0}, {{1, 0, 2}, -3.0}}));
  const SpaceTimeField after = apply_parabolic(w, op, DerivativeMethod::fd2);
  CHECK(max_on(after - before, flat) <= 1e-10);
}
