#include <doctest.h>

#include <bqmaxwell/errors.hpp>
#include <bqmaxwell/parabolic_teodorescu.hpp>

#include "test_support.hpp"

using namespace bqmaxwell;
using bqtest::Gen;

namespace {

const ParabolicOptions kExact{TimeQuadrature::exponential,
                              SupportPolicy::unrestricted};
const ParabolicOptions kTrapezoid{TimeQuadrature::trapezoid,
                                  SupportPolicy::unrestricted};

SpaceTimeField single_mode(const SpatialGrid& g, const Vec3& k, int nt,
                           double dt) {
  return SpaceTimeField::sample(g, nt, dt, [&](const Vec3& x, double) {
    return Biquaternion(bqtest::plane_wave(k, x));
  });
}

// Closed-form s-integral of the propagator against e^{2 pi i <k,x>}:
// lambda e [sin th -/+ k^ (1 - cos th)] / (2 pi |k|), th = 2 pi |k| t / lambda.
double single_mode_error(const SpaceTimeField& t, const Vec3& k, double s,
                         double lambda) {
  const double kn = bqtest::norm(k);
  double err = 0.0;
  for (int j = 0; j <= t.steps(); ++j) {
    const double th = 2 * kPi * kn * t.time(j) / lambda;
    const double a = lambda * std::sin(th) / (2 * kPi * kn);
    const double b = -s * lambda * (1 - std::cos(th)) / (2 * kPi * kn * kn);
    for (std::size_t idx = 0; idx < t.grid().size(); ++idx) {
      const Complex e = bqtest::plane_wave(k, t.grid().position(idx));
      const Biquaternion exact{a * e, b * k[0] * e, b * k[1] * e, b * k[2] * e};
      err = std::max(err, bqtest::distance(t.slice(j)[idx], exact));
    }
  }
  return err;
}

double inverse_residual(const SpaceTimeField& w, const OperatorConfig& op) {
  const SpaceTimeField t = right_inverse_apply(w, op, kTrapezoid);
  return l2_norm(apply_parabolic(t, op) - w, TimeWeights::interior) /
         l2_norm(w, TimeWeights::interior);
}

double scalar_wave_defect(const SpaceTimeField& w, const OperatorConfig& op) {
  const SpaceTimeField t = right_inverse_apply(w, op, kTrapezoid);
  const SpaceTimeField r = scalar_part(wave_residual(t, op.lambda()));
  return l2_norm(r, TimeWeights::interior) / l2_norm(w, TimeWeights::interior);
}

}  // namespace

TEST_CASE("propagator cache") {
  const SpatialGrid g(8, 2.0);
  for (double lambda : {1.0, 2.0}) {
    const PropagatorCache plus(g, OperatorConfig(Sign::plus, lambda), 0.05);
    const PropagatorCache minus(g, OperatorConfig(Sign::minus, lambda), 0.05);
    const PropagatorCache plus2(g, OperatorConfig(Sign::plus, lambda), 0.10);
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
      const Quaternion& p = plus.step(idx);
      CHECK(std::abs(p.norm() - 1.0) <= 1e-14);
      CHECK(plus.step(g.negated_index(idx)) == conj(p));
      CHECK(minus.step(idx) == conj(p));
      const Vec3 k = g.derivative_wavevector(idx);
      const double f = -2 * kPi * 0.05 / lambda;
      const Quaternion expected =
          exp_pure(Quaternion::pure({f * k[0], f * k[1], f * k[2]}));
      CHECK(bqtest::distance(p, expected) <= 1e-15);
      // Group property: two steps of dt are one step of 2 dt.
      CHECK(bqtest::distance(p * p, plus2.step(idx)) <= 1e-12);
    }
    CHECK(plus.step(0) == Quaternion(1, 0, 0, 0));
  }
}

TEST_CASE("parabolic_teodorescu: trivial cases and errors") {
  Gen gen(71);
  const SpatialGrid g(8, 2.0);
  const OperatorConfig op(Sign::plus, 1.0);
  const SpaceTimeField zero(g, 4, 0.1);
  CHECK(parabolic_teodorescu(zero, op, kExact).max_abs() == 0.0);
  const SpaceTimeField w = bqtest::SpaceTimeBandLimited(gen, 2.0, 1, 0.25, 0.75)
                               .sample(g, 4, 0.1);
  for (auto options : {kExact, kTrapezoid}) {
    const SpaceTimeField t = parabolic_teodorescu(w, op, options);
    CHECK(t.slice(0).max_abs() == 0.0);
    CHECK(t.slice(1).max_abs() > 0.0);
  }
  CHECK_THROWS_AS(parabolic_teodorescu(w, op), ConfigError);

  std::vector<BiquatField> spectral;
  for (const auto& s : w.slices()) spectral.push_back(dft_forward(s));
  CHECK_THROWS_AS(
      parabolic_teodorescu(SpaceTimeField(spectral, 0.1), op, kExact),
      StateError);

  const SpaceTimeField boxed = SpaceTimeField::sample(
      g, 4, 0.1, [](const Vec3& x, double t) {
        return Complex(t * box_window(x, 0.1, 0.4)) * Biquaternion(1.0);
      });
  CHECK_NOTHROW(parabolic_teodorescu(boxed, op));
}

TEST_CASE("parabolic_teodorescu: single-mode closed form") {
  const SpatialGrid g(8, 2.0);
  const Vec3 k{0.5, 1.0, -0.5};
  for (double lambda : {1.0, 2.0}) {
    for (Sign sign : {Sign::plus, Sign::minus}) {
      const OperatorConfig op(sign, lambda);
      const double s = sign_factor(sign);
      const SpaceTimeField w = single_mode(g, k, 32, 0.02);
      CHECK(single_mode_error(parabolic_teodorescu(w, op, kExact), k, s,
                              lambda) <= 1e-8);
      const double coarse =
          single_mode_error(parabolic_teodorescu(w, op, kTrapezoid), k, s, lambda);
      const double fine = single_mode_error(
          parabolic_teodorescu(single_mode(g, k, 64, 0.01), op, kTrapezoid), k,
          s, lambda);
      const double order = std::log2(coarse / fine);
      CHECK(order >= 1.8);
      CHECK(order <= 2.2);
    }
  }
}

TEST_CASE("parabolic_teodorescu: sign duality on a single mode") {
  const SpatialGrid g(8, 2.0);
  const Vec3 k{0.5, 0.0, 1.0};
  const SpaceTimeField w = single_mode(g, k, 16, 0.05);
  const SpaceTimeField tp =
      parabolic_teodorescu(w, OperatorConfig(Sign::plus, 1.0), kExact);
  const SpaceTimeField tm =
      parabolic_teodorescu(w, OperatorConfig(Sign::minus, 1.0), kExact);
  CHECK(tp.slice(0).max_abs() == 0.0);
  CHECK(tm.slice(0).max_abs() == 0.0);
  // Scalar (sin) parts agree; vector parts are opposite.
  CHECK(scalar_part(tp - tm).max_abs() <= 1e-14);
  CHECK(vector_part(tp + tm).max_abs() <= 1e-14);
  CHECK(vector_part(tp).max_abs() >= 0.01);
}

TEST_CASE("right_inverse_apply: band-limited source") {
  Gen gen(72);
  const SpatialGrid g(16, 2.0);
  const bqtest::SpaceTimeBandLimited src(gen, 2.0, 1, 0.25, 0.75);
  const SpaceTimeField w = src.sample(g, 64, 0.01);
  const SpaceTimeField w_fine = src.sample(g, 128, 0.005);
  for (Sign sign : {Sign::plus, Sign::minus}) {
    const OperatorConfig op(sign, 1.0);
    const double coarse = inverse_residual(w, op);
    const double fine = inverse_residual(w_fine, op);
    CHECK(coarse <= 1e-3);
    CHECK(coarse / fine >= 2.0);
  }
  const SpaceTimeField zero(g, 8, 0.01);
  CHECK(right_inverse_apply(zero, OperatorConfig()).max_abs() == 0.0);
}

TEST_CASE("right_inverse_apply: single-mode residual") {
  const SpatialGrid g(8, 2.0);
  const Vec3 k{0.5, -0.5, 0.5};
  const SpaceTimeField w = single_mode(g, k, 64, 0.01);
  for (Sign sign : {Sign::plus, Sign::minus}) {
    const OperatorConfig op(sign, 1.0);
    const double s = sign_factor(sign);
    const SpaceTimeField t = right_inverse_apply(w, op, kExact);
    double num = 0.0, den = 0.0;
    for (int j = 2; j <= w.steps() - 2; ++j) {
      BiquatField r = apply_D(t.slice(j));
      r += Complex(0.0, s) * bqtest::time_derivative4(t, j);
      r -= w.slice(j);
      num += std::pow(l2_norm(r), 2);
      den += std::pow(l2_norm(w.slice(j)), 2);
    }
    CHECK(std::sqrt(num / den) <= 1e-6);
  }
}

TEST_CASE("compatibility_residual") {
  const SpatialGrid g(16, 2.0);
  const SpaceTimeField c = SpaceTimeField::sample(
      g, 4, 0.1, [](const Vec3&, double) {
        return Biquaternion(Complex(2, 1), 1.0, Complex(0, 1), -1.0);
      });
  CHECK(compatibility_residual(c, OperatorConfig()).max_abs() <= 1e-12);
  CHECK_THROWS_AS(compatibility_residual(SpaceTimeField(g, 2, 0.1),
                                         OperatorConfig()),
                  SizeError);

  // -4 pi (rho - i j) with rho = 0 and j a time-modulated solenoidal mode.
  const Vec3 k{0.5, 0.5, 0.0};
  const Vec3 a{0.0, 0.0, 1.0};
  const SpaceTimeField w = SpaceTimeField::sample(
      g, 16, 0.02, [&](const Vec3& x, double t) {
        const double s = std::sin(2 * kPi * bqtest::dot(k, x));
        const double f = std::sin(2 * kPi * t);
        return Complex(0.0, 4 * kPi * f * s) * Biquaternion(Quaternion::pure(a));
      });
  const double scale = l2_norm(w, TimeWeights::interior) / 0.5;
  CHECK(l2_norm(compatibility_residual(w, OperatorConfig(Sign::minus)),
                TimeWeights::interior) <= 1e-12 * scale);

  // Static curl of a mode, either sign, fd2: div curl cancels exactly.
  const SpaceTimeField curl = SpaceTimeField::sample(
      g, 4, 0.1, [&](const Vec3& x, double) {
        const double cs = std::cos(2 * kPi * bqtest::dot(k, x)) * 2 * kPi;
        // curl (a sin(2 pi k.x)) = 2 pi cos(..) k x a
        return Biquaternion(Quaternion::pure(
            {cs * (k[1] * a[2] - k[2] * a[1]), cs * (k[2] * a[0] - k[0] * a[2]),
             cs * (k[0] * a[1] - k[1] * a[0])}));
      });
  for (Sign sign : {Sign::plus, Sign::minus}) {
    for (auto m : {DerivativeMethod::spectral, DerivativeMethod::fd2}) {
      CHECK(compatibility_residual(curl, OperatorConfig(sign), m).max_abs() <=
            1e-10);
    }
  }
}

TEST_CASE("scalar part of the right inverse solves the wave equation iff "
          "the source is compatible") {
  const SpatialGrid g(16, 2.0);
  for (Sign sign : {Sign::plus, Sign::minus}) {
    const OperatorConfig op(sign, 1.0);
    const double s = sign_factor(sign);
    const SpaceTimeField good = bqtest::wave_pair_source(g, 32, 0.01, s, -1.0);
    const SpaceTimeField bad = bqtest::wave_pair_source(g, 32, 0.01, s, 0.0);
    const double eps_good =
        l2_norm(compatibility_residual(good, op), TimeWeights::interior) /
        l2_norm(good, TimeWeights::interior);
    const double eps_bad =
        l2_norm(compatibility_residual(bad, op), TimeWeights::interior) /
        l2_norm(bad, TimeWeights::interior);
    const double d_good = scalar_wave_defect(good, op);
    const double d_bad = scalar_wave_defect(bad, op);
    const double d_fine =
        scalar_wave_defect(bqtest::wave_pair_source(g, 64, 0.005, s, -1.0), op);
    const double h = g.spacing();
    CHECK(eps_good <= 1e-12);
    CHECK(eps_bad >= 0.1);
    CHECK(d_good <= eps_good + h * h + 0.01 * 0.01);
    CHECK(d_bad >= 0.1);
    CHECK(d_bad >= 100.0 * d_good);
    CHECK(std::log2(d_good / d_fine) >= 1.8);
  }
}
