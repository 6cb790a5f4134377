#include "bqmaxwell/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "bqmaxwell/errors.hpp"

namespace bqmaxwell {
namespace {

double ipow(double x, int p) {
  double r = 1.0;
  for (int k = 0; k < p; ++k) r *= x;
  return r;
}

}  // namespace

std::vector<Monomial> HarmonicPolynomial::laplacian(
    const std::vector<Monomial>& terms) {
  std::map<std::array<int, 3>, double> acc;
  for (const auto& t : terms) {
    for (int axis = 0; axis < 3; ++axis) {
      const int p = t.powers[axis];
      if (p < 2) continue;
      auto powers = t.powers;
      powers[axis] -= 2;
      acc[powers] += t.coefficient * p * (p - 1);
    }
  }
  std::vector<Monomial> out;
  for (const auto& [powers, c] : acc) out.push_back({powers, c});
  return out;
}

HarmonicPolynomial::HarmonicPolynomial(std::vector<Monomial> terms)
    : terms_(std::move(terms)) {
  double scale = 0.0;
  for (const auto& t : terms_) {
    for (int p : t.powers) {
      if (p < 0) throw ConfigError("gauge: negative monomial power");
    }
    scale = std::max(scale, std::abs(t.coefficient));
  }
  for (const auto& m : laplacian(terms_)) {
    if (std::abs(m.coefficient) > 1e-12 * scale) {
      std::ostringstream msg;
      msg << "gauge: polynomial is not harmonic (Laplacian has coefficient "
          << m.coefficient << " on x1^" << m.powers[0] << " x2^"
          << m.powers[1] << " x3^" << m.powers[2] << ")";
      throw ConfigError(msg.str());
    }
  }
}

double HarmonicPolynomial::value(const Vec3& x) const {
  double v = 0.0;
  for (const auto& t : terms_) {
    v += t.coefficient * ipow(x[0], t.powers[0]) * ipow(x[1], t.powers[1]) *
         ipow(x[2], t.powers[2]);
  }
  return v;
}

Vec3 HarmonicPolynomial::gradient(const Vec3& x) const {
  Vec3 g{};
  for (const auto& t : terms_) {
    for (int axis = 0; axis < 3; ++axis) {
      const int p = t.powers[axis];
      if (p == 0) continue;
      double term = t.coefficient * p;
      for (int b = 0; b < 3; ++b) {
        term *= ipow(x[b], b == axis ? p - 1 : t.powers[b]);
      }
      g[axis] += term;
    }
  }
  return g;
}

}  // namespace bqmaxwell
