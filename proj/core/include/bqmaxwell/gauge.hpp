#pragma once

#include <array>
#include <vector>

#include "bqmaxwell/biquat.hpp"

namespace bqmaxwell {

/// coefficient * x1^p[0] x2^p[1] x3^p[2]
struct Monomial {
  std::array<int, 3> powers{};
  double coefficient = 0.0;
};

/// Polynomial h(x) whose Laplacian vanishes identically; the constructor
/// checks this on the coefficients and throws ConfigError otherwise.
class HarmonicPolynomial {
 public:
  HarmonicPolynomial() = default;
  explicit HarmonicPolynomial(std::vector<Monomial> terms);

  const std::vector<Monomial>& terms() const { return terms_; }

  double value(const Vec3& x) const;
  Vec3 gradient(const Vec3& x) const;

  /// Laplacian as a list of monomials (like terms combined).
  static std::vector<Monomial> laplacian(const std::vector<Monomial>& terms);

 private:
  std::vector<Monomial> terms_;
};

/// Static harmonic gauge h: the completed fields may be shifted by grad h.
struct GaugeSpec {
  enum class Kind { zero, polynomial_harmonic };

  Kind kind = Kind::zero;
  HarmonicPolynomial polynomial;

  static GaugeSpec zero() { return {}; }
  static GaugeSpec harmonic(std::vector<Monomial> terms) {
    return {Kind::polynomial_harmonic, HarmonicPolynomial(std::move(terms))};
  }

  bool is_zero() const {
    return kind == Kind::zero || polynomial.terms().empty();
  }
  Vec3 gradient(const Vec3& x) const {
    return is_zero() ? Vec3{} : polynomial.gradient(x);
  }
};

}  // namespace bqmaxwell
