#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace bqmaxwell {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr double kPi = 3.14159265358979323846;

/// Real quaternion w0 + w1 e1 + w2 e2 + w3 e3 with e_i^2 = -1, e1 e2 = e3.
class Quaternion {
 public:
  constexpr Quaternion() = default;
  constexpr Quaternion(double w0, double w1, double w2, double w3)
      : c_{w0, w1, w2, w3} {}
  constexpr explicit Quaternion(double scalar) : c_{scalar, 0.0, 0.0, 0.0} {}

  static constexpr Quaternion pure(const Vec3& v) {
    return {0.0, v[0], v[1], v[2]};
  }

  constexpr double operator[](int i) const { return c_[i]; }
  constexpr double& operator[](int i) { return c_[i]; }

  constexpr double scalar() const { return c_[0]; }
  constexpr Vec3 vector() const { return {c_[1], c_[2], c_[3]}; }

  double norm2() const {
    return c_[0] * c_[0] + c_[1] * c_[1] + c_[2] * c_[2] + c_[3] * c_[3];
  }
  double norm() const { return std::sqrt(norm2()); }

  Quaternion& operator+=(const Quaternion& o);
  Quaternion& operator-=(const Quaternion& o);
  Quaternion& operator*=(double s);

  friend bool operator==(const Quaternion&, const Quaternion&) = default;

 private:
  std::array<double, 4> c_{};
};

Quaternion operator+(Quaternion a, const Quaternion& b);
Quaternion operator-(Quaternion a, const Quaternion& b);
Quaternion operator-(const Quaternion& a);
Quaternion operator*(double s, Quaternion q);
Quaternion operator*(Quaternion q, double s);

/// Hamilton product.
Quaternion quat_mul(const Quaternion& a, const Quaternion& b);
inline Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return quat_mul(a, b);
}

/// Quaternionic conjugate (negated vector part).
Quaternion conj(const Quaternion& q);

/// cos|q| + (q/|q|) sin|q| for a pure-vector q; 1 at q = 0.
/// Throws DomainError when the scalar part is nonzero.
Quaternion exp_pure(const Quaternion& q);

/// Quaternion with complex coefficients c0 + c1 e1 + c2 e2 + c3 e3, where the
/// complex unit i commutes with every e_k.  Canonical storage is the four
/// complex coefficients; u + iv and Sc + Vec are views.
class Biquaternion {
 public:
  constexpr Biquaternion() = default;
  constexpr Biquaternion(Complex c0, Complex c1, Complex c2, Complex c3)
      : c_{c0, c1, c2, c3} {}
  constexpr explicit Biquaternion(Complex scalar)
      : c_{scalar, Complex{}, Complex{}, Complex{}} {}
  constexpr explicit Biquaternion(const Quaternion& q)
      : c_{q[0], q[1], q[2], q[3]} {}

  /// u + i v
  static Biquaternion from_parts(const Quaternion& u, const Quaternion& v);

  constexpr const Complex& operator[](int i) const { return c_[i]; }
  constexpr Complex& operator[](int i) { return c_[i]; }

  Quaternion real() const;
  Quaternion imag() const;
  constexpr Complex sc() const { return c_[0]; }
  constexpr Biquaternion vec() const {
    return {Complex{}, c_[1], c_[2], c_[3]};
  }

  /// Sum of |c_k|^2 (the Euclidean norm on C^4).
  double norm2() const;

  Biquaternion& operator+=(const Biquaternion& o);
  Biquaternion& operator-=(const Biquaternion& o);
  Biquaternion& operator*=(Complex s);

  friend bool operator==(const Biquaternion&, const Biquaternion&) = default;

 private:
  std::array<Complex, 4> c_{};
};

Biquaternion operator+(Biquaternion a, const Biquaternion& b);
Biquaternion operator-(Biquaternion a, const Biquaternion& b);
Biquaternion operator-(const Biquaternion& a);
Biquaternion operator*(Complex s, Biquaternion w);
Biquaternion operator*(Biquaternion w, Complex s);

/// Complex-coefficient Hamilton product.
Biquaternion operator*(const Biquaternion& a, const Biquaternion& b);

/// Product through the real/imaginary split
/// (u1 + i v1)(u2 + i v2) = u1 u2 - v1 v2 + i (u1 v2 + v1 u2).
Biquaternion biquat_mul(const Biquaternion& a, const Biquaternion& b);

/// Left multiplication by a real quaternion; the hot path of the spectral
/// operators.
Biquaternion operator*(const Quaternion& q, const Biquaternion& w);

enum class ConjugationKind { quaternionic, complex };

Biquaternion conjugate(const Biquaternion& w, ConjugationKind kind);

struct Decomposition {
  Quaternion re;     // u
  Quaternion im;     // v
  Complex sc;        // u0 + i v0
  Biquaternion vec;  // u_vec + i v_vec
};

Decomposition decompose(const Biquaternion& w);

inline const Complex kI{0.0, 1.0};

}  // namespace bqmaxwell
