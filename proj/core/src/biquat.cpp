#include "bqmaxwell/biquat.hpp"

#include "bqmaxwell/errors.hpp"

namespace bqmaxwell {

Quaternion& Quaternion::operator+=(const Quaternion& o) {
  for (int k = 0; k < 4; ++k) c_[k] += o.c_[k];
  return *this;
}

Quaternion& Quaternion::operator-=(const Quaternion& o) {
  for (int k = 0; k < 4; ++k) c_[k] -= o.c_[k];
  return *this;
}

Quaternion& Quaternion::operator*=(double s) {
  for (auto& c : c_) c *= s;
  return *this;
}

Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
Quaternion operator-(const Quaternion& a) { return {-a[0], -a[1], -a[2], -a[3]}; }
Quaternion operator*(double s, Quaternion q) { return q *= s; }
Quaternion operator*(Quaternion q, double s) { return q *= s; }

// Terms of each component are summed in ascending order of the left index so
// that the result is reproducible term for term.
Quaternion quat_mul(const Quaternion& a, const Quaternion& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

Quaternion conj(const Quaternion& q) { return {q[0], -q[1], -q[2], -q[3]}; }

Quaternion exp_pure(const Quaternion& q) {
  if (q.scalar() != 0.0) {
    throw DomainError("exp_pure: argument must be a pure vector quaternion");
  }
  const double r = q.norm();
  // sin(r)/r, switching to its Taylor expansion where the quotient is 0/0.
  const double sinc = r < 1e-12 ? 1.0 - r * r / 6.0 : std::sin(r) / r;
  return {std::cos(r), sinc * q[1], sinc * q[2], sinc * q[3]};
}

Biquaternion Biquaternion::from_parts(const Quaternion& u, const Quaternion& v) {
  return {Complex{u[0], v[0]}, Complex{u[1], v[1]}, Complex{u[2], v[2]},
          Complex{u[3], v[3]}};
}

Quaternion Biquaternion::real() const {
  return {c_[0].real(), c_[1].real(), c_[2].real(), c_[3].real()};
}

Quaternion Biquaternion::imag() const {
  return {c_[0].imag(), c_[1].imag(), c_[2].imag(), c_[3].imag()};
}

double Biquaternion::norm2() const {
  return std::norm(c_[0]) + std::norm(c_[1]) + std::norm(c_[2]) +
         std::norm(c_[3]);
}

Biquaternion& Biquaternion::operator+=(const Biquaternion& o) {
  for (int k = 0; k < 4; ++k) c_[k] += o.c_[k];
  return *this;
}

Biquaternion& Biquaternion::operator-=(const Biquaternion& o) {
  for (int k = 0; k < 4; ++k) c_[k] -= o.c_[k];
  return *this;
}

Biquaternion& Biquaternion::operator*=(Complex s) {
  for (auto& c : c_) c *= s;
  return *this;
}

Biquaternion operator+(Biquaternion a, const Biquaternion& b) { return a += b; }
Biquaternion operator-(Biquaternion a, const Biquaternion& b) { return a -= b; }
Biquaternion operator-(const Biquaternion& a) { return {-a[0], -a[1], -a[2], -a[3]}; }
Biquaternion operator*(Complex s, Biquaternion w) { return w *= s; }
Biquaternion operator*(Biquaternion w, Complex s) { return w *= s; }

Biquaternion operator*(const Biquaternion& a, const Biquaternion& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

Biquaternion biquat_mul(const Biquaternion& a, const Biquaternion& b) {
  const Quaternion u1 = a.real(), v1 = a.imag();
  const Quaternion u2 = b.real(), v2 = b.imag();
  return Biquaternion::from_parts(u1 * u2 - v1 * v2, u1 * v2 + v1 * u2);
}

Biquaternion operator*(const Quaternion& q, const Biquaternion& w) {
  return {q[0] * w[0] - q[1] * w[1] - q[2] * w[2] - q[3] * w[3],
          q[0] * w[1] + q[1] * w[0] + q[2] * w[3] - q[3] * w[2],
          q[0] * w[2] - q[1] * w[3] + q[2] * w[0] + q[3] * w[1],
          q[0] * w[3] + q[1] * w[2] - q[2] * w[1] + q[3] * w[0]};
}

Biquaternion conjugate(const Biquaternion& w, ConjugationKind kind) {
  if (kind == ConjugationKind::quaternionic) {
    return {w[0], -w[1], -w[2], -w[3]};
  }
  return {std::conj(w[0]), std::conj(w[1]), std::conj(w[2]), std::conj(w[3])};
}

Decomposition decompose(const Biquaternion& w) {
  return {w.real(), w.imag(), w.sc(), w.vec()};
}

}  // namespace bqmaxwell
