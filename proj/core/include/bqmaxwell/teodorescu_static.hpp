#pragma once

#include "bqmaxwell/field_grid.hpp"

namespace bqmaxwell {

/// Cauchy kernel E(x) = -x / (4 pi |x|^3), the fundamental solution of D.
/// Throws DomainError at x = 0.
Quaternion cauchy_kernel(const Vec3& x);

enum class TeodorescuMethod {
  automatic,  // direct for n <= 32, fft above
  direct,     // O(N^2) midpoint sum
  fft,        // the same sum as a zero-padded (2n)^3 convolution
};

/// T_Omega[w](x) = -int_Omega E(y - x) w(y) dy by the midpoint rule over the
/// masked cells, evaluated at every grid node.  The cell y = x contributes
/// zero.  Both methods produce the same discrete sum.
///
/// Throws ConfigError when the mask is on another grid or leaves the padded
/// sub-box.
BiquatField teodorescu(const BiquatField& w, const DomainMask& mask,
                       TeodorescuMethod method = TeodorescuMethod::automatic);

}  // namespace bqmaxwell
