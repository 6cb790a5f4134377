#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bqmaxwell/biquat.hpp"

namespace bqmaxwell {

/// Uniform periodic grid of n^3 nodes on the box [-L/2, L/2)^3.
///
/// Nodes are stored row-major with axis x1 slowest.  The DFT of a field lives
/// on the same index set; index q along an axis stands for the integer
/// frequency m = q for q < n/2 and m = q - n otherwise, i.e. k = m / L with
/// m in [-n/2, n/2).
class SpatialGrid {
 public:
  SpatialGrid(int n, double length);

  int n() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / n_; }
  double cell_volume() const {
    const double h = spacing();
    return h * h * h;
  }
  std::size_t size() const {
    return static_cast<std::size_t>(n_) * n_ * n_;
  }

  double coord(int i) const { return -0.5 * length_ + i * spacing(); }
  std::size_t index(int i0, int i1, int i2) const {
    return (static_cast<std::size_t>(i0) * n_ + i1) * n_ + i2;
  }
  std::array<int, 3> multi_index(std::size_t idx) const;
  Vec3 position(std::size_t idx) const;

  /// Integer frequency of DFT index q.
  int mode(int q) const { return q < n_ / 2 ? q : q - n_; }
  /// Physical frequency m / L of DFT index q.
  double frequency(int q) const { return mode(q) / length_; }
  /// Lattice wavevector k of a spectral node.
  Vec3 wavevector(std::size_t idx) const;
  /// Wavevector used by the spectral derivative: identical to wavevector()
  /// except that the Nyquist component (m = -n/2), which has no partner -k
  /// on the lattice, is set to zero.
  Vec3 derivative_wavevector(std::size_t idx) const;
  bool is_nyquist(std::size_t idx) const;
  /// Lattice index of -k (the Nyquist component maps to itself).
  std::size_t negated_index(std::size_t idx) const;

  friend bool operator==(const SpatialGrid&, const SpatialGrid&) = default;

 private:
  int n_;
  double length_;
};

SpatialGrid build_grid(int n, double length);

enum class Domain : std::uint8_t { physical = 0, spectral = 1 };

/// n^3 biquaternion samples of one function of x (or of its DFT).
class BiquatField {
 public:
  explicit BiquatField(SpatialGrid grid, Domain domain = Domain::physical);
  BiquatField(SpatialGrid grid, std::vector<Biquaternion> values,
              Domain domain);

  template <typename F>
  static BiquatField sample(const SpatialGrid& grid, F&& fn) {
    BiquatField f(grid);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      f.values_[idx] = fn(grid.position(idx));
    }
    return f;
  }

  const SpatialGrid& grid() const { return grid_; }
  Domain domain() const { return domain_; }
  std::size_t size() const { return values_.size(); }

  Biquaternion& operator[](std::size_t idx) { return values_[idx]; }
  const Biquaternion& operator[](std::size_t idx) const {
    return values_[idx];
  }
  std::span<Biquaternion> values() { return values_; }
  std::span<const Biquaternion> values() const { return values_; }

  BiquatField& operator+=(const BiquatField& o);
  BiquatField& operator-=(const BiquatField& o);
  BiquatField& operator*=(Complex s);

  /// this <- c * this, node by node.
  BiquatField& left_multiply(const Biquaternion& c);
  /// this <- this * c, node by node.
  BiquatField& right_multiply(const Biquaternion& c);

  double max_abs() const;

 private:
  SpatialGrid grid_;
  std::vector<Biquaternion> values_;
  Domain domain_;
};

BiquatField operator+(BiquatField a, const BiquatField& b);
BiquatField operator-(BiquatField a, const BiquatField& b);
BiquatField operator*(Complex s, BiquatField f);

/// Node-wise map.
BiquatField transform(const BiquatField& f,
                      const std::function<Biquaternion(const Biquaternion&)>& fn);

/// Continuum L2 norm: Riemann weight h^3 in the physical domain, mode weight
/// L^-3 in the spectral domain.
double l2_norm(const BiquatField& f);

/// f^(k) = h^3 sum_x exp(-2 pi i <k,x>) f(x), component by component.
/// Throws StateError unless f is physical.
BiquatField dft_forward(const BiquatField& f);
/// f(x) = L^-3 sum_k exp(2 pi i <k,x>) f^(k).  Throws StateError unless f is
/// spectral.
BiquatField dft_inverse(const BiquatField& g);

/// | ||f||^2 - ||f^||^2 | / ||f||^2 with the continuum weights above; 0 for a
/// zero field.
double plancherel_residual(const BiquatField& f);

/// Samples at t_j = j dt for j = 0..steps; every slice shares one grid and
/// one domain tag.
class SpaceTimeField {
 public:
  SpaceTimeField(SpatialGrid grid, int steps, double dt,
                 Domain domain = Domain::physical);
  SpaceTimeField(std::vector<BiquatField> slices, double dt);

  template <typename F>
  static SpaceTimeField sample(const SpatialGrid& grid, int steps, double dt,
                               F&& fn) {
    SpaceTimeField w(grid, steps, dt);
    for (int j = 0; j <= steps; ++j) {
      const double t = j * dt;
      auto& s = w.slices_[j];
      for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        s[idx] = fn(grid.position(idx), t);
      }
    }
    return w;
  }

  const SpatialGrid& grid() const { return slices_.front().grid(); }
  Domain domain() const { return slices_.front().domain(); }
  int steps() const { return static_cast<int>(slices_.size()) - 1; }
  std::size_t slice_count() const { return slices_.size(); }
  double dt() const { return dt_; }
  double time(int j) const { return j * dt_; }
  double duration() const { return steps() * dt_; }

  BiquatField& slice(int j) { return slices_[j]; }
  const BiquatField& slice(int j) const { return slices_[j]; }
  std::span<BiquatField> slices() { return slices_; }
  std::span<const BiquatField> slices() const { return slices_; }

  SpaceTimeField& operator+=(const SpaceTimeField& o);
  SpaceTimeField& operator-=(const SpaceTimeField& o);
  SpaceTimeField& operator*=(Complex s);

  double max_abs() const;

 private:
  std::vector<BiquatField> slices_;
  double dt_;
};

SpaceTimeField operator+(SpaceTimeField a, const SpaceTimeField& b);
SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b);
SpaceTimeField operator*(Complex s, SpaceTimeField f);

SpaceTimeField transform(
    const SpaceTimeField& w,
    const std::function<Biquaternion(const Biquaternion&)>& fn);

/// Projections used throughout: scalar part, vector part, Re, Im.
SpaceTimeField scalar_part(const SpaceTimeField& w);
SpaceTimeField vector_part(const SpaceTimeField& w);
SpaceTimeField real_part(const SpaceTimeField& w);
SpaceTimeField imag_part(const SpaceTimeField& w);

/// Node-set over a grid: the bounded domain Omega of the Teodorescu transform
/// and the evaluation region of residual norms.
class DomainMask {
 public:
  DomainMask(SpatialGrid grid, std::vector<char> inside);

  static DomainMask all(const SpatialGrid& grid);
  static DomainMask ball(const SpatialGrid& grid, double radius,
                         Vec3 center = {});
  /// Nodes with max_i |x_i - center_i| <= half_width.
  static DomainMask box(const SpatialGrid& grid, double half_width,
                        Vec3 center = {});
  /// The central sub-box of edge L/2 that must hold every source.
  static DomainMask padded_subbox(const SpatialGrid& grid);

  /// Drops every node with a node of the complement within `layers` grid
  /// steps along some axis (periodic).
  DomainMask eroded(int layers) const;

  const SpatialGrid& grid() const { return grid_; }
  bool contains(std::size_t idx) const { return inside_[idx] != 0; }
  std::size_t count() const { return count_; }
  /// True when every node of the mask lies in the padded sub-box.
  bool within_padded_subbox() const;

 private:
  SpatialGrid grid_;
  std::vector<char> inside_;
  std::size_t count_ = 0;
};

/// Time weights of space-time norms.
enum class TimeWeights {
  trapezoid,  // all slices, composite trapezoid in t
  interior,   // slices 1..steps-1, weight dt each
};

/// sqrt( sum_t w_t sum_x h^3 |f|^2 ), optionally restricted to a region.
double l2_norm(const SpaceTimeField& w, TimeWeights weights,
               const DomainMask* region = nullptr);

/// Largest |f| over the region (all nodes when null) and the given slices.
double max_abs(const SpaceTimeField& w, const DomainMask* region = nullptr,
               int first_slice = 0, int last_slice = -1);

/// C-infinity cutoff per axis: 1 for |s| <= flat, 0 for |s| >= support,
/// smooth in between.
double flat_top(double s, double flat, double support);
/// Product of flat_top over the three axes.
double box_window(const Vec3& x, double flat, double support);

/// True when every sample outside the padded sub-box is zero to within
/// rel_tol * max|w|.
bool supported_in_padded_subbox(const SpaceTimeField& w,
                                double rel_tol = 1e-14);

}  // namespace bqmaxwell
