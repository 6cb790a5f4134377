#include "bqmaxwell/field_grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include "bqmaxwell/errors.hpp"
#include "fftw_support.hpp"

namespace bqmaxwell {

// ---------------------------------------------------------------- grid

SpatialGrid::SpatialGrid(int n, double length) : n_(n), length_(length) {
  if (n < 4 || n % 2 != 0) {
    std::ostringstream msg;
    msg << "grid.n must be even, >=4 (got " << n << ")";
    throw ConfigError(msg.str());
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    std::ostringstream msg;
    msg << "grid.L must be positive and finite (got " << length << ")";
    throw ConfigError(msg.str());
  }
}

SpatialGrid build_grid(int n, double length) { return {n, length}; }

std::array<int, 3> SpatialGrid::multi_index(std::size_t idx) const {
  const auto n = static_cast<std::size_t>(n_);
  return {static_cast<int>(idx / (n * n)), static_cast<int>((idx / n) % n),
          static_cast<int>(idx % n)};
}

Vec3 SpatialGrid::position(std::size_t idx) const {
  const auto m = multi_index(idx);
  return {coord(m[0]), coord(m[1]), coord(m[2])};
}

Vec3 SpatialGrid::wavevector(std::size_t idx) const {
  const auto m = multi_index(idx);
  return {frequency(m[0]), frequency(m[1]), frequency(m[2])};
}

Vec3 SpatialGrid::derivative_wavevector(std::size_t idx) const {
  const auto m = multi_index(idx);
  Vec3 k{};
  for (int a = 0; a < 3; ++a) k[a] = m[a] == n_ / 2 ? 0.0 : frequency(m[a]);
  return k;
}

bool SpatialGrid::is_nyquist(std::size_t idx) const {
  const auto m = multi_index(idx);
  return m[0] == n_ / 2 || m[1] == n_ / 2 || m[2] == n_ / 2;
}

std::size_t SpatialGrid::negated_index(std::size_t idx) const {
  const auto m = multi_index(idx);
  auto neg = [this](int q) { return q == 0 ? 0 : n_ - q; };
  return index(neg(m[0]), neg(m[1]), neg(m[2]));
}

// ---------------------------------------------------------------- fields

BiquatField::BiquatField(SpatialGrid grid, Domain domain)
    : grid_(grid), values_(grid.size()), domain_(domain) {}

BiquatField::BiquatField(SpatialGrid grid, std::vector<Biquaternion> values,
                         Domain domain)
    : grid_(grid), values_(std::move(values)), domain_(domain) {
  if (values_.size() != grid_.size()) {
    throw ConfigError("BiquatField: value count does not match grid");
  }
}

namespace {

void require_compatible(const BiquatField& a, const BiquatField& b) {
  if (!(a.grid() == b.grid())) {
    throw ConfigError("field arithmetic on different grids");
  }
  if (a.domain() != b.domain()) {
    throw StateError("field arithmetic across physical/spectral domains");
  }
}

}  // namespace

BiquatField& BiquatField::operator+=(const BiquatField& o) {
  require_compatible(*this, o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

BiquatField& BiquatField::operator-=(const BiquatField& o) {
  require_compatible(*this, o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

BiquatField& BiquatField::operator*=(Complex s) {
  for (auto& v : values_) v *= s;
  return *this;
}

BiquatField& BiquatField::left_multiply(const Biquaternion& c) {
  for (auto& v : values_) v = c * v;
  return *this;
}

BiquatField& BiquatField::right_multiply(const Biquaternion& c) {
  for (auto& v : values_) v = v * c;
  return *this;
}

double BiquatField::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, v.norm2());
  return std::sqrt(m);
}

BiquatField operator+(BiquatField a, const BiquatField& b) { return a += b; }
BiquatField operator-(BiquatField a, const BiquatField& b) { return a -= b; }
BiquatField operator*(Complex s, BiquatField f) { return f *= s; }

BiquatField transform(
    const BiquatField& f,
    const std::function<Biquaternion(const Biquaternion&)>& fn) {
  BiquatField out(f.grid(), f.domain());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = fn(f[i]);
  return out;
}

double l2_norm(const BiquatField& f) {
  double s = 0.0;
  for (const auto& v : f.values()) s += v.norm2();
  const double L = f.grid().length();
  const double weight =
      f.domain() == Domain::physical ? f.grid().cell_volume() : 1.0 / (L * L * L);
  return std::sqrt(s * weight);
}

// ---------------------------------------------------------------- DFT

namespace detail {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace detail

namespace {

// Plans for four interleaved complex components (one biquaternion per node).
// Planning is serialized; execution through the new-array interface is
// thread safe.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int n, int direction) {
    std::lock_guard lock(detail::fftw_planner_mutex());
    auto key = std::make_pair(n, direction);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t count = static_cast<std::size_t>(n) * n * n * 4;
    auto* buffer = fftw_alloc_complex(count);
    const int dims[3] = {n, n, n};
    fftw_plan plan = fftw_plan_many_dft(
        3, dims, 4, buffer, nullptr, 4, 1, buffer, nullptr, 4, 1, direction,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buffer);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::map<std::pair<int, int>, fftw_plan> plans_;
};

fftw_complex* as_fftw(std::span<Biquaternion> values) {
  static_assert(sizeof(Biquaternion) == 4 * sizeof(fftw_complex));
  return reinterpret_cast<fftw_complex*>(values.data());
}

// (-1)^(q0+q1+q2): the phase exp(-2 pi i <k, x_0>) of the corner x_0 = -L/2.
double corner_phase(const SpatialGrid& grid, std::size_t idx) {
  const auto m = grid.multi_index(idx);
  return ((m[0] + m[1] + m[2]) & 1) ? -1.0 : 1.0;
}

}  // namespace

BiquatField dft_forward(const BiquatField& f) {
  if (f.domain() != Domain::physical) {
    throw StateError("dft_forward requires a physical-domain field");
  }
  const auto& grid = f.grid();
  std::vector<Biquaternion> data(f.values().begin(), f.values().end());
  fftw_plan plan = PlanCache::instance().get(grid.n(), FFTW_FORWARD);
  fftw_execute_dft(plan, as_fftw(data), as_fftw(data));
  const double h3 = grid.cell_volume();
  for (std::size_t idx = 0; idx < data.size(); ++idx) {
    data[idx] *= Complex{h3 * corner_phase(grid, idx), 0.0};
  }
  return {grid, std::move(data), Domain::spectral};
}

BiquatField dft_inverse(const BiquatField& g) {
  if (g.domain() != Domain::spectral) {
    throw StateError("dft_inverse requires a spectral-domain field");
  }
  const auto& grid = g.grid();
  const double L = grid.length();
  const double inv_volume = 1.0 / (L * L * L);
  std::vector<Biquaternion> data(g.values().begin(), g.values().end());
  for (std::size_t idx = 0; idx < data.size(); ++idx) {
    data[idx] *= Complex{inv_volume * corner_phase(grid, idx), 0.0};
  }
  fftw_plan plan = PlanCache::instance().get(grid.n(), FFTW_BACKWARD);
  fftw_execute_dft(plan, as_fftw(data), as_fftw(data));
  return {grid, std::move(data), Domain::physical};
}

double plancherel_residual(const BiquatField& f) {
  if (f.domain() != Domain::physical) {
    throw StateError("plancherel_residual requires a physical-domain field");
  }
  const double a = l2_norm(f);
  if (a == 0.0) return 0.0;
  const double b = l2_norm(dft_forward(f));
  return std::abs(a * a - b * b) / (a * a);
}

// ---------------------------------------------------------------- space-time

SpaceTimeField::SpaceTimeField(SpatialGrid grid, int steps, double dt,
                               Domain domain)
    : dt_(dt) {
  if (steps < 2) throw SizeError("SpaceTimeField needs nt >= 2 time steps");
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigError("time.dt must be positive and finite");
  }
  slices_.assign(static_cast<std::size_t>(steps) + 1, BiquatField(grid, domain));
}

SpaceTimeField::SpaceTimeField(std::vector<BiquatField> slices, double dt)
    : slices_(std::move(slices)), dt_(dt) {
  if (slices_.size() < 3) {
    throw SizeError("SpaceTimeField needs nt >= 2 time steps");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigError("time.dt must be positive and finite");
  }
  for (const auto& s : slices_) {
    if (!(s.grid() == slices_.front().grid()) ||
        s.domain() != slices_.front().domain()) {
      throw ConfigError("SpaceTimeField slices must share grid and domain");
    }
  }
}

namespace {

void require_compatible(const SpaceTimeField& a, const SpaceTimeField& b) {
  if (a.slice_count() != b.slice_count() || a.dt() != b.dt()) {
    throw ConfigError("space-time arithmetic on different time grids");
  }
}

}  // namespace

SpaceTimeField& SpaceTimeField::operator+=(const SpaceTimeField& o) {
  require_compatible(*this, o);
  for (std::size_t j = 0; j < slices_.size(); ++j) slices_[j] += o.slices_[j];
  return *this;
}

SpaceTimeField& SpaceTimeField::operator-=(const SpaceTimeField& o) {
  require_compatible(*this, o);
  for (std::size_t j = 0; j < slices_.size(); ++j) slices_[j] -= o.slices_[j];
  return *this;
}

SpaceTimeField& SpaceTimeField::operator*=(Complex s) {
  for (auto& sl : slices_) sl *= s;
  return *this;
}

double SpaceTimeField::max_abs() const {
  double m = 0.0;
  for (const auto& s : slices_) m = std::max(m, s.max_abs());
  return m;
}

SpaceTimeField operator+(SpaceTimeField a, const SpaceTimeField& b) {
  return a += b;
}
SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b) {
  return a -= b;
}
SpaceTimeField operator*(Complex s, SpaceTimeField f) { return f *= s; }

SpaceTimeField transform(
    const SpaceTimeField& w,
    const std::function<Biquaternion(const Biquaternion&)>& fn) {
  std::vector<BiquatField> slices;
  slices.reserve(w.slice_count());
  for (const auto& s : w.slices()) slices.push_back(transform(s, fn));
  return {std::move(slices), w.dt()};
}

SpaceTimeField scalar_part(const SpaceTimeField& w) {
  return transform(w, [](const Biquaternion& b) { return Biquaternion(b.sc()); });
}

SpaceTimeField vector_part(const SpaceTimeField& w) {
  return transform(w, [](const Biquaternion& b) { return b.vec(); });
}

SpaceTimeField real_part(const SpaceTimeField& w) {
  return transform(w, [](const Biquaternion& b) { return Biquaternion(b.real()); });
}

SpaceTimeField imag_part(const SpaceTimeField& w) {
  return transform(w, [](const Biquaternion& b) { return Biquaternion(b.imag()); });
}

// ---------------------------------------------------------------- masks

DomainMask::DomainMask(SpatialGrid grid, std::vector<char> inside)
    : grid_(grid), inside_(std::move(inside)) {
  if (inside_.size() != grid_.size()) {
    throw ConfigError("DomainMask: node count does not match grid");
  }
  count_ = static_cast<std::size_t>(
      std::count_if(inside_.begin(), inside_.end(), [](char c) { return c != 0; }));
  if (count_ == 0) throw ConfigError("DomainMask: empty domain");
}

DomainMask DomainMask::all(const SpatialGrid& grid) {
  return {grid, std::vector<char>(grid.size(), 1)};
}

DomainMask DomainMask::ball(const SpatialGrid& grid, double radius, Vec3 center) {
  std::vector<char> inside(grid.size());
  const double r2 = radius * radius * (1.0 + 1e-12);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const Vec3 x = grid.position(idx);
    double d2 = 0.0;
    for (int a = 0; a < 3; ++a) d2 += (x[a] - center[a]) * (x[a] - center[a]);
    inside[idx] = d2 <= r2;
  }
  return {grid, std::move(inside)};
}

DomainMask DomainMask::box(const SpatialGrid& grid, double half_width,
                           Vec3 center) {
  std::vector<char> inside(grid.size());
  const double limit = half_width + 1e-12 * grid.length();
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const Vec3 x = grid.position(idx);
    bool in = true;
    for (int a = 0; a < 3; ++a) in = in && std::abs(x[a] - center[a]) <= limit;
    inside[idx] = in;
  }
  return {grid, std::move(inside)};
}

DomainMask DomainMask::padded_subbox(const SpatialGrid& grid) {
  return box(grid, 0.25 * grid.length());
}

DomainMask DomainMask::eroded(int layers) const {
  const int n = grid_.n();
  std::vector<char> out(inside_);
  for (std::size_t idx = 0; idx < inside_.size(); ++idx) {
    if (!inside_[idx]) continue;
    const auto m = grid_.multi_index(idx);
    bool keep = true;
    for (int a = 0; a < 3 && keep; ++a) {
      for (int d = -layers; d <= layers && keep; ++d) {
        auto q = m;
        q[a] = ((q[a] + d) % n + n) % n;
        keep = inside_[grid_.index(q[0], q[1], q[2])] != 0;
      }
    }
    out[idx] = keep;
  }
  return {grid_, std::move(out)};
}

bool DomainMask::within_padded_subbox() const {
  const double limit = 0.25 * grid_.length() * (1.0 + 1e-12);
  for (std::size_t idx = 0; idx < inside_.size(); ++idx) {
    if (!inside_[idx]) continue;
    const Vec3 x = grid_.position(idx);
    for (double c : x) {
      if (std::abs(c) > limit) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- norms

double l2_norm(const SpaceTimeField& w, TimeWeights weights,
               const DomainMask* region) {
  const double h3 = w.grid().cell_volume();
  const int steps = w.steps();
  double total = 0.0;
  for (int j = 0; j <= steps; ++j) {
    double wt = w.dt();
    if (weights == TimeWeights::trapezoid) {
      if (j == 0 || j == steps) wt *= 0.5;
    } else if (j == 0 || j == steps) {
      continue;
    }
    double s = 0.0;
    const auto& sl = w.slice(j);
    for (std::size_t idx = 0; idx < sl.size(); ++idx) {
      if (region && !region->contains(idx)) continue;
      s += sl[idx].norm2();
    }
    total += wt * h3 * s;
  }
  return std::sqrt(total);
}

double max_abs(const SpaceTimeField& w, const DomainMask* region,
               int first_slice, int last_slice) {
  if (last_slice < 0) last_slice = w.steps();
  double m = 0.0;
  for (int j = first_slice; j <= last_slice; ++j) {
    const auto& sl = w.slice(j);
    for (std::size_t idx = 0; idx < sl.size(); ++idx) {
      if (region && !region->contains(idx)) continue;
      m = std::max(m, sl[idx].norm2());
    }
  }
  return std::sqrt(m);
}

double flat_top(double s, double flat, double support) {
  const double a = std::abs(s);
  if (a <= flat) return 1.0;
  if (a >= support) return 0.0;
  const double tau = (a - flat) / (support - flat);
  auto psi = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
  const double p = psi(1.0 - tau);
  return p / (p + psi(tau));
}

double box_window(const Vec3& x, double flat, double support) {
  return flat_top(x[0], flat, support) * flat_top(x[1], flat, support) *
         flat_top(x[2], flat, support);
}

bool supported_in_padded_subbox(const SpaceTimeField& w, double rel_tol) {
  const double limit = rel_tol * w.max_abs();
  const double edge = 0.25 * w.grid().length() * (1.0 + 1e-12);
  const auto& grid = w.grid();
  for (const auto& sl : w.slices()) {
    for (std::size_t idx = 0; idx < sl.size(); ++idx) {
      const Vec3 x = grid.position(idx);
      const bool inside = std::abs(x[0]) <= edge && std::abs(x[1]) <= edge &&
                          std::abs(x[2]) <= edge;
      if (!inside && std::sqrt(sl[idx].norm2()) > limit) return false;
    }
  }
  return true;
}

}  // namespace bqmaxwell
