#include "bqmaxwell/completion.hpp"

#include <cmath>
#include <sstream>

#include "bqmaxwell/errors.hpp"

namespace bqmaxwell {
namespace {

void require_same_grid(const SpaceTimeField& w, const DomainMask& mask,
                       const char* who) {
  if (!(w.grid() == mask.grid())) {
    throw ConfigError(std::string(who) + ": mask and field grids differ");
  }
}

// Adds the static field s to every slice of w.
void add_static(SpaceTimeField& w, const BiquatField& s, Complex factor) {
  for (auto& slice : w.slices()) {
    for (std::size_t idx = 0; idx < slice.size(); ++idx) {
      slice[idx] += factor * s[idx];
    }
  }
}

}  // namespace

SpaceTimeField time_integral(const SpaceTimeField& w) {
  SpaceTimeField out(w.grid(), w.steps(), w.dt(), w.domain());
  const Complex half{0.5 * w.dt(), 0.0};
  for (int j = 0; j < w.steps(); ++j) {
    const auto& a = w.slice(j);
    const auto& b = w.slice(j + 1);
    const auto& prev = out.slice(j);
    auto& next = out.slice(j + 1);
    for (std::size_t idx = 0; idx < a.size(); ++idx) {
      next[idx] = prev[idx] + half * (a[idx] + b[idx]);
    }
  }
  return out;
}

void add_gauge_gradient(SpaceTimeField& w, const GaugeSpec& gauge,
                        Complex factor) {
  if (gauge.is_zero()) return;
  const auto& grid = w.grid();
  BiquatField g = BiquatField::sample(grid, [&](const Vec3& x) {
    const Vec3 d = gauge.gradient(x);
    return Biquaternion{0.0, d[0], d[1], d[2]};
  });
  add_static(w, g, factor);
}

PreconditionStatus check_wave_equation(const SpaceTimeField& u, double lambda,
                                       const DomainMask& mask,
                                       const CompletionOptions& options) {
  PreconditionStatus status;
  if (u.steps() < 3) {
    status.message = "wave equation not checked (nt < 3)";
    return status;
  }
  status.checked = true;
  std::vector<BiquatField> lap;
  lap.reserve(u.slice_count());
  for (const auto& s : u.slices()) lap.push_back(laplacian(s, options.method));
  const SpaceTimeField lap_u(std::move(lap), u.dt());
  const SpaceTimeField dtt = second_time_derivative(u);
  const SpaceTimeField residual = (-1.0) * lap_u + (lambda * lambda) * dtt;
  const double scale =
      l2_norm(lap_u, TimeWeights::interior, &mask) +
      lambda * lambda * l2_norm(dtt, TimeWeights::interior, &mask) +
      l2_norm(u, TimeWeights::interior, &mask);
  const double absolute = l2_norm(residual, TimeWeights::interior, &mask);
  status.measured = scale > 0.0 ? absolute / scale : 0.0;
  status.satisfied = status.measured <= options.wave_tolerance;
  std::ostringstream msg;
  msg << "wave-equation residual " << status.measured
      << (status.satisfied ? " <= " : " > ") << options.wave_tolerance;
  status.message = msg.str();
  return status;
}

ConjugateResult metaharmonic_conjugate(const SpaceTimeField& u,
                                       const OperatorConfig& cfg,
                                       const GaugeSpec& gauge,
                                       const DomainMask& mask,
                                       const CompletionOptions& options) {
  require_same_grid(u, mask, "metaharmonic_conjugate");
  const double lambda = cfg.lambda();
  PreconditionStatus status = check_wave_equation(u, lambda, mask, options);

  SpaceTimeField v = (1.0 / lambda) * time_integral(apply_D(u, options.method));
  const BiquatField t0 =
      teodorescu(time_derivative_at(u, 0), mask, options.teodorescu);
  add_static(v, t0, -lambda);
  add_gauge_gradient(v, gauge);
  return {std::move(v), std::move(status)};
}

SpaceTimeField conjugate_operator_U(const SpaceTimeField& u0,
                                    const DomainMask& mask, double lambda,
                                    const CompletionOptions& options) {
  require_same_grid(u0, mask, "conjugate_operator_U");
  for (const auto& s : u0.slices()) {
    for (const auto& q : s.values()) {
      if (q[1] != 0.0 || q[2] != 0.0 || q[3] != 0.0) {
        throw DomainError("conjugate_operator_U requires a scalar field");
      }
    }
  }
  std::vector<BiquatField> grads;
  grads.reserve(u0.slice_count());
  for (const auto& s : u0.slices()) {
    grads.push_back(div_grad_curl(s, options.method).grad);
  }
  SpaceTimeField out =
      kI * time_integral(SpaceTimeField(std::move(grads), u0.dt()));
  const BiquatField t0 =
      teodorescu(time_derivative_at(u0, 0), mask, options.teodorescu);
  add_static(out, t0, -kI * (lambda * lambda));
  for (auto& s : out.slices()) {
    for (auto& q : s.values()) q[0] = 0.0;
  }
  return out;
}

SpaceTimeField complete_to_kernel(const SpaceTimeField& u0,
                                  const OperatorConfig& cfg,
                                  const GaugeSpec& gauge,
                                  const DomainMask& mask,
                                  const CompletionOptions& options) {
  SpaceTimeField out =
      u0 + (cfg.sign_factor() / cfg.lambda()) *
               conjugate_operator_U(u0, mask, cfg.lambda(), options);
  add_gauge_gradient(out, gauge);
  return out;
}

}  // namespace bqmaxwell
