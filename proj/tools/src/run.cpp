#include "run.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <bqmaxwell/completion.hpp>
#include <bqmaxwell/field_io.hpp>
#include <bqmaxwell/maxwell.hpp>
#include <bqmaxwell/parabolic_teodorescu.hpp>
#include <bqmaxwell/teodorescu_static.hpp>

namespace bqmaxwell::cli {
namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

std::string sign_name(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

std::string lambda_name(double lambda) {
  std::ostringstream out;
  out << "lambda_" << lambda;
  std::string s = out.str();
  for (auto& c : s) {
    if (c == '.') c = 'p';
  }
  return s;
}

double relative(double num, double den) { return den > 0.0 ? num / den : num; }

Complex plane(const Vec3& k, const Vec3& x) {
  return std::exp(
      Complex(0.0, 2.0 * kPi * (k[0] * x[0] + k[1] * x[1] + k[2] * x[2])));
}

// Smooth, band-limited in space (|m_i| <= 1), random complex coefficients.
SpaceTimeField band_limited_source(const SpatialGrid& grid, int nt, double dt,
                                   unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  struct Term {
    std::vector<Complex> phase;
    Biquaternion steady, oscillating;
    double nu, offset;
  };
  std::vector<Term> terms;
  auto random_biquat = [&] {
    return Biquaternion{Complex(uni(rng), uni(rng)), Complex(uni(rng), uni(rng)),
                        Complex(uni(rng), uni(rng)),
                        Complex(uni(rng), uni(rng))};
  };
  for (int m0 = -1; m0 <= 1; ++m0) {
    for (int m1 = -1; m1 <= 1; ++m1) {
      for (int m2 = -1; m2 <= 1; ++m2) {
        const double L = grid.length();
        const Vec3 k{m0 / L, m1 / L, m2 / L};
        Term t;
        t.phase.resize(grid.size());
        for (std::size_t idx = 0; idx < grid.size(); ++idx) {
          t.phase[idx] = plane(k, grid.position(idx));
        }
        t.steady = random_biquat();
        t.oscillating = random_biquat();
        t.nu = 0.5 + 0.25 * uni(rng);
        t.offset = kPi * uni(rng);
        terms.push_back(std::move(t));
      }
    }
  }
  SpaceTimeField w(grid, nt, dt);
  for (int j = 0; j <= nt; ++j) {
    auto& s = w.slice(j);
    for (const auto& t : terms) {
      const Complex g = std::cos(2.0 * kPi * t.nu * w.time(j) + t.offset);
      const Biquaternion c = t.steady + g * t.oscillating;
      for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        s[idx] += t.phase[idx] * c;
      }
    }
  }
  return w;
}

// Fourth-order centred d_t at interior slice j (2 <= j <= nt - 2).
BiquatField time_derivative4(const SpaceTimeField& w, int j) {
  BiquatField out(w.grid());
  const double f = 1.0 / (12.0 * w.dt());
  const auto &a = w.slice(j - 2), &b = w.slice(j - 1), &c = w.slice(j + 1),
             &d = w.slice(j + 2);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    out[idx] = Complex(f) * (a[idx] - Complex(8.0) * b[idx] +
                             Complex(8.0) * c[idx] - d[idx]);
  }
  return out;
}

double sum_norm2(const BiquatField& f, const DomainMask* region = nullptr) {
  double s = 0.0;
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    if (!region || region->contains(idx)) s += f[idx].norm2();
  }
  return s;
}

SupportPolicy default_support(const RunConfig& cfg) {
  if (cfg.source.support_policy) return *cfg.source.support_policy;
  if (cfg.source.kind == SourceKind::file) return SupportPolicy::padded_subbox;
  switch (cfg.source.preset) {
    case Preset::solenoidal_mode:
    case Preset::polarization:
      return SupportPolicy::unrestricted;
    default:
      return SupportPolicy::padded_subbox;
  }
}

void write_outputs(const RunConfig& cfg, const std::string& dir,
                   const EMSolution& sol, Report& report) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const bool bqmx = cfg.output.bqmx || !cfg.output.csv;
  if (bqmx) {
    write_bqmx_file((fs::path(dir) / "E.bqmx").string(), sol.E);
    write_bqmx_file((fs::path(dir) / "B.bqmx").string(), sol.B);
    report.info("wrote " + (fs::path(dir) / "E.bqmx").string() + ", B.bqmx");
  }
  if (cfg.output.csv) {
    std::vector<int> slices = cfg.output.slices;
    if (slices.empty()) slices = {0, sol.E.steps()};
    const int index =
        cfg.output.index >= 0 ? cfg.output.index : sol.E.grid().n() / 2;
    for (const auto& [name, field] :
         {std::pair{"E", &sol.E}, std::pair{"B", &sol.B}}) {
      const auto path = fs::path(dir) / (std::string(name) + "_slice.csv");
      std::ofstream out(path);
      if (!out) throw std::runtime_error("cannot write " + path.string());
      write_csv_slice(out, *field, cfg.output.axis, index, slices);
    }
    report.info("wrote " + (fs::path(dir) / "E_slice.csv").string() +
                ", B_slice.csv");
  }
}

// --- solve ----------------------------------------------------------------

void run_solve(const RunConfig& cfg, const std::string& out_dir,
               Report& report) {
  BuiltSource built = build_source(cfg);
  const SourceSpec& src = built.source;
  const bool si = cfg.medium.units == Units::si;
  report.info("source: " + (cfg.source.kind == SourceKind::file
                                ? std::string("file")
                                : to_string(cfg.source.preset)) +
              (si ? ", SI units" : ", Gaussian units"));

  const ConservationReport cons = charge_conservation(src, 1.0);
  report.value("conservation.absolute", cons.absolute);

  MaxwellOptions options;
  options.conservation_tolerance = cfg.tolerances.conservation;
  options.quadrature = cfg.op.quadrature;
  options.support = built.support;
  std::optional<EMSolution> solved;
  try {
    solved = si ? solve_si(src, cfg.medium.eps, cfg.medium.mu, cfg.gauge.h1,
                           cfg.gauge.h2, options)
                : solve_gaussian(src, cfg.gauge.h1, cfg.gauge.h2, options);
  } catch (const PreconditionError& e) {
    report.fail("charge_conservation", e.what(), e.measured());
    return;
  }
  EMSolution& sol = *solved;
  report.at_most("charge_conservation", cons.relative,
                 cfg.tolerances.conservation);
  if (built.homogeneous) {
    sol.E += built.homogeneous->E;
    sol.B += built.homogeneous->B;
  }

  const MaxwellResidual res = maxwell_residual(sol, src);
  const char* names[4] = {"gauss_law", "faraday", "magnetic_gauss",
                          "ampere_maxwell"};
  for (int i = 0; i < 4; ++i) {
    report.at_most(std::string("maxwell.") + names[i], res.relative[i],
                   cfg.tolerances.residual);
  }
  const auto bq = biquaternion_residual(sol, src);
  const auto c = equivalence_constants(sol);
  // Ratio of the biquaternion residual to the recombined Maxwell residual.
  for (int i = 0; i < 4; ++i) {
    const double scaled = c[i] * res.absolute[i];
    report.value(std::string("equivalence.") + names[i],
                 scaled > 0.0 ? bq[i] / scaled : bq[i]);
  }
  const SpaceTimeField phi = to_biquaternion(sol);
  report.at_most("potential.scalar_part", scalar_part(phi).max_abs(), 0.0);

  const int last = sol.E.steps();
  const double h3 = sol.E.grid().cell_volume();
  report.value("E.initial_norm", std::sqrt(h3 * sum_norm2(sol.E.slice(0))));
  report.value("B.initial_norm", std::sqrt(h3 * sum_norm2(sol.B.slice(0))));
  report.value("E.final_norm", std::sqrt(h3 * sum_norm2(sol.E.slice(last))));
  report.value("B.final_norm", std::sqrt(h3 * sum_norm2(sol.B.slice(last))));

  if (!out_dir.empty()) write_outputs(cfg, out_dir, sol, report);
}

// --- verify-inverse -------------------------------------------------------

double right_inverse_residual(const SpaceTimeField& w,
                              const OperatorConfig& op,
                              TimeQuadrature quadrature) {
  const SpaceTimeField t = right_inverse_apply(
      w, op, ParabolicOptions{quadrature, SupportPolicy::unrestricted});
  const SpaceTimeField r = apply_parabolic(t, op) - w;
  return relative(l2_norm(r, TimeWeights::interior),
                  l2_norm(w, TimeWeights::interior));
}

void run_verify_inverse(const RunConfig& cfg, Report& report) {
  const SpatialGrid grid(cfg.grid.n, cfg.grid.L);
  const SpaceTimeField w =
      band_limited_source(grid, cfg.time.nt, cfg.time.dt, cfg.source.seed);
  const SpaceTimeField w_fine = band_limited_source(
      grid, 2 * cfg.time.nt, 0.5 * cfg.time.dt, cfg.source.seed);
  report.info("band-limited source |m_i| <= 1, seed " +
              std::to_string(cfg.source.seed) + ", n=" +
              std::to_string(cfg.grid.n) + " nt=" +
              std::to_string(cfg.time.nt) + " dt=" + fmt(cfg.time.dt));
  for (Sign sign : {Sign::plus, Sign::minus}) {
    for (double lambda : cfg.op.lambdas) {
      const OperatorConfig op(sign, lambda);
      const std::string key =
          "right_inverse." + sign_name(sign) + "." + lambda_name(lambda);
      const double coarse = right_inverse_residual(w, op, cfg.op.quadrature);
      const double fine =
          right_inverse_residual(w_fine, op, cfg.op.quadrature);
      report.at_most(key + ".residual", coarse, cfg.tolerances.inverse);
      report.at_least(key + ".halving_ratio", coarse / fine, 2.0);
    }
  }
  const SpaceTimeField zero(grid, cfg.time.nt, cfg.time.dt);
  report.at_most("right_inverse.zero_source",
                 right_inverse_apply(zero, OperatorConfig(cfg.op.sign, 1.0))
                     .max_abs(),
                 0.0);
}

// --- kernel-check ---------------------------------------------------------

// Windowed kernel elements live on an L = 4 box with the flat zone |x_i| <= 1.2.
constexpr double kKernelLength = 4.0;
constexpr double kKernelFlat = 1.2;
constexpr double kKernelSupport = 1.9;

SpaceTimeField affine_kernel(const SpatialGrid& grid, int nt, double dt,
                             double s) {
  return SpaceTimeField::sample(grid, nt, dt, [&](const Vec3& x, double t) {
    const double c = box_window(x, kKernelFlat, kKernelSupport);
    const Quaternion u{t, x[0], x[1], x[2]};
    const Quaternion v{-3.0 * t, x[0] / 3.0, x[1] / 3.0, x[2] / 3.0};
    return Complex(c) * Biquaternion::from_parts(u, s * v);
  });
}

SpaceTimeField quadratic_kernel(const SpatialGrid& grid, int nt, double dt,
                                double s,
                                const std::function<double(const Vec3&)>& window) {
  return SpaceTimeField::sample(grid, nt, dt, [&](const Vec3& x, double t) {
    const double c = window(x);
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const Quaternion u{r2 + 3.0 * t * t, 0.0, 0.0, 0.0};
    const Quaternion v{0.0, 2.0 * t * x[0], 2.0 * t * x[1], 2.0 * t * x[2]};
    return Complex(c) * Biquaternion::from_parts(u, s * v);
  });
}

double cos6(double y, double L) { return std::pow(std::cos(kPi * y / L), 6); }
double cos6_derivative(double y, double L) {
  return -6.0 * std::pow(std::cos(kPi * y / L), 5) * std::sin(kPi * y / L) *
         kPi / L;
}

// || fd2 (D +/- i d_t)(chi w) - (grad chi) w || over interior slices.
double quadratic_kernel_discretization_error(int n, Sign sign) {
  const double L = kKernelLength;
  const SpatialGrid grid(n, L);
  const int nt = 4;
  const double dt = 0.1;
  const double s = sign_factor(sign);
  auto chi = [L](const Vec3& x) {
    return cos6(x[0], L) * cos6(x[1], L) * cos6(x[2], L);
  };
  const SpaceTimeField w = quadratic_kernel(grid, nt, dt, s, chi);
  const SpaceTimeField p =
      apply_parabolic(w, OperatorConfig(sign, 1.0), DerivativeMethod::fd2);
  double sum = 0.0;
  for (int j = 1; j < nt; ++j) {
    const double t = j * dt;
    const auto& slice = p.slice(j);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      const Vec3 x = grid.position(idx);
      const Quaternion grad{
          0.0, cos6_derivative(x[0], L) * cos6(x[1], L) * cos6(x[2], L),
          cos6(x[0], L) * cos6_derivative(x[1], L) * cos6(x[2], L),
          cos6(x[0], L) * cos6(x[1], L) * cos6_derivative(x[2], L)};
      const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
      const Biquaternion bare = Biquaternion::from_parts(
          {r2 + 3.0 * t * t, 0.0, 0.0, 0.0},
          {0.0, s * 2.0 * t * x[0], s * 2.0 * t * x[1], s * 2.0 * t * x[2]});
      sum += (slice[idx] - grad * bare).norm2();
    }
  }
  return std::sqrt(sum * grid.cell_volume() * dt);
}

void run_kernel_check(const RunConfig& cfg, Report& report) {
  const int n = std::max(cfg.grid.n, 16);
  const SpatialGrid grid(n, kKernelLength);
  const int nt = 8;
  const double dt = 0.05;
  const DomainMask flat =
      DomainMask::box(grid, kKernelFlat).eroded(1);
  report.info("kernel elements on L=4, n=" + std::to_string(n) +
              ", flat-top window, fd2 derivatives on the flat zone");
  auto square = [](const Vec3& x) {
    return box_window(x, kKernelFlat, kKernelSupport);
  };
  for (Sign sign : {Sign::plus, Sign::minus}) {
    const double s = sign_factor(sign);
    const OperatorConfig op(sign, 1.0);
    const auto r1 = kernel_residual(affine_kernel(grid, nt, dt, s), op,
                                    DerivativeMethod::fd2, &flat);
    const auto r2 = kernel_residual(quadratic_kernel(grid, nt, dt, s, square), op,
                                    DerivativeMethod::fd2, &flat);
    for (int i = 0; i < 4; ++i) {
      report.at_most("affine." + sign_name(sign) + ".part" +
                         std::to_string(i + 1),
                     r1.norms[i], cfg.tolerances.kernel);
    }
    for (int i = 0; i < 4; ++i) {
      report.at_most("quadratic." + sign_name(sign) + ".part" +
                         std::to_string(i + 1),
                     r2.norms[i], cfg.tolerances.kernel);
    }
    const double coarse = quadratic_kernel_discretization_error(n, sign);
    const double fine = quadratic_kernel_discretization_error(2 * n, sign);
    report.value("quadratic." + sign_name(sign) + ".windowed_error", coarse);
    report.within("quadratic." + sign_name(sign) + ".order",
                  std::log2(coarse / fine), 1.8, 2.2);
  }

  // Completion checks on the unit ball, n = 32.
  const SpatialGrid g32(32, kKernelLength);
  const DomainMask ball = DomainMask::ball(g32, 1.0);
  const DomainMask inner = DomainMask::ball(g32, 0.6);
  auto wide = [](const Vec3& x) { return box_window(x, 1.0, 2.0); };
  const SpaceTimeField u = SpaceTimeField::sample(
      g32, nt, dt, [&](const Vec3& x, double t) {
        return Complex(wide(x)) * Biquaternion(Quaternion{t, x[0], x[1], x[2]});
      });
  const auto conj = metaharmonic_conjugate(u, OperatorConfig(Sign::plus, 1.0),
                                           GaugeSpec::zero(), ball);
  const SpaceTimeField u0 = SpaceTimeField::sample(
      g32, nt, dt, [&](const Vec3& x, double t) {
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        return Biquaternion(Complex(wide(x) * (r2 + 3.0 * t * t)));
      });
  const SpaceTimeField U = conjugate_operator_U(u0, ball);
  double ev = 0, nv = 0, eu = 0, nu = 0;
  for (int j = 1; j <= nt; ++j) {
    const double t = j * dt;
    for (std::size_t idx = 0; idx < g32.size(); ++idx) {
      if (!inner.contains(idx)) continue;
      const Vec3 x = g32.position(idx);
      const Biquaternion v_exact(
          Quaternion{-3.0 * t, x[0] / 3.0, x[1] / 3.0, x[2] / 3.0});
      const Biquaternion u_exact{0.0, Complex(0.0, 2.0 * t * x[0]),
                                 Complex(0.0, 2.0 * t * x[1]),
                                 Complex(0.0, 2.0 * t * x[2])};
      ev += (conj.v.slice(j)[idx] - v_exact).norm2();
      nv += v_exact.norm2();
      eu += (U.slice(j)[idx] - u_exact).norm2();
      nu += u_exact.norm2();
    }
  }
  report.at_most("conjugate.linear", std::sqrt(ev / nv),
                 cfg.tolerances.completion);
  report.at_most("conjugate_operator.quadratic", std::sqrt(eu / nu),
                 cfg.tolerances.completion);
}

// --- oracle ---------------------------------------------------------------

void run_oracle(const RunConfig& cfg, Report& report) {
  const SpatialGrid grid(cfg.grid.n, cfg.grid.L);
  const int nt = cfg.time.nt;
  const double dt = cfg.time.dt;
  const double L = cfg.grid.L;
  const Vec3 k{cfg.source.mode[0] / L, cfg.source.mode[1] / L,
               cfg.source.mode[2] / L};
  const double kn = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
  report.info("single mode k = (" + fmt(k[0]) + ", " + fmt(k[1]) + ", " +
              fmt(k[2]) + "), lambda = 1");

  auto mode_field = [&](int steps, double step) {
    return SpaceTimeField::sample(grid, steps, step, [&](const Vec3& x,
                                                         double) {
      return Biquaternion(plane(k, x));
    });
  };
  auto oracle_error = [&](const SpaceTimeField& t, double s) {
    double err = 0.0;
    for (int j = 0; j <= t.steps(); ++j) {
      const double theta = 2.0 * kPi * kn * t.time(j);
      const double a = std::sin(theta) / (2.0 * kPi * kn);
      const double b = -s * (1.0 - std::cos(theta)) / (2.0 * kPi * kn * kn);
      for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        const Complex e = plane(k, grid.position(idx));
        const Biquaternion exact{a * e, b * k[0] * e, b * k[1] * e,
                                 b * k[2] * e};
        err = std::max(err, std::sqrt((t.slice(j)[idx] - exact).norm2()));
      }
    }
    return err;
  };

  const SpaceTimeField w = mode_field(nt, dt);
  const SpaceTimeField w_fine = mode_field(2 * nt, 0.5 * dt);
  for (Sign sign : {Sign::plus, Sign::minus}) {
    const OperatorConfig op(sign, 1.0);
    const double s = sign_factor(sign);
    const std::string key = "parabolic." + sign_name(sign);
    const ParabolicOptions exact{TimeQuadrature::exponential,
                                 SupportPolicy::unrestricted};
    const ParabolicOptions trap{TimeQuadrature::trapezoid,
                                SupportPolicy::unrestricted};
    report.at_most(key + ".exponential",
                   oracle_error(parabolic_teodorescu(w, op, exact), s),
                   cfg.tolerances.oracle);
    const double coarse = oracle_error(parabolic_teodorescu(w, op, trap), s);
    const double fine =
        oracle_error(parabolic_teodorescu(w_fine, op, trap), s);
    report.value(key + ".trapezoid", coarse);
    report.within(key + ".trapezoid_order", std::log2(coarse / fine), 1.8,
                  2.2);

    // (D +/- i d_t) T[-/+ i w] - w with a fourth-order time stencil.
    const SpaceTimeField t = right_inverse_apply(w, op, exact);
    double num = 0.0, den = 0.0;
    for (int j = 2; j <= nt - 2; ++j) {
      BiquatField r = apply_D(t.slice(j));
      r += Complex(0.0, s) * time_derivative4(t, j);
      r -= w.slice(j);
      num += sum_norm2(r);
      den += sum_norm2(w.slice(j));
    }
    report.at_most(key + ".right_inverse", std::sqrt(num / den), 1e-6);
  }

  // T_Omega[1] on the unit ball against -x/3.
  const SpatialGrid g32(32, 4.0);
  const BiquatField one = BiquatField::sample(
      g32, [](const Vec3&) { return Biquaternion(Complex(1.0)); });
  const BiquatField tb = teodorescu(one, DomainMask::ball(g32, 1.0));
  const DomainMask inner = DomainMask::ball(g32, 0.6);
  double num = 0.0, den = 0.0;
  for (std::size_t idx = 0; idx < g32.size(); ++idx) {
    if (!inner.contains(idx)) continue;
    const Vec3 x = g32.position(idx);
    const Biquaternion exact{0.0, -x[0] / 3.0, -x[1] / 3.0, -x[2] / 3.0};
    num += (tb[idx] - exact).norm2();
    den += exact.norm2();
  }
  report.at_most("teodorescu.unit_ball", std::sqrt(num / den),
                 cfg.tolerances.completion);

  // Vacuum plane wave.
  const EMSolution pw =
      plane_wave(grid, nt, dt, cfg.source.mode, cfg.source.amplitude);
  const MaxwellResidual res =
      maxwell_residual(pw, SourceSpec::zero(grid, nt, dt));
  report.at_most("plane_wave.maxwell", res.max_relative(),
                 cfg.tolerances.residual);

  // exp of a pure quaternion against its 30-term power series, summed at
  // q / 16 and squared back four times.
  double worst = 0.0;
  for (double r : {0.0, 1e-8, 0.5, 2.0, 7.5, 10.0}) {
    const Quaternion q = Quaternion::pure({0.6 * r, -0.48 * r, 0.64 * r});
    const Quaternion small = (1.0 / 16.0) * q;
    Quaternion term{1.0, 0.0, 0.0, 0.0}, series = term;
    for (int m = 1; m < 30; ++m) {
      term = (1.0 / m) * (term * small);
      series += term;
    }
    for (int s = 0; s < 4; ++s) series = series * series;
    const Quaternion e = exp_pure(q);
    worst = std::max(worst, std::sqrt((e - series).norm2()));
  }
  report.at_most("exp_pure.series", worst, 1e-12);
}

}  // namespace

std::optional<Subcommand> parse_subcommand(const std::string& name) {
  if (name == "solve") return Subcommand::solve;
  if (name == "verify-inverse") return Subcommand::verify_inverse;
  if (name == "kernel-check") return Subcommand::kernel_check;
  if (name == "oracle") return Subcommand::oracle;
  return std::nullopt;
}

std::string to_string(Subcommand s) {
  switch (s) {
    case Subcommand::solve: return "solve";
    case Subcommand::verify_inverse: return "verify-inverse";
    case Subcommand::kernel_check: return "kernel-check";
    case Subcommand::oracle: return "oracle";
  }
  return "?";
}

BuiltSource build_source(const RunConfig& cfg) {
  const SpatialGrid grid(cfg.grid.n, cfg.grid.L);
  const int nt = cfg.time.nt;
  const double dt = cfg.time.dt;
  const Units units = cfg.medium.units;
  BuiltSource out{SourceSpec::zero(grid, nt, dt, units), default_support(cfg),
                  std::nullopt};
  if (cfg.source.kind == SourceKind::file) {
    SpaceTimeField rho = read_bqmx_file(cfg.source.rho_file);
    SpaceTimeField j = read_bqmx_file(cfg.source.j_file);
    if (!(rho.grid() == grid) || rho.steps() != nt || rho.dt() != dt) {
      throw ConfigParseError("source.rho",
                             "file grid or time axis differs from config");
    }
    out.source = SourceSpec{std::move(rho), std::move(j), units};
    try {
      out.source.validate();
    } catch (const ConfigError& e) {
      throw ConfigParseError("source", e.what());
    }
    return out;
  }
  const double quarter = 0.25 * cfg.grid.L;
  const double flat = cfg.source.flat * quarter;
  const double support = cfg.source.support * quarter;
  switch (cfg.source.preset) {
    case Preset::zero:
      break;
    case Preset::solenoidal_mode:
      out.source = solenoidal_mode_source(grid, nt, dt, cfg.source.mode,
                                          cfg.source.amplitude,
                                          cfg.source.frequency, units);
      break;
    case Preset::polarization:
      out.source = polarization_source(grid, nt, dt, cfg.source.amplitude,
                                       flat, support, units);
      break;
    case Preset::charge_violating:
      out.source =
          charge_violating_source(grid, nt, dt, flat, support, units);
      break;
    case Preset::plane_wave:
      out.homogeneous =
          plane_wave(grid, nt, dt, cfg.source.mode, cfg.source.amplitude,
                     units, cfg.medium.eps, cfg.medium.mu);
      break;
  }
  return out;
}

Report run(Subcommand command, const RunConfig& cfg,
           const std::string& out_dir) {
  Report report(to_string(command));
  report.info("grid n=" + std::to_string(cfg.grid.n) + " L=" +
              fmt(cfg.grid.L) + ", time nt=" + std::to_string(cfg.time.nt) +
              " dt=" + fmt(cfg.time.dt));
  switch (command) {
    case Subcommand::solve:
      run_solve(cfg, out_dir, report);
      break;
    case Subcommand::verify_inverse:
      run_verify_inverse(cfg, report);
      break;
    case Subcommand::kernel_check:
      run_kernel_check(cfg, report);
      break;
    case Subcommand::oracle:
      run_oracle(cfg, report);
      break;
  }
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream out(std::filesystem::path(out_dir) / "report.txt");
    report.write(out);
  }
  return report;
}

}  // namespace bqmaxwell::cli
