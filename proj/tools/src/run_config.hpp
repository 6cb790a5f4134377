#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <bqmaxwell/dirac_ops.hpp>
#include <bqmaxwell/errors.hpp>
#include <bqmaxwell/gauge.hpp>
#include <bqmaxwell/maxwell.hpp>

namespace bqmaxwell::cli {

// Parse failure; what() names the key path and, when known, the line.
class ConfigParseError : public ConfigError {
 public:
  ConfigParseError(const std::string& key, const std::string& message,
                   int line = -1);

  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

enum class SourceKind { preset, file };

enum class Preset {
  zero,
  solenoidal_mode,
  polarization,
  charge_violating,
  plane_wave,
};

struct RunConfig {
  struct Grid {
    int n = 16;
    double L = 2.0;
  } grid;
  struct Time {
    int nt = 64;
    double dt = 0.01;
  } time;
  struct Operator {
    Sign sign = Sign::minus;
    double lambda = 1.0;
    std::vector<double> lambdas{1.0, 2.0, 1.4142135623730951};
    TimeQuadrature quadrature = TimeQuadrature::trapezoid;
  } op;
  struct Medium {
    Units units = Units::gaussian;
    double eps = 1.0;
    double mu = 1.0;
  } medium;
  struct Source {
    SourceKind kind = SourceKind::preset;
    Preset preset = Preset::solenoidal_mode;
    std::array<int, 3> mode{1, 0, 0};
    Vec3 amplitude{0.0, 1.0, 0.0};
    double frequency = 1.0;
    double flat = 0.1;     // window, in units of L/4
    double support = 0.9;  // window, in units of L/4
    std::optional<SupportPolicy> support_policy;
    std::string rho_file;
    std::string j_file;
    unsigned seed = 1;
  } source;
  struct Gauge {
    GaugeSpec h1;
    GaugeSpec h2;
  } gauge;
  struct Tolerances {
    double conservation = 1e-6;
    double residual = 5e-3;
    double inverse = 1e-3;
    double kernel = 1e-9;
    double oracle = 1e-8;
    double completion = 0.05;
  } tolerances;
  struct Output {
    std::string directory;
    bool csv = false;
    bool bqmx = false;
    std::vector<int> slices;  // empty: first and last
    int axis = 2;
    int index = -1;  // -1: centre plane
  } output;
  int threads = 0;  // 0: unset
};

/// YAML text to a validated RunConfig.  Unknown keys, type mismatches and
/// constraint violations throw ConfigParseError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

std::string to_string(Preset p);

}  // namespace bqmaxwell::cli
