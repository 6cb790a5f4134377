#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace bqmaxwell::cli {
namespace {

std::string format_message(const std::string& key, const std::string& message,
                           int line) {
  std::ostringstream out;
  out << "config error at '" << key << "'";
  if (line >= 0) out << " (line " << line + 1 << ")";
  out << ": " << message;
  return out.str();
}

int line_of(const YAML::Node& node) {
  return node.Mark().is_null() ? -1 : node.Mark().line;
}

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void require_map(const YAML::Node& node, const std::string& path) {
  if (!node.IsMap()) {
    throw ConfigParseError(path, "expected a mapping", line_of(node));
  }
}

// Rejects keys outside `allowed`.
void check_keys(const YAML::Node& node, const std::string& path,
                const std::set<std::string>& allowed) {
  require_map(node, path);
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) {
      throw ConfigParseError(join(path, key), "unknown key",
                             line_of(kv.first));
    }
  }
}

template <typename T>
const char* type_name() {
  if constexpr (std::is_same_v<T, int> || std::is_same_v<T, unsigned>) {
    return "an integer";
  } else if constexpr (std::is_same_v<T, double>) {
    return "a number";
  } else if constexpr (std::is_same_v<T, bool>) {
    return "a boolean";
  } else {
    return "a string";
  }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar()) {
    throw ConfigParseError(path, std::string("expected ") + type_name<T>(),
                           line_of(node));
  }
  try {
    return node.as<T>();
  } catch (const YAML::BadConversion&) {
    throw ConfigParseError(path,
                           std::string("expected ") + type_name<T>() +
                               ", got '" + node.Scalar() + "'",
                           line_of(node));
  }
}

template <typename T>
void read(const YAML::Node& parent, const std::string& prefix,
          const std::string& key, T& out) {
  const YAML::Node node = parent[key];
  if (node) out = scalar<T>(node, join(prefix, key));
}

template <typename T, std::size_t N>
void read_array(const YAML::Node& parent, const std::string& prefix,
                const std::string& key, std::array<T, N>& out) {
  const YAML::Node node = parent[key];
  if (!node) return;
  const std::string path = join(prefix, key);
  if (!node.IsSequence() || node.size() != N) {
    throw ConfigParseError(
        path, "expected a list of " + std::to_string(N) + " values",
        line_of(node));
  }
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = scalar<T>(node[i], path + "[" + std::to_string(i) + "]");
  }
}

template <typename T>
void read_list(const YAML::Node& parent, const std::string& prefix,
               const std::string& key, std::vector<T>& out) {
  const YAML::Node node = parent[key];
  if (!node) return;
  const std::string path = join(prefix, key);
  if (!node.IsSequence()) {
    throw ConfigParseError(path, "expected a list", line_of(node));
  }
  out.clear();
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(scalar<T>(node[i], path + "[" + std::to_string(i) + "]"));
  }
}

template <typename E>
E choice(const YAML::Node& node, const std::string& path,
         const std::map<std::string, E>& options) {
  const auto value = scalar<std::string>(node, path);
  const auto it = options.find(value);
  if (it == options.end()) {
    std::string names;
    for (const auto& [name, _] : options) {
      names += names.empty() ? name : ", " + name;
    }
    throw ConfigParseError(path, "'" + value + "' is not one of: " + names,
                           line_of(node));
  }
  return it->second;
}

void require(bool ok, const YAML::Node& root, const std::string& path,
             const std::string& message) {
  if (ok) return;
  // Point at the offending key when it is present.
  YAML::Node node = YAML::Clone(root);
  std::stringstream parts(path);
  std::string part;
  int line = -1;
  while (std::getline(parts, part, '.')) {
    if (!node.IsMap() || !node[part]) break;
    node = node[part];
    line = line_of(node);
  }
  throw ConfigParseError(path, message, line);
}

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

GaugeSpec parse_gauge(const YAML::Node& node, const std::string& path) {
  if (!node.IsSequence()) {
    throw ConfigParseError(path, "expected a list of monomials",
                           line_of(node));
  }
  std::vector<Monomial> terms;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    check_keys(node[i], p, {"powers", "coefficient"});
    Monomial m;
    read_array(node[i], p, "powers", m.powers);
    read(node[i], p, "coefficient", m.coefficient);
    for (int k : m.powers) {
      if (k < 0) {
        throw ConfigParseError(p + ".powers", "powers must be >= 0",
                               line_of(node[i]));
      }
    }
    terms.push_back(m);
  }
  try {
    return GaugeSpec::harmonic(std::move(terms));
  } catch (const ConfigError& e) {
    throw ConfigParseError(path, e.what(), line_of(node));
  }
}

}  // namespace

ConfigParseError::ConfigParseError(const std::string& key,
                                   const std::string& message, int line)
    : ConfigError(format_message(key, message, line)), key_(key), line_(line) {}

std::string to_string(Preset p) {
  switch (p) {
    case Preset::zero: return "zero";
    case Preset::solenoidal_mode: return "solenoidal_mode";
    case Preset::polarization: return "polarization";
    case Preset::charge_violating: return "charge_violating";
    case Preset::plane_wave: return "plane_wave";
  }
  return "?";
}

RunConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigParseError("<document>", e.msg, e.mark.line);
  }
  RunConfig cfg;
  if (root.IsNull()) return cfg;
  check_keys(root, "", {"grid", "time", "operator", "medium", "source",
                        "gauge", "tolerances", "output", "threads"});

  if (const auto g = root["grid"]) {
    check_keys(g, "grid", {"n", "L"});
    read(g, "grid", "n", cfg.grid.n);
    read(g, "grid", "L", cfg.grid.L);
  }
  try {
    SpatialGrid(cfg.grid.n, cfg.grid.L);
  } catch (const ConfigError& e) {
    require(false, root, cfg.grid.n % 2 || cfg.grid.n < 4 ? "grid.n" : "grid.L",
            e.what());
  }

  if (const auto t = root["time"]) {
    check_keys(t, "time", {"nt", "dt"});
    read(t, "time", "nt", cfg.time.nt);
    read(t, "time", "dt", cfg.time.dt);
  }
  require(cfg.time.nt >= 3, root, "time.nt",
          "time.nt must be >= 3 (got " + std::to_string(cfg.time.nt) + ")");
  require(positive(cfg.time.dt), root, "time.dt",
          "time.dt must be positive and finite");

  if (const auto o = root["operator"]) {
    check_keys(o, "operator", {"sign", "lambda", "lambdas", "quadrature"});
    if (o["sign"]) {
      cfg.op.sign = choice<Sign>(o["sign"], "operator.sign",
                                 {{"plus", Sign::plus}, {"minus", Sign::minus}});
    }
    read(o, "operator", "lambda", cfg.op.lambda);
    read_list(o, "operator", "lambdas", cfg.op.lambdas);
    if (o["quadrature"]) {
      cfg.op.quadrature = choice<TimeQuadrature>(
          o["quadrature"], "operator.quadrature",
          {{"trapezoid", TimeQuadrature::trapezoid},
           {"exponential", TimeQuadrature::exponential}});
    }
  }
  require(positive(cfg.op.lambda), root, "operator.lambda",
          "operator.lambda must be positive and finite");
  require(!cfg.op.lambdas.empty(), root, "operator.lambdas",
          "operator.lambdas must not be empty");
  for (double l : cfg.op.lambdas) {
    require(positive(l), root, "operator.lambdas",
            "operator.lambdas entries must be positive and finite");
  }

  if (const auto m = root["medium"]) {
    check_keys(m, "medium", {"units", "eps", "mu"});
    if (m["units"]) {
      cfg.medium.units = choice<Units>(
          m["units"], "medium.units",
          {{"gaussian", Units::gaussian}, {"si", Units::si}});
    }
    read(m, "medium", "eps", cfg.medium.eps);
    read(m, "medium", "mu", cfg.medium.mu);
  }
  require(positive(cfg.medium.eps), root, "medium.eps",
          "medium.eps must be positive and finite (got " +
              std::to_string(cfg.medium.eps) + ")");
  require(positive(cfg.medium.mu), root, "medium.mu",
          "medium.mu must be positive and finite (got " +
              std::to_string(cfg.medium.mu) + ")");

  if (const auto s = root["source"]) {
    check_keys(s, "source",
               {"kind", "preset", "mode", "amplitude", "frequency", "window",
                "support", "rho", "j", "seed"});
    if (s["kind"]) {
      cfg.source.kind = choice<SourceKind>(
          s["kind"], "source.kind",
          {{"preset", SourceKind::preset}, {"file", SourceKind::file}});
    }
    if (s["preset"]) {
      cfg.source.preset = choice<Preset>(
          s["preset"], "source.preset",
          {{"zero", Preset::zero},
           {"solenoidal_mode", Preset::solenoidal_mode},
           {"polarization", Preset::polarization},
           {"charge_violating", Preset::charge_violating},
           {"plane_wave", Preset::plane_wave}});
    }
    read_array(s, "source", "mode", cfg.source.mode);
    read_array(s, "source", "amplitude", cfg.source.amplitude);
    read(s, "source", "frequency", cfg.source.frequency);
    if (const auto w = s["window"]) {
      check_keys(w, "source.window", {"flat", "support"});
      read(w, "source.window", "flat", cfg.source.flat);
      read(w, "source.window", "support", cfg.source.support);
    }
    if (s["support"]) {
      cfg.source.support_policy = choice<SupportPolicy>(
          s["support"], "source.support",
          {{"padded_subbox", SupportPolicy::padded_subbox},
           {"unrestricted", SupportPolicy::unrestricted}});
    }
    read(s, "source", "rho", cfg.source.rho_file);
    read(s, "source", "j", cfg.source.j_file);
    read(s, "source", "seed", cfg.source.seed);
  }
  for (int m : cfg.source.mode) {
    require(2 * std::abs(m) < cfg.grid.n, root, "source.mode",
            "source.mode entries must satisfy |m| < grid.n/2");
  }
  require(cfg.source.mode != std::array<int, 3>{0, 0, 0}, root, "source.mode",
          "source.mode must be nonzero");
  require(std::isfinite(cfg.source.frequency), root, "source.frequency",
          "source.frequency must be finite");
  require(cfg.source.flat >= 0.0 && cfg.source.flat < cfg.source.support &&
              cfg.source.support <= 1.0,
          root, "source.window",
          "source.window needs 0 <= flat < support <= 1 (fractions of L/4)");
  if (cfg.source.kind == SourceKind::file) {
    require(!cfg.source.rho_file.empty() && !cfg.source.j_file.empty(), root,
            "source", "source.kind=file needs source.rho and source.j paths");
  }

  if (const auto g = root["gauge"]) {
    check_keys(g, "gauge", {"h1", "h2"});
    if (g["h1"]) cfg.gauge.h1 = parse_gauge(g["h1"], "gauge.h1");
    if (g["h2"]) cfg.gauge.h2 = parse_gauge(g["h2"], "gauge.h2");
  }

  if (const auto t = root["tolerances"]) {
    check_keys(t, "tolerances", {"conservation", "residual", "inverse",
                                 "kernel", "oracle", "completion"});
    auto& tol = cfg.tolerances;
    for (auto [key, ptr] :
         std::initializer_list<std::pair<const char*, double*>>{
             {"conservation", &tol.conservation},
             {"residual", &tol.residual},
             {"inverse", &tol.inverse},
             {"kernel", &tol.kernel},
             {"oracle", &tol.oracle},
             {"completion", &tol.completion}}) {
      read(t, "tolerances", key, *ptr);
      require(positive(*ptr), root, std::string("tolerances.") + key,
              std::string("tolerances.") + key +
                  " must be positive and finite");
    }
  }

  if (const auto o = root["output"]) {
    check_keys(o, "output", {"directory", "formats", "slices", "axis", "index"});
    read(o, "output", "directory", cfg.output.directory);
    std::vector<std::string> formats;
    read_list(o, "output", "formats", formats);
    for (const auto& f : formats) {
      if (f == "csv") {
        cfg.output.csv = true;
      } else if (f == "bqmx") {
        cfg.output.bqmx = true;
      } else {
        require(false, root, "output.formats",
                "output.formats entries must be csv or bqmx (got '" + f + "')");
      }
    }
    read_list(o, "output", "slices", cfg.output.slices);
    read(o, "output", "axis", cfg.output.axis);
    read(o, "output", "index", cfg.output.index);
  }
  require(cfg.output.axis >= 0 && cfg.output.axis < 3, root, "output.axis",
          "output.axis must be 0, 1 or 2");
  require(cfg.output.index >= -1 && cfg.output.index < cfg.grid.n, root,
          "output.index", "output.index must be -1 or in [0, grid.n)");
  for (int s : cfg.output.slices) {
    require(s >= 0 && s <= cfg.time.nt, root, "output.slices",
            "output.slices entries must be in [0, time.nt]");
  }

  if (root["threads"]) {
    cfg.threads = scalar<int>(root["threads"], "threads");
    require(cfg.threads >= 1, root, "threads", "threads must be >= 1");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace bqmaxwell::cli
