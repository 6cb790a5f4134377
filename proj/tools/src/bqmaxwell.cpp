#include <cstdlib>
#include <iostream>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include <bqmaxwell/parallel.hpp>

#include "run.hpp"

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

int thread_count_from_env() {
  const char* env = std::getenv("BQMAXWELL_THREADS");
  if (!env || !*env) return 0;
  try {
    const int n = std::stoi(env);
    return n > 0 ? n : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace bqmaxwell::cli;

  CLI::App app{"Biquaternionic wave and Maxwell solver"};
  app.require_subcommand(1, 1);
  std::string config_path;
  std::string out_dir;
  int threads = 0;
  const std::pair<const char*, const char*> subcommands[] = {
      {"solve", "solve Maxwell's equations for the configured source"},
      {"verify-inverse", "check the right inverse of the parabolic operator"},
      {"kernel-check", "check closed-form kernel elements and completion"},
      {"oracle", "compare transforms against closed-form values"},
  };
  for (const auto& [name, help] : subcommands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "YAML run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "directory for report and fields");
    sub->add_option("--threads", threads, "worker threads")
        ->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  const auto command = parse_subcommand(app.get_subcommands().front()->get_name());

  try {
    RunConfig cfg = load_config(config_path);
    if (out_dir.empty()) out_dir = cfg.output.directory;
    int n = threads;
    if (n == 0) n = cfg.threads;
    if (n == 0) n = thread_count_from_env();
    if (n > 0) bqmaxwell::set_thread_count(n);

    const Report report = run(*command, cfg, out_dir);
    report.write(std::cout);
    return report.passed() ? 0 : kExitChecksFailed;
  } catch (const bqmaxwell::ConfigError& e) {
    std::cerr << "bqmaxwell: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "bqmaxwell: " << e.what() << "\n";
    return kExitRuntime;
  }
}
