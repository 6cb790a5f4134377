#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "report.hpp"
#include "run_config.hpp"

namespace bqmaxwell::cli {

enum class Subcommand { solve, verify_inverse, kernel_check, oracle };

std::optional<Subcommand> parse_subcommand(const std::string& name);
std::string to_string(Subcommand s);

struct BuiltSource {
  SourceSpec source;
  SupportPolicy support;
  std::optional<EMSolution> homogeneous;  // added to the solve output
};

/// Source described by the config (preset or BQMX files).
BuiltSource build_source(const RunConfig& cfg);

/// Runs one subcommand and fills the report.  Artifacts go to out_dir when
/// it is nonempty.  Module precondition rejections become failed checks.
Report run(Subcommand command, const RunConfig& cfg,
           const std::string& out_dir = {});

}  // namespace bqmaxwell::cli
