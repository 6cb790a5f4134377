#include "report.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace bqmaxwell::cli {
namespace {

std::string num(double v) {
  std::ostringstream out;
  out.precision(6);
  out << std::scientific << v;
  return out.str();
}

}  // namespace

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::info(const std::string& line) { lines_.push_back(line); }

void Report::value(const std::string& key, double v) {
  values_.emplace_back(key, v);
  lines_.push_back("  " + key + " = " + num(v));
}

bool Report::record(const std::string& key, double measured,
                    std::string bound, bool pass) {
  if (!std::isfinite(measured)) pass = false;
  checks_.push_back({key, measured, bound, pass, ""});
  if (!pass) ++failed_;
  lines_.push_back(std::string(pass ? "[PASS] " : "[FAIL] ") + key + ": " +
                   num(measured) + " (" + bound + ")");
  return pass;
}

bool Report::at_most(const std::string& key, double measured,
                     double tolerance) {
  return record(key, measured, "<= " + num(tolerance),
                measured <= tolerance);
}

bool Report::at_least(const std::string& key, double measured, double bound) {
  return record(key, measured, ">= " + num(bound), measured >= bound);
}

bool Report::within(const std::string& key, double measured, double lo,
                    double hi) {
  return record(key, measured, "in [" + num(lo) + ", " + num(hi) + "]",
                measured >= lo && measured <= hi);
}

void Report::fail(const std::string& key, const std::string& message,
                  double measured) {
  checks_.push_back({key, measured, "rejected", false, message});
  ++failed_;
  lines_.push_back("[FAIL] " + key + ": " + message);
}

void Report::write(std::ostream& out) const {
  out << "bqmaxwell " << command_ << "\n";
  for (const auto& line : lines_) out << line << "\n";
  out << "\n# summary\n";
  out << "command=" << command_ << "\n";
  for (const auto& [key, v] : values_) out << key << "=" << num(v) << "\n";
  for (const auto& c : checks_) {
    out << "check." << c.key << ".measured=" << num(c.measured) << "\n";
    out << "check." << c.key << ".bound=" << c.bound << "\n";
    out << "check." << c.key << ".pass=" << (c.pass ? "true" : "false")
        << "\n";
  }
  out << "checks=" << checks_.size() << "\n";
  out << "failed=" << failed_ << "\n";
  out << "status=" << (failed_ == 0 ? "pass" : "fail") << "\n";
}

}  // namespace bqmaxwell::cli
