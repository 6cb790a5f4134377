#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bqmaxwell::cli {

/// Human-readable check list followed by key=value summary lines.
class Report {
 public:
  explicit Report(std::string command);

  void info(const std::string& line);
  /// Recorded in the summary without a pass/fail verdict.
  void value(const std::string& key, double v);

  bool at_most(const std::string& key, double measured, double tolerance);
  bool at_least(const std::string& key, double measured, double bound);
  bool within(const std::string& key, double measured, double lo, double hi);
  /// A check that failed before a number could be measured.
  void fail(const std::string& key, const std::string& message,
            double measured);

  bool passed() const { return failed_ == 0; }
  int failed() const { return failed_; }
  int checks() const { return static_cast<int>(checks_.size()); }

  void write(std::ostream& out) const;

 private:
  struct Check {
    std::string key;
    double measured;
    std::string bound;
    bool pass;
    std::string note;
  };

  bool record(const std::string& key, double measured, std::string bound,
              bool pass);

  std::string command_;
  std::vector<std::string> lines_;
  std::vector<std::pair<std::string, double>> values_;
  std::vector<Check> checks_;
  int failed_ = 0;
};

}  // namespace bqmaxwell::cli
