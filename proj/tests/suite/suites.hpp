#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace minc::suite {

struct Report {
  bool passed = false;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  /// One line of counts for the summary.
  std::string detail;
  /// First few counterexamples, printed on failure.
  std::vector<std::string> examples;
  /// Observations reported without failing the suite.
  std::vector<std::string> findings;
};

struct Options {
  std::uint64_t seed = 20240601;
  /// Multiplies the corpus sizes; 1.0 meets the acceptance thresholds.
  double scale = 1.0;
};

struct Suite {
  int number;
  std::string name;
  std::string title;
  std::function<Report(const Options&)> run;
};

const std::vector<Suite>& all_suites();
const Suite* find_suite(const std::string& name);

} // namespace minc::suite
