#pragma once

#include <string>
#include <utility>
#include <vector>

#include "polylog/lattice_sum.hpp"

namespace polylog::verify {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::pair<std::string, double>> metrics;
  std::string note;
};

struct SuiteOptions {
  bool quick = false;  // smaller samples, same tolerances
  SumOptions sum;
};

constexpr int kSuiteChecks = 11;
std::string check_name(int id);
// ids 1..11; module errors are caught and reported as a failed check
CheckResult run_check(int id, const SuiteOptions& opt);

}  // namespace polylog::verify
