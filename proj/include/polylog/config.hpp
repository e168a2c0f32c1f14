#pragma once

#include <string>

#include "polylog/lattice.hpp"

namespace polylog {

struct RunConfig {
  std::string path;
  PolarizedAbelianData data;
  double tol = 1e-10;
  double A = 1.0;
  int grade_max = 4;
  int threads = 1;
  std::string format = "json";  // json | csv
  bool quick = false;
};

// YAML: lattice {d, J | period_matrix, E, q_normalization}, defaults {tol, A, grade_max}
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text, const std::string& origin = "<string>");
// POLYLOG_THREADS, or 1 when unset
int threads_from_env();

}  // namespace polylog
