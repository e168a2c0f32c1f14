#include "polylog/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "polylog/error.hpp"

namespace polylog {
namespace {

[[noreturn]] void bad(const std::string& origin, const std::string& what) {
  fail(ErrorCode::ConfigInvalid, origin + ": " + what);
}

YAML::Node need(const YAML::Node& n, const char* key, const std::string& origin) {
  auto v = n[key];
  if (!v) bad(origin, std::string("missing key '") + key + "'");
  return v;
}

Rational rational_entry(const YAML::Node& n, const std::string& origin) {
  try {
    return parse_rational(n.as<std::string>());
  } catch (const std::exception&) {
    bad(origin, "entry '" + n.as<std::string>("?") + "' is not a rational");
  }
}

void check_square(const YAML::Node& m, int r, const char* key, const std::string& origin) {
  if (!m.IsSequence() || static_cast<int>(m.size()) != r) bad(origin, std::string(key) + " must have 2d rows");
  for (const auto& row : m)
    if (!row.IsSequence() || static_cast<int>(row.size()) != r) bad(origin, std::string(key) + " must have 2d columns");
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    bad(origin, std::string("parse error: ") + e.what());
  }
  if (!root.IsMap()) bad(origin, "top level must be a mapping");
  RunConfig cfg;
  cfg.path = origin;
  auto lat = need(root, "lattice", origin);
  int d = 0;
  try {
    d = need(lat, "d", origin).as<int>();
  } catch (const YAML::Exception&) {
    bad(origin, "d must be an integer");
  }
  if (d < 1 || d > 4) bad(origin, "d must lie in [1, 4]");
  const int r = 2 * d;

  auto Em = need(lat, "E", origin);
  check_square(Em, r, "E", origin);
  IntMatrix E(r, std::vector<long>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      try {
        E[i][j] = Em[i][j].as<long>();
      } catch (const YAML::Exception&) {
        bad(origin, "E entries must be integers");
      }
    }

  auto norm = QNormalization::Polarization;
  if (auto q = lat["q_normalization"]) {
    auto s = q.as<std::string>();
    if (s == "unit") norm = QNormalization::Unit;
    else if (s != "polarization") bad(origin, "q_normalization must be 'polarization' or 'unit'");
  }

  auto Jm = lat["J"], Pm = lat["period_matrix"];
  if (bool(Jm) == bool(Pm)) bad(origin, "give exactly one of J and period_matrix");
  if (Jm) {
    check_square(Jm, r, "J", origin);
    RationalMatrix J(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) J(i, j) = rational_entry(Jm[i][j], origin);
    cfg.data = PolarizedAbelianData::from_rational(d, J, E, norm);
  } else {
    if (!Pm.IsSequence() || static_cast<int>(Pm.size()) != d) bad(origin, "period_matrix must have d rows");
    Eigen::MatrixXcd Pi(d, r);
    for (int i = 0; i < d; ++i) {
      if (!Pm[i].IsSequence() || static_cast<int>(Pm[i].size()) != r) bad(origin, "period_matrix rows need 2d entries");
      for (int j = 0; j < r; ++j) {
        auto e = Pm[i][j];
        try {
          if (e.IsSequence() && e.size() == 2) Pi(i, j) = {e[0].as<double>(), e[1].as<double>()};
          else Pi(i, j) = e.as<double>();
        } catch (const YAML::Exception&) {
          bad(origin, "period_matrix entries are numbers or [re, im]");
        }
      }
    }
    cfg.data = PolarizedAbelianData::from_period_matrix(d, Pi, E, norm);
  }

  if (auto def = root["defaults"]) {
    try {
      if (def["tol"]) cfg.tol = def["tol"].as<double>();
      if (def["A"]) cfg.A = def["A"].as<double>();
      if (def["grade_max"]) cfg.grade_max = def["grade_max"].as<int>();
    } catch (const YAML::Exception&) {
      bad(origin, "defaults must be numbers");
    }
  }
  if (!(cfg.tol > 0)) bad(origin, "tol must be positive");
  if (!(cfg.A > 0)) bad(origin, "A must be positive");
  if (cfg.grade_max < 2) bad(origin, "grade_max must be at least 2");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) fail(ErrorCode::ConfigNotFound, "config not found: " + path);
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigNotFound, "cannot open config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

int threads_from_env() {
  const char* v = std::getenv("POLYLOG_THREADS");
  if (!v || !*v) return 1;
  char* end = nullptr;
  long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024) fail(ErrorCode::Usage, "POLYLOG_THREADS must be a positive integer");
  return static_cast<int>(n);
}

}  // namespace polylog
