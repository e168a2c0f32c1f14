#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "polylog/cli.hpp"
#include "polylog/config.hpp"
#include "polylog/error.hpp"

using namespace polylog;
using json = nlohmann::json;

namespace {

const std::string kDir = POLYLOG_DATA_DIR;

struct Out {
  int code;
  std::string out, err;
  std::vector<json> records() const {
    std::vector<json> v;
    std::istringstream in(out);
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) v.push_back(json::parse(line));
    return v;
  }
};

Out run(std::vector<std::string> args) {
  args.insert(args.begin(), "polylog");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("config grammar") {
  auto cfg = load_config(kDir + "/configs/tau_i.yaml");
  CHECK(cfg.data.d() == 1);
  CHECK(cfg.grade_max == 6);
  CHECK(cfg.tol == doctest::Approx(1e-10));
  CHECK(cfg.data.J_exact().has_value());
  auto e = load_config(kDir + "/configs/z2_euclidean.yaml");
  CHECK(e.data.normalization() == QNormalization::Unit);
  auto p = load_config(kDir + "/configs/d2_product.yaml");
  CHECK(p.data.d() == 2);
  CHECK(p.data.conventions().j_square_residual < 1e-12);

  auto cfg2 = parse_config("lattice:\n  d: 1\n  J: [['0', '-1'], ['1', '0']]\n  E: [[0, -2], [2, 0]]\n");
  CHECK(cfg2.data.E_int()[0][1] == -2);
  CHECK(cfg2.A == 1.0);

  auto code = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Usage;
  };
  CHECK(code("lattice: {d: 1}") == ErrorCode::ConfigInvalid);
  CHECK(code("lattice:\n  d: 1\n  J: [[0, -1], [1, 0]]\n  E: [[0, -1]]\n") == ErrorCode::ConfigInvalid);
  CHECK(code("lattice:\n  d: 1\n  J: [[0, -1], [1, 0]]\n  E: [[0, -1], [1, 0]]\ndefaults: {tol: -1}\n") ==
        ErrorCode::ConfigInvalid);
  CHECK(code("lattice:\n  d: 1\n  J: [[0, -1], [1, x]]\n  E: [[0, -1], [1, 0]]\n") == ErrorCode::ConfigInvalid);
  CHECK(code("[1, 2") == ErrorCode::ConfigInvalid);
  // J incompatible with E
  CHECK(code("lattice:\n  d: 1\n  J: [[0, -1], [1, 0]]\n  E: [[0, 1], [-1, 0]]\n") == ErrorCode::ConventionViolation);
}

TEST_CASE("missing config exits 2 with a stable code") {
  auto r = run({"lattice", "info", "/nonexistent/x.yaml"});
  CHECK(r.code == 2);
  auto recs = r.records();
  REQUIRE(recs.size() == 1);
  CHECK(recs[0]["error"]["code"] == "CONFIG_NOT_FOUND");
  CHECK(r.err.find("CONFIG_NOT_FOUND") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"zeta"}).code == 2);
  CHECK(run({"zeta", "eval"}).code == 2);
  CHECK(run({"zeta", "eval", kDir + "/configs/tau_i.yaml", "--s", "x"}).code == 2);
  CHECK(run({"zeta", "eval", kDir + "/configs/tau_i.yaml", "--u", "1/2"}).code == 2);
  CHECK(run({"--format", "xml", "lattice", "info", kDir + "/configs/tau_i.yaml"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("zeta eval on the Euclidean config") {
  auto r = run({"zeta", "eval", kDir + "/configs/z2_euclidean.yaml", "--s", "2,0"});
  CHECK(r.code == 0);
  auto rec = r.records().at(0);
  CHECK(rec["command"] == "zeta eval");
  double v = rec["value"][0][0];
  CHECK(std::abs(v - 6.02681204) < 5e-9);
  for (auto key : {"inputs", "certificates", "regime", "convention_metadata"}) CHECK(rec.contains(key));
  CHECK(rec["convention_metadata"]["q_form"] == "Q(x) = E(Jx, x)");

  auto d = run({"zeta", "eval", kDir + "/configs/z2_euclidean.yaml", "--s", "3", "--mode", "direct"});
  CHECK(d.records().at(0)["regime"] == "direct");
  // s = 0 with a constant numerator is a pole of the continuation
  auto p = run({"zeta", "eval", kDir + "/configs/tau_i.yaml", "--s", "0", "--u", "1/2,0"});
  CHECK(p.records().at(0)["error"]["code"] == "POLE_AT_S");
}

TEST_CASE("lattice info and theta records") {
  auto r = run({"lattice", "info", kDir + "/configs/tau_i.yaml"});
  CHECK(r.code == 0);
  auto rec = r.records().at(0);
  CHECK(rec["value"]["kappa"] == 1);
  CHECK(rec["value"]["min_q_dual"].get<double>() == doctest::Approx(M_PI));
  auto t = run({"theta", "check-transform", kDir + "/configs/d2_product.yaml", "--t", "0.6", "--u", "1/3,0,1/5,1/7"});
  CHECK(t.code == 0);
  CHECK(t.records().at(0)["pass"] == true);
  auto e = run({"theta", "eval", kDir + "/configs/tau_i.yaml", "--t", "1", "--alpha", "2,0"});
  CHECK(e.records().at(0).contains("certificates"));
}

TEST_CASE("scans emit documented CSV columns") {
  auto z = run({"--format", "csv", "zeta", "scan", kDir + "/configs/tau_i.yaml", "--s", "2", "--grid", "2"});
  CHECK(z.code == 0);
  CHECK(z.out.rfind("u1,u2,component,value_re,value_im,grad_norm\n", 0) == 0);
  CHECK(std::count(z.out.begin(), z.out.end(), '\n') == 5);
  auto c = run({"--format", "csv", "current", "scan", kDir + "/configs/tau_i.yaml", "--grade", "3", "--grid", "2"});
  CHECK(c.code == 0);
  CHECK(c.out.rfind("u1,u2,component,value_re,value_im,grad_norm,richardson_ratio\n", 0) == 0);
  // grade 3 has two components per point
  CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 9);
  auto j = run({"current", "scan", kDir + "/configs/tau_i.yaml", "--grid", "2"});
  CHECK(j.records().size() == 4);
}

TEST_CASE("current and eisenstein records") {
  auto r = run({"current", "eval", kDir + "/configs/tau_i.yaml", "--u", "1/3,1/5", "--grade-max", "4"});
  CHECK(r.code == 0);
  auto recs = r.records();
  CHECK(recs.size() == 3);
  CHECK(recs[2]["grade"] == 4);
  CHECK(recs[2]["value"].size() == 3);
  auto z = run({"current", "eval", kDir + "/configs/tau_i.yaml", "--u", "1,0"});
  CHECK(z.code == 2);
  CHECK(z.records().at(0)["error"]["code"] == "ZERO_SECTION_SINGULARITY");
  auto e = run({"eisenstein", "eval", kDir + "/configs/tau_i.yaml", "--torsion", "1/3,1/4", "--l", "2"});
  CHECK(e.code == 0);
  CHECK(e.records().at(0)["sym_degree"] == 2);
  CHECK(e.records().at(0)["order"] == 12);
}

TEST_CASE("algebra and bm reports") {
  auto a = run({"algebra", "verify", "--m", "2", "--n", "2", "--hdim", "1", "--nmax", "2"});
  CHECK(a.code == 0);
  for (auto& rec : a.records()) CHECK(rec["pass"] == true);
  auto b = run({"bm", "verify", "--d", "1", "--r", "0.4"});
  CHECK(b.code == 0);
  auto rec = b.records().at(0);
  CHECK(std::abs(rec["value"]["integral"][0].get<double>() - 1.0) < 1e-10);
  CHECK(rec["convention_metadata"].contains("convention"));
  // too coarse a rule for the requested accuracy is a verification failure
  auto f = run({"bm", "verify", "--d", "2", "--r", "0.5", "--quad", "1", "--max-error", "1e-300"});
  CHECK(f.code == 1);
  CHECK(run({"bm", "verify", "--d", "3"}).code == 2);
}

TEST_CASE("quick suite lists every check and is repeatable") {
  auto a = run({"--threads", "1", "suite", "run", "--quick"});
  CHECK(a.code == 0);
  auto recs = a.records();
  int checks = 0;
  for (auto& r : recs)
    if (r.contains("check")) {
      ++checks;
      CHECK(r["pass"] == true);
    }
  CHECK(checks == 11);
  CHECK(recs.back()["summary"]["passed"] == 11);
  auto b = run({"--threads", "1", "suite", "run", "--quick"});
  CHECK(a.out == b.out);
  auto only = run({"suite", "run", "--quick", "--only", "2,3"});
  CHECK(only.records().size() == 4);
  CHECK(run({"suite", "run", "--only", "12"}).code == 2);
}

TEST_CASE("thread count from the environment") {
  setenv("POLYLOG_THREADS", "2", 1);
  CHECK(threads_from_env() == 2);
  auto a = run({"zeta", "eval", kDir + "/configs/tau_i.yaml", "--s", "0.5,1", "--u", "1/3,1/7"});
  setenv("POLYLOG_THREADS", "zero", 1);
  CHECK_THROWS_AS(threads_from_env(), Error);
  CHECK(run({"lattice", "info", kDir + "/configs/tau_i.yaml"}).code == 2);
  // the flag overrides the environment
  CHECK(run({"--threads", "1", "lattice", "info", kDir + "/configs/tau_i.yaml"}).code == 0);
  unsetenv("POLYLOG_THREADS");
  CHECK(threads_from_env() == 1);
  auto b = run({"zeta", "eval", kDir + "/configs/tau_i.yaml", "--s", "0.5,1", "--u", "1/3,1/7"});
  double va = a.records().at(0)["value"][0][0], vb = b.records().at(0)["value"][0][0];
  CHECK(std::abs(va - vb) <= 1e-12);
}
