#include <doctest.h>

#include <random>

#include "polylog/error.hpp"
#include "polylog/levin.hpp"
#include "polylog/verify.hpp"

using namespace polylog;

namespace {
TorusPoint rat(long p0, long q0, long p1, long q1) {
  return TorusPoint::from_rational({Rational(p0, q0), Rational(p1, q1)});
}

// letters: 0 = h, 1 = conj(h); g_{a,b} sits on h^{b-1} conj(h)^{a-1}
std::vector<int> d1_word(int a, int b) {
  std::vector<int> w(b - 1, 0);
  w.insert(w.end(), a - 1, 1);
  return w;
}

Eigen::VectorXd random_point(std::mt19937_64& rng, double min_dist) {
  std::uniform_real_distribution<double> U(0, 1);
  while (true) {
    Eigen::Vector2d u(U(rng), U(rng));
    double d = std::hypot(u[0] - std::round(u[0]), u[1] - std::round(u[1]));
    if (d >= min_dist) return u;
  }
}
}  // namespace

TEST_CASE("coefficient") {
  CHECK(levin_coefficient(1, 1, 0, 1, 1) == Rational(-1));
  CHECK(levin_coefficient(2, 1, 2, 2, 1) == Rational(3));
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      CHECK(abs(levin_coefficient(a, b, 0, 2, 3)) == Rational(1, 6));
      CHECK(abs(levin_coefficient(a, b, 0, 1, 4)) == Rational(1, 4));
    }
  CHECK_THROWS_AS(levin_coefficient(0, 1, 0, 1, 1), Error);
  CHECK_THROWS_AS(levin_coefficient(1, 1, 3, 1, 1), Error);
}

TEST_CASE("higher k pieces vanish on a point base") {
  auto data = verify::tau_i();
  for (int a = 1; a <= 3; ++a) {
    auto g = g_abk(data, a, 2, 1, rat(1, 3, 1, 5), 1e-10);
    CHECK(g.regime == "exact-zero");
    for (auto& [k, v] : g.components) CHECK(v == cplx(0));
    CHECK(g_abk(data, a, 2, 2, rat(1, 3, 1, 5), 1e-10).components.begin()->second == cplx(0));
  }
}

TEST_CASE("Hodge basis") {
  std::mt19937_64 rng(3);
  for (int d = 1; d <= 2; ++d) {
    auto data = d == 1 ? verify::tau_i() : verify::random_abelian(rng, 2);
    auto hb = hodge_basis(data);
    const int r = data.rank();
    Eigen::MatrixXcd J = data.J().cast<cplx>();
    for (int j = 0; j < d; ++j) {
      CHECK((J * hb.vectors.col(j) - cplx(0, 1) * hb.vectors.col(j)).norm() < 1e-12);
      CHECK((J * hb.vectors.col(d + j) + cplx(0, 1) * hb.vectors.col(d + j)).norm() < 1e-12);
    }
    std::uniform_real_distribution<double> U(-2, 2);
    for (int it = 0; it < 5; ++it) {
      Eigen::VectorXd l = Eigen::VectorXd::NullaryExpr(r, [&] { return U(rng); });
      auto hv = hodge_split(data, l);
      Eigen::VectorXcd c = hb.coords * l.cast<cplx>();
      CHECK((hb.vectors.leftCols(d) * c - hv.minus10).norm() < 1e-12);
    }
  }
  auto hb = hodge_basis(verify::tau_i());
  CHECK(std::abs(hb.vectors(0, 0) - cplx(0.5, 0)) < 1e-15);
  CHECK(std::abs(hb.vectors(1, 0) - cplx(0, -0.5)) < 1e-15);
}

TEST_CASE("grade 4 piece against the brute force sum") {
  auto data = verify::tau_i();
  auto g = g_abk(data, 2, 2, 0, rat(1, 2, 0, 1), 1e-11);
  CHECK(g.sym_degree == 2);
  CHECK(g.form_degree == 0);
  CHECK(g.components.size() == 1);
  auto o = verify::levin_d1_bruteforce(data, Eigen::Vector2d(0.5, 0), {{2, 2}}, 2e-9);
  CHECK(std::abs(g.value(d1_word(2, 2)) - o.value[{2, 2}]) <= 1e-8);
  // periodicity
  auto g2 = g_abk(data, 2, 2, 0, rat(3, 2, 0, 1), 1e-11);
  CHECK(std::abs(g2.value(d1_word(2, 2)) - g.value(d1_word(2, 2))) <= 1e-12);
  auto g3 = g_abk(data, 2, 2, 0, rat(1, 2, -2, 1), 1e-11);
  CHECK(std::abs(g3.value(d1_word(2, 2)) - g.value(d1_word(2, 2))) <= 1e-12);
}

TEST_CASE("oracle equivalence for weights above 2d") {
  std::mt19937_64 rng(11);
  std::mt19937_64 drng(5);
  std::vector<std::pair<int, int>> ab;
  for (int n = 4; n <= 6; ++n)
    for (int a = 1; a < n; ++a) ab.push_back({a, n - a});
  for (int which = 0; which < 2; ++which) {
    auto data = which == 0 ? verify::tau_i() : verify::random_abelian(drng, 1);
    for (int it = 0; it < (which == 0 ? 10 : 3); ++it) {
      Eigen::VectorXd u = random_point(rng, 0.05);
      auto o = verify::levin_d1_bruteforce(data, u, ab, 4e-8);
      for (auto [a, b] : ab) {
        auto g = g_abk(data, a, b, 0, TorusPoint::from_double(u), 1e-10);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(std::abs(g.value(d1_word(a, b)) - o.value[{a, b}]) <= 1e-7);
      }
    }
  }
}

TEST_CASE("grade 2 continuation is the Abel limit") {
  auto data = verify::tau_i();
  for (auto u : {Eigen::Vector2d(0.5, 0.5), Eigen::Vector2d(0.3, 0.1), Eigen::Vector2d(0.25, 0.6)}) {
    auto g = g_abk(data, 1, 1, 0, TorusPoint::from_double(u), 1e-12);
    CHECK(g.regime == "accelerated");
    const double t = 2e-3;
    cplx abel = 2.0 * verify::levin_d1_smoothed(data, u, 0.5 * t) - verify::levin_d1_smoothed(data, u, t);
    CHECK(std::abs(g.value({}) - abel) <= 1e-4);
  }
}

TEST_CASE("assembly") {
  auto data = verify::tau_i();
  auto u = rat(1, 3, 1, 4);
  auto tot = g_total(data, u, 2, 1e-11);
  REQUIRE(tot.size() == 1);
  auto g11 = g_abk(data, 1, 1, 0, u, 1e-12);
  CHECK(std::abs(tot[0].value({}) - g11.value({})) <= 1e-10);
  CHECK(tot[0].regime == "accelerated");

  // Hodge swap: component on swap(w) is the conjugate
  auto all = g_total(data, u, 6, 1e-11);
  for (auto& g : all)
    for (auto& [key, v] : g.components) {
      std::vector<int> sw;
      for (int l : key.first) sw.push_back(1 - l);
      std::sort(sw.begin(), sw.end());
      CHECK(std::abs(g.value(sw, key.second) - std::conj(v)) <= 1e-9);
    }

  // kappa enters as 1 / kappa
  RationalMatrix J = RationalMatrix::from_rows({{0, -1}, {1, 0}});
  auto d2 = PolarizedAbelianData::from_rational(1, J, {{0, -2}, {2, 0}});
  auto gk = g_grade(d2, rat(1, 3, 1, 4), 4, 1e-11);
  auto p = g_abk(d2, 1, 3, 0, rat(1, 3, 1, 4), 1e-12);
  CHECK(std::abs(gk.value(d1_word(1, 3)) - 0.25 * p.value(d1_word(1, 3))) <= 1e-10);

  // certificate tightens with the tolerance
  auto loose = g_grade(data, u, 3, 1e-6), tight = g_grade(data, u, 3, 5e-7);
  CHECK(tight.error_bound <= loose.error_bound);
  CHECK(loose.error_bound <= 1e-6);
}

TEST_CASE("rank 4 pieces") {
  std::mt19937_64 rng(9);
  auto data = verify::random_abelian(rng, 2);
  auto u = TorusPoint::from_double(Eigen::Vector4d(0.3, 0.1, 0.45, 0.7));
  auto g = g_abk(data, 1, 1, 0, u, 1e-9);
  CHECK(g.regime == "accelerated");
  CHECK(g.form_degree == 2);
  CHECK(g.components.size() == 6);
  for (auto& [k, v] : g.components) CHECK(std::isfinite(std::abs(v)));
  auto g2 = g_abk(data, 1, 2, 0, u, 1e-9);
  CHECK(g2.sym_degree == 1);
  CHECK(g2.components.size() == 12);
  auto shifted = TorusPoint::from_double(Eigen::Vector4d(1.3, 0.1, -0.55, 0.7));
  auto g3 = g_abk(data, 1, 2, 0, shifted, 1e-9);
  for (auto& [k, v] : g2.components) CHECK(std::abs(g3.components.at(k) - v) <= 1e-9);
}

TEST_CASE("zero section") {
  auto data = verify::tau_i();
  CHECK_THROWS_AS(g_abk(data, 2, 2, 0, rat(1, 1, 0, 1), 1e-10), Error);
  try {
    g_total(data, rat(0, 1, 2, 1), 3, 1e-10);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroSectionSingularity);
  }
  auto x = TorsionPoint::from_rational({Rational(1), Rational(0)});
  CHECK(x.order == 1);
  CHECK_THROWS_AS(eisenstein_value(data, x, 2, 6, {1, 0}, 1e-10), Error);
}

TEST_CASE("Eisenstein value at a 2-torsion point") {
  auto data = verify::tau_i();
  auto x = TorsionPoint::from_rational({Rational(1, 2), Rational(1, 2)});
  CHECK(x.order == 2);
  auto hb = hodge_basis(data);
  auto chi = pairing_functional(data, hb, {1, 0});
  CHECK(std::abs(chi[0] - cplx(0.5, 0)) < 1e-15);
  auto e = eisenstein_value(data, x, 2, 6, chi, 1e-11);
  CHECK(e.sym_degree == 2);

  // oracle: grade 5 from the box sums, signs (-1)^a (-1)^d / (d! kappa), contraction by hand
  std::vector<std::pair<int, int>> ab{{1, 4}, {2, 3}, {3, 2}, {4, 1}};
  auto o = verify::levin_d1_bruteforce(data, Eigen::Vector2d(0.5, 0.5), ab, 1e-9);
  std::map<std::vector<int>, cplx> expect;
  for (auto [a, b] : ab) {
    cplx g = double(a % 2 ? -1 : 1) * -1.0 * o.value[{a, b}];
    auto w = d1_word(a, b);
    for (std::size_t j = 0; j < w.size(); ++j) {
      std::vector<int> rest = w;
      rest.erase(rest.begin() + j);
      expect[rest] += chi[w[j]] * g / 3.0;
    }
  }
  for (auto& [w, v] : expect) CHECK(std::abs(e.value(w) - v) <= 1e-7);
  CHECK(e.components.size() == expect.size());

  // linearity in the functional
  auto c1 = pairing_functional(data, hb, {1, 0}), c2 = pairing_functional(data, hb, {0, 1});
  auto c12 = pairing_functional(data, hb, {1, 1});
  auto e1 = eisenstein_value(data, x, 2, 6, c1, 1e-11), e2 = eisenstein_value(data, x, 2, 6, c2, 1e-11);
  auto e12 = eisenstein_value(data, x, 2, 6, c12, 1e-11);
  for (auto& [k, v] : e12.components) {
    cplx s = 0;
    if (e1.components.count(k)) s += e1.components.at(k);
    if (e2.components.count(k)) s += e2.components.at(k);
    CHECK(std::abs(v - s) <= 1e-12);
  }
  CHECK_THROWS_AS(eisenstein_value(data, x, 4, 6, chi, 1e-10), Error);
}

TEST_CASE("Eisenstein value at a point of order 12") {
  auto data = verify::tau_i();
  auto x = TorsionPoint::from_rational({Rational(1, 3), Rational(1, 4)});
  CHECK(x.order == 12);
  auto chi = pairing_functional(data, hodge_basis(data), {1, 0});
  auto e = eisenstein_value(data, x, 2, 6, chi, 1e-11);
  auto expect = verify::eisenstein_d1_bruteforce(data, Eigen::Vector2d(1.0 / 3, 0.25), 2, chi, 1e-9);
  double size = 0;
  for (auto& [w, v] : expect) {
    CHECK(std::abs(e.value(w) - v) <= 1e-7);
    size = std::max(size, std::abs(v));
  }
  CHECK(size > 1e-3);
  // at 2-torsion the odd grade vanishes identically
  auto h = eisenstein_value(data, TorsionPoint::from_rational({Rational(1, 2), Rational(1, 2)}), 2, 6, chi, 1e-11);
  for (auto& [k, v] : h.components) CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("pairing with test forms") {
  auto data = verify::tau_i();
  TorusScalar zero = [](const Eigen::VectorXd&) { return cplx(0); };
  TorusScalar three = [](const Eigen::VectorXd&) { return cplx(3); };
  CHECK(pair_with_test_form(data, three, zero, 0.05, 16).value == cplx(0));
  TorusScalar w = [](const Eigen::VectorXd& u) {
    return cplx(4 * std::pow(std::sin(M_PI * u[0]) * std::sin(M_PI * u[1]), 2));
  };
  auto r = pair_with_test_form(data, three, w, 0.05, 32);
  CHECK(std::abs(r.value - 3.0) <= 1e-5);

  auto bump = bump_form(Eigen::Vector2d(0.5, 0.5), 0.4);
  TorusScalar g4 = [&](const Eigen::VectorXd& u) {
    return g_grade(data, TorusPoint::from_double(u), 4, 1e-10).value(d1_word(2, 2));
  };
  auto p = pair_with_test_form(data, g4, bump, 0.05, 32);
  CHECK(p.eps_change <= 1e-4);
  CHECK(std::isfinite(std::abs(p.value)));

  TorusScalar sing = [&](const Eigen::VectorXd& u) {
    double x = u[0] - std::round(u[0]), y = u[1] - std::round(u[1]);
    return cplx(std::pow(x * x + y * y, -2));
  };
  TorusScalar one = [](const Eigen::VectorXd&) { return cplx(1); };
  try {
    pair_with_test_form(data, sing, one, 0.05, 64);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::QuadratureUnstable);
  }
}

TEST_CASE("grade 2 scan is smooth away from the lattice") {
  auto data = verify::tau_i();
  auto pl = PairedLattice::from_abelian(data, LatticeSide::DualLambda);
  auto rows = current_scan(data, 2, offset_grid(pl, 8), 0.005, 1e-12);
  CHECK(rows.size() == 64);
  for (auto& r : rows) {
    CHECK(r.finite);
    CAPTURE(r.u.transpose());
    CHECK(r.richardson_ratio >= 3.5);
    CHECK(r.richardson_ratio <= 4.5);
  }
}
