#include <doctest.h>

#include <cmath>
#include <random>

#include "polylog/error.hpp"
#include "polylog/gauss.hpp"

using namespace polylog;

namespace {

struct Quad {
  cplx value;
  double abs_mass;
};

// tensor trapezoid of exp(2 pi i x^T M w) P(x) exp(-t x^T G x) / covol over R^r, r <= 2
Quad trapezoid(const VectorPolynomial& P, const Eigen::MatrixXd& G, const Eigen::MatrixXd& M, double covol, double t,
               const Eigen::VectorXd& w) {
  const int r = static_cast<int>(G.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  double lmin = es.eigenvalues().minCoeff();
  double L = std::sqrt(48.0 / (t * lmin)) + 1;
  double h = 0.03;
  int n = static_cast<int>(L / h);
  Eigen::VectorXd xi = M * w;
  cplx sum = 0;
  double mass = 0;
  std::vector<double> x(r);
  auto body = [&] {
    Eigen::Map<Eigen::VectorXd> xv(x.data(), r);
    double q = xv.dot(G * xv);
    double env = std::exp(-t * q);
    if (env == 0) return;
    cplx p = P.evaluate(x)[0];
    double ph = 2 * M_PI * xv.dot(xi);
    sum += std::polar(1.0, ph) * p * env;
    mass += std::abs(p) * env;
  };
  if (r == 1) {
    for (int i = -n; i <= n; ++i) {
      x[0] = i * h;
      body();
    }
  } else {
    for (int i = -n; i <= n; ++i)
      for (int j = -n; j <= n; ++j) {
        x[0] = i * h;
        x[1] = j * h;
        body();
      }
  }
  double cell = std::pow(h, r) / covol;
  return {sum * cell, mass * cell};
}

VectorPolynomial random_poly(std::mt19937_64& rng, int r, int deg) {
  std::uniform_real_distribution<double> U(-1, 1);
  VectorPolynomial P(r, 1, deg, false);
  for (int k = 0; k <= deg; ++k) {
    if (r == 1) {
      P.add_term({k}, {cplx(U(rng), U(rng))});
    } else {
      for (int a = 0; a <= k; ++a) P.add_term({a, k - a}, {cplx(U(rng), U(rng))});
    }
  }
  return P;
}

}  // namespace

TEST_CASE("polynomial evaluation") {
  CHECK(VectorPolynomial::constant(2, {1.0}).evaluate(std::vector<double>{3, 4})[0] == cplx(1));
  CHECK(VectorPolynomial::monomial(1, {1}, {1.0}).evaluate(std::vector<double>{3})[0] == cplx(3));
  CHECK(VectorPolynomial::monomial(2, {1, 1}, {1.0}).evaluate(std::vector<double>{2, 5})[0] == cplx(10));
  CHECK_THROWS_AS(VectorPolynomial::monomial(2, {1, 1}, {1.0}).evaluate(std::vector<double>{2}), Error);
  VectorPolynomial h(2, 1, 2, true);
  CHECK_THROWS_AS(h.add_term({1, 0}, {1.0}), Error);
  // linearity in coefficients
  auto a = VectorPolynomial::monomial(2, {2, 1}, {cplx(1, 2), 3.0});
  auto b = VectorPolynomial::monomial(2, {0, 3}, {cplx(0, -1), 2.0});
  std::vector<double> x{0.7, -1.3};
  auto ea = a.evaluate(x), eb = b.evaluate(x), es = (a + b).evaluate(x);
  for (int i = 0; i < 2; ++i) CHECK(std::abs(es[i] - ea[i] - eb[i]) < 1e-14);
}

TEST_CASE("rank-1 closed forms") {
  Eigen::MatrixXd G(1, 1), M(1, 1);
  G << M_PI;
  M << 1;
  Eigen::VectorXd h = Eigen::VectorXd::Zero(1);
  for (double t : {0.4, 1.0, 2.3}) {
    auto f = gaussian_ft(VectorPolynomial::constant(1, {1.0}), G, M, 1.0, t, h);
    for (double p : {0.0, 0.5, 1.0, 2.0}) {
      Eigen::VectorXd pv(1);
      pv << p;
      auto v = f.evaluate(pv)[0];
      CHECK(std::abs(v - std::pow(t, -0.5) * std::exp(-M_PI * p * p / t)) < 1e-14);
    }
  }
  auto fx = gaussian_ft(VectorPolynomial::monomial(1, {1}, {1.0}), G, M, 1.0, 1.0, h);
  for (double p : {0.3, 1.0, -1.7}) {
    Eigen::VectorXd pv(1);
    pv << p;
    CHECK(std::abs(fx.evaluate(pv)[0] - cplx(0, p) * std::exp(-M_PI * p * p)) < 1e-14);
  }
  // odd P: polynomial factor vanishes at w = 0
  auto fodd = gaussian_ft(VectorPolynomial::monomial(1, {3}, {1.0}), G, M, 1.0, 0.7, h);
  CHECK(std::abs(fodd.poly_factor(Eigen::VectorXd::Zero(1))[0]) == 0.0);
  // constant P at t = 1
  auto fc = gaussian_ft(VectorPolynomial::constant(1, {cplx(2, -1)}), G, M, 1.0, 1.0, h);
  Eigen::VectorXd w(1);
  w << 0.37;
  CHECK(std::abs(fc.poly_factor(w)[0] - cplx(2, -1)) < 1e-15);
}

TEST_CASE("dual form") {
  Eigen::MatrixXd G(1, 1);
  G << M_PI;
  CHECK(std::abs(dual_form(G)(0, 0) - 1 / M_PI) < 1e-15);
  Eigen::MatrixXd D = Eigen::Vector2d(2.0, 5.0).asDiagonal() * M_PI;
  Eigen::MatrixXd Dv = dual_form(D);
  CHECK(std::abs(Dv(0, 0) - 1 / (2.0 * M_PI)) < 1e-15);
  CHECK(std::abs(Dv(1, 1) - 1 / (5.0 * M_PI)) < 1e-15);
  CHECK(std::abs(dual_form(3.0 * G)(0, 0) - dual_form(G)(0, 0) / 3.0) < 1e-15);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int it = 0; it < 10; ++it) {
    Eigen::MatrixXd A = Eigen::MatrixXd::NullaryExpr(4, 4, [&] { return U(rng); });
    Eigen::MatrixXd S = A * A.transpose() + 0.5 * Eigen::MatrixXd::Identity(4, 4);
    Eigen::MatrixXd M = Eigen::MatrixXd::NullaryExpr(4, 4, [&] { return U(rng); }) + 2 * Eigen::MatrixXd::Identity(4, 4);
    Eigen::MatrixXd back = dual_form(dual_form(S, M), M.transpose());
    CHECK((back - S).cwiseAbs().maxCoeff() < 1e-12 * S.cwiseAbs().maxCoeff());
    CHECK((dual_form(dual_form(S)) - S).cwiseAbs().maxCoeff() < 1e-12 * S.cwiseAbs().maxCoeff());
  }
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 2, 2, 1;
  CHECK_THROWS_AS(dual_form(bad), Error);
}

TEST_CASE("gaussian transform matches quadrature") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> U(-1, 1), T(0.5, 2.0), H(0, 1);
  for (int it = 0; it < 24; ++it) {
    int r = 1 + it % 2;
    Eigen::MatrixXd A = Eigen::MatrixXd::NullaryExpr(r, r, [&] { return U(rng); });
    Eigen::MatrixXd G = A * A.transpose() + 0.6 * Eigen::MatrixXd::Identity(r, r);
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(r, r);
    if (it % 3 == 0) M += 0.3 * Eigen::MatrixXd::NullaryExpr(r, r, [&] { return U(rng); });
    double covol = 1.0 + 0.5 * H(rng);
    double t = T(rng);
    int deg = it % 4;
    auto P = random_poly(rng, r, deg);
    Eigen::VectorXd h = Eigen::VectorXd::NullaryExpr(r, [&] { return H(rng); });
    auto f = gaussian_ft(P, G, M, covol, t, h);
    for (int k = -1; k <= 1; ++k) {
      Eigen::VectorXd p = Eigen::VectorXd::Constant(r, double(k));
      auto got = f.evaluate(p)[0];
      auto want = trapezoid(P, G, M, covol, t, p + h);
      CAPTURE(it);
      CHECK(std::abs(got - want.value) <= 1e-8 * std::max(std::abs(want.value), 1e-3 * want.abs_mass));
    }
    // degree preservation on the leading monomial
    if (deg > 0) {
      MultiIndex a(r, 0);
      a[0] = deg;
      auto g = gaussian_ft(VectorPolynomial::monomial(r, a, {1.0}), G, M, covol, t, h);
      int top = 0;
      for (auto& lt : g.terms) top = std::max(top, lt.poly.max_order());
      CHECK(top == deg);
    }
  }
}
