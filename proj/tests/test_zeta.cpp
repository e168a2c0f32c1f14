#include <doctest.h>

#include <cmath>
#include <random>

#include "polylog/special.hpp"
#include "polylog/verify.hpp"
#include "polylog/zeta.hpp"

using namespace polylog;

namespace {

PairedLattice z2() { return PairedLattice::standard(Eigen::MatrixXd::Identity(2, 2)); }

VectorPolynomial one(int r) { return VectorPolynomial::constant(r, {1.0}); }

double rel(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return vector_norm(d) / std::max(vector_norm(a), 1e-300);
}

// brute force sum over a box, tail estimated away by taking the box large
cplx brute_z2(double s, const Eigen::Vector2d& u, int N) {
  NeumaierSum re, im;
  const double tp = 2 * M_PI;
  for (int a = -N; a <= N; ++a)
    for (int b = -N; b <= N; ++b) {
      if (a == 0 && b == 0) continue;
      double q = double(a) * a + double(b) * b;
      double w = std::pow(q, -s);
      double ph = tp * (a * u[0] + b * u[1]);
      re.add(w * std::cos(ph));
      im.add(w * std::sin(ph));
    }
  return {re.value(), im.value()};
}

}  // namespace

TEST_CASE("oracle values for Z^2") {
  CHECK(verify::z2_epstein(2) == doctest::Approx(6.02681204).epsilon(1e-9));
  // 30-digit Hurwitz-zeta reference
  CHECK(verify::z2_epstein(3) == doctest::Approx(4.658913615603843440).epsilon(1e-13));
  CHECK(verify::dirichlet_beta(2) == doctest::Approx(0.915965594177219015).epsilon(1e-15));
  CHECK(verify::dirichlet_beta(1) == doctest::Approx(M_PI / 4).epsilon(1e-14));
}

TEST_CASE("Z^2 direct and accelerated values") {
  auto pl = z2();
  auto u = TorusPoint::from_rational({0, 0});
  for (double s : {2.0, 3.0}) {
    CAPTURE(s);
    double oracle = verify::z2_epstein(s);
    auto d = kzeta_direct(pl, one(2), u, s, 1e-9);
    auto a = kzeta_accelerated(pl, one(2), u, s, 1.0, 1e-12);
    CHECK(d.regime == ZetaRegime::Direct);
    CHECK(a.regime == ZetaRegime::Accelerated);
    CHECK(d.error_bound <= 1e-9);
    CHECK(std::abs(d.value[0] - oracle) <= 1e-8);
    CHECK(std::abs(a.value[0] - oracle) <= 1e-10);
    CHECK(std::abs(a.value[0] - d.value[0]) <= 1e-8);
    CHECK(std::abs(d.value[0].imag()) < 1e-14);
  }
}

TEST_CASE("Euclidean abelian data reproduces Z^2") {
  auto data = verify::tau_i(QNormalization::Unit);
  auto u = TorusPoint::from_rational({0, 0});
  auto a = kzeta_accelerated(data, one(2), u, 3.0, 1.0, 1e-12);
  CHECK(std::abs(a.value[0] - verify::z2_epstein(3)) <= 1e-10);
}

TEST_CASE("odd numerator cancels") {
  auto pl = z2();
  auto u = TorusPoint::from_rational({0, 0});
  auto P = VectorPolynomial::linear({1.0, cplx(0.3, 2.0)});
  auto d = kzeta_direct(pl, P, u, 3.0, 1e-8);
  CHECK(std::abs(d.value[0]) <= 1e-12);
  auto a = kzeta_accelerated(pl, P, u, 1.2, 1.0, 1e-12);
  CHECK(std::abs(a.value[0]) <= 1e-12);
}

TEST_CASE("direct sum at a torsion point against a box sum") {
  auto pl = z2();
  Eigen::Vector2d uv(0.25, 0.5);
  auto u = TorusPoint::from_rational({Rational(1, 4), Rational(1, 2)});
  auto d = kzeta_direct(pl, one(2), u, 3.0, 1e-9);
  cplx b = brute_z2(3.0, uv, 1500);
  // box tail is below 4e-12 at this size
  CHECK(std::abs(d.value[0] - b) <= 1e-9);
  auto a = kzeta_accelerated(pl, one(2), u, 3.0, 1.0, 1e-12);
  CHECK(std::abs(a.value[0] - b) <= 1e-9);
}

TEST_CASE("A-independence at s = 1 and a half-period") {
  auto pl = z2();
  auto u = TorusPoint::from_rational({Rational(1, 2), Rational(1, 2)});
  auto a1 = kzeta_accelerated(pl, one(2), u, 1.0, 0.5, 1e-13);
  auto a2 = kzeta_accelerated(pl, one(2), u, 1.0, 2.0, 1e-13);
  CHECK(std::isfinite(a1.value[0].real()));
  CHECK(std::abs(a1.value[0] - a2.value[0]) <= 1e-9 * std::abs(a1.value[0]));
  // sum (-1)^{a+b}/(a^2+b^2) = -pi log 2
  CHECK(std::abs(a1.value[0] - cplx(-M_PI * std::log(2.0), 0)) <= 1e-10);
}

TEST_CASE("homogeneous numerator has no boundary term") {
  auto pl = z2();
  VectorPolynomial P(2, 1, 2);
  P.add_term({2, 0}, {1.0});
  P.add_term({0, 2}, {1.0});
  auto u = TorusPoint::from_rational({0, 0});
  auto d = kzeta_direct(pl, P, u, 4.0, 1e-9);
  auto a = kzeta_accelerated(pl, P, u, 4.0, 0.7, 1e-12);
  // |n|^2 / |n|^8 = |n|^{-6}
  CHECK(std::abs(a.value[0] - verify::z2_epstein(3)) <= 1e-10);
  CHECK(std::abs(d.value[0] - a.value[0]) <= 2e-9);
}

TEST_CASE("regime agreement on random configurations") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1, 1), H(0.05, 0.95);
  for (int it = 0; it < 6; ++it) {
    int d = it < 4 ? 1 : 2;
    int r = 2 * d;
    auto data = verify::random_abelian(rng, d);
    auto pl = PairedLattice::from_abelian(data);
    VectorPolynomial P(r, 2, 0, false);
    P.add_term(MultiIndex(r, 0), {cplx(U(rng), U(rng)), 0.5});
    MultiIndex a(r, 0);
    a[0] = 1;
    a[r - 1] += 1;
    P.add_term(a, {cplx(U(rng), U(rng)), cplx(0, U(rng))});
    Eigen::VectorXd uv = Eigen::VectorXd::NullaryExpr(r, [&] { return H(rng); });
    auto u = TorusPoint::from_double(uv);
    double s = d == 1 ? 5.0 : 7.0;
    CAPTURE(it);
    auto dz = kzeta_direct(pl, P, u, s, 1e-10);
    auto az = kzeta_accelerated(pl, P, u, s, 1.0, 1e-13);
    CHECK(rel(az.value, dz.value) <= 1e-8);
  }
}

TEST_CASE("A-independence on random configurations with complex s") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-1, 1), H(0.05, 0.95);
  for (int it = 0; it < 4; ++it) {
    int d = it < 2 ? 1 : 2;
    int r = 2 * d;
    auto pl = PairedLattice::from_abelian(verify::random_abelian(rng, d));
    VectorPolynomial P(r, 1, 0, false);
    P.add_term(MultiIndex(r, 0), {1.0});
    MultiIndex a(r, 0);
    a[1] = 2;
    P.add_term(a, {cplx(U(rng), U(rng))});
    Eigen::VectorXd uv = Eigen::VectorXd::NullaryExpr(r, [&] { return H(rng); });
    auto u = TorusPoint::from_double(uv);
    cplx s(U(rng) * 1.5, U(rng) * 2);
    CAPTURE(it);
    CAPTURE(s);
    auto z0 = kzeta_accelerated(pl, P, u, s, 0.5, 1e-13);
    auto z1 = kzeta_accelerated(pl, P, u, s, 1.0, 1e-13);
    auto z2v = kzeta_accelerated(pl, P, u, s, 2.0, 1e-13);
    CHECK(rel(z1.value, z0.value) <= 1e-9);
    CHECK(rel(z1.value, z2v.value) <= 1e-9);
  }
}

TEST_CASE("Gamma(s) K is holomorphic near a center point") {
  auto data = verify::tau_i();
  auto pl = PairedLattice::from_abelian(data);
  auto u = TorusPoint::from_rational({Rational(1, 3), Rational(1, 5)});
  auto P = one(2);
  const cplx s0(0.7, 0.4);
  const double rho = 0.3;
  auto F = [&](cplx s) { return kzeta_accelerated(pl, P, u, s, 1.0, 1e-13).value[0] * gamma(s); };
  const int n = 48;
  cplx avg = 0;
  for (int k = 0; k < n; ++k) avg += F(s0 + std::polar(rho, 2 * M_PI * k / n));
  avg /= double(n);
  CHECK(std::abs(avg - F(s0)) <= 1e-6 * std::abs(F(s0)));
}

TEST_CASE("character shift by a lattice vector") {
  std::mt19937_64 rng(3);
  auto data = verify::random_abelian(rng, 1);
  auto pl = PairedLattice::from_abelian(data);
  Eigen::Vector2d uv(0.21, 0.67);
  auto P = one(2);
  auto a = kzeta_accelerated(pl, P, TorusPoint::from_double(uv), 1.5, 1.0, 1e-13);
  Eigen::Vector2d shifted = uv + Eigen::Vector2d(3, -2);
  auto b = kzeta_accelerated(pl, P, TorusPoint::from_double(shifted), 1.5, 1.0, 1e-13);
  CHECK(std::abs(a.value[0] - b.value[0]) <= 1e-12);
  auto c = kzeta_accelerated(pl, P, TorusPoint::from_rational({Rational(1, 4), Rational(2, 3)}), 1.5, 1.0, 1e-13);
  auto e = kzeta_accelerated(pl, P, TorusPoint::from_rational({Rational(-3, 4), Rational(5, 3)}), 1.5, 1.0, 1e-13);
  CHECK(std::abs(c.value[0] - e.value[0]) <= 1e-12);
}

TEST_CASE("error paths") {
  auto pl = z2();
  auto zero = TorusPoint::from_rational({0, 0});
  auto half = TorusPoint::from_rational({Rational(1, 2), 0});
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Usage;
  };
  CHECK(code([&] { kzeta_direct(pl, one(2), half, 1.0, 1e-8); }) == ErrorCode::NotAbsolutelyConvergent);
  CHECK(code([&] { kzeta_accelerated(pl, one(2), zero, 0.5, 1.0, 1e-8); }) == ErrorCode::ZeroSectionSingularity);
  CHECK(code([&] { kzeta_accelerated(pl, one(2), half, 0.0, 1.0, 1e-8); }) == ErrorCode::PoleAtS);
  CHECK(code([&] { kzeta_accelerated(pl, one(2), half, 1.0, -1.0, 1e-8); }) == ErrorCode::OutOfRange);
  SumOptions tight;
  tight.max_points = 1000;
  CHECK(code([&] { kzeta_direct(pl, one(2), half, 2.0, 1e-9, tight); }) == ErrorCode::BudgetExceeded);
  // float input within the snap tolerance of the lattice
  auto near = TorusPoint::from_double(Eigen::Vector2d(1e-14, 1.0 - 1e-14));
  CHECK(code([&] { kzeta_accelerated(pl, one(2), near, 0.5, 1.0, 1e-8); }) == ErrorCode::ZeroSectionSingularity);
}

TEST_CASE("auto mode picks a regime") {
  auto pl = z2();
  auto half = TorusPoint::from_rational({Rational(1, 2), 0});
  CHECK(kzeta(pl, one(2), half, 4.0, 1e-8).regime == ZetaRegime::Direct);
  CHECK(kzeta(pl, one(2), half, 1.0, 1e-8).regime == ZetaRegime::Accelerated);
  CHECK(kzeta(pl, one(2), half, 2.0, 1e-12).regime == ZetaRegime::Accelerated);
}

TEST_CASE("threads do not change the value") {
  auto data = verify::tau_i();
  auto pl = PairedLattice::from_abelian(data);
  auto u = TorusPoint::from_rational({Rational(1, 3), Rational(1, 7)});
  SumOptions t1, t4;
  t4.threads = 4;
  auto a = kzeta_accelerated(pl, one(2), u, 0.8, 1.0, 1e-13, t1);
  auto b = kzeta_accelerated(pl, one(2), u, 0.8, 1.0, 1e-13, t4);
  CHECK(std::abs(a.value[0] - b.value[0]) <= 1e-14);
  auto c = kzeta_accelerated(pl, one(2), u, 0.8, 1.0, 1e-13, t1);
  CHECK(a.value[0] == c.value[0]);
}

TEST_CASE("smoothness scan") {
  auto data = verify::tau_i();
  auto pl = PairedLattice::from_abelian(data);
  SUBCASE("degree 2 numerator at s = 2") {
    VectorPolynomial P(2, 1, 2);
    P.add_term({2, 0}, {1.0});
    P.add_term({1, 1}, {cplx(0, 0.5)});
    P.add_term({0, 2}, {0.25});
    auto grid = offset_grid(pl, 8);
    CHECK(grid.size() == 64);
    auto rows = smoothness_scan(pl, P, 2.0, grid, 0.005);
    for (auto& row : rows) {
      CHECK(row.finite);
      CHECK(row.stability_ratio >= 0.9);
      CHECK(row.stability_ratio <= 1.1);
    }
  }
  SUBCASE("grid touching the lattice") {
    std::vector<Eigen::VectorXd> grid{Eigen::Vector2d(0.5, 0.5), Eigen::Vector2d(0.0, 1.0)};
    CHECK_THROWS_AS(smoothness_scan(pl, one(2), 2.0, grid, 0.01), Error);
  }
  SUBCASE("constant numerator at s = 6 matches direct values") {
    std::vector<Eigen::VectorXd> grid{Eigen::Vector2d(0.3, 0.6), Eigen::Vector2d(0.55, 0.15)};
    auto rows = smoothness_scan(pl, one(2), 6.0, grid, 0.01);
    for (auto& row : rows) {
      auto d = kzeta_direct(pl, one(2), TorusPoint::from_double(row.u), 6.0, 1e-10);
      CHECK(std::abs(row.value[0] - d.value[0]) <= 1e-8);
    }
  }
}
