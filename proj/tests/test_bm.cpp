#include <doctest.h>

#include <random>

#include "polylog/bm.hpp"
#include "polylog/error.hpp"

using namespace polylog;
using cplx = std::complex<double>;

namespace {
double coeff_norm(const std::vector<cplx>& b) {
  double s = 0;
  for (auto z : b) s += std::norm(z);
  return std::sqrt(s);
}
}  // namespace

TEST_CASE("d = 1 kernel is dz / (2 pi i z)") {
  cplx z(0.3, -0.2);
  Eigen::VectorXcd v(1);
  v << z;
  auto b = beta_eval(1, v);
  // b[0] is the dy coefficient, b[1] the dx coefficient
  cplx f = 1.0 / (cplx(0, 2 * M_PI) * z);
  CHECK(std::abs(b[1] - f) < 1e-14);
  CHECK(std::abs(b[0] - cplx(0, 1) * f) < 1e-14);
  CHECK_THROWS_AS(beta_eval(1, Eigen::VectorXcd::Zero(1)), Error);
  try {
    beta_eval(2, Eigen::VectorXcd::Zero(2));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OriginSingularity);
  }
}

TEST_CASE("homogeneity and rotation") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> N;
  for (int d = 1; d <= 2; ++d) {
    Eigen::VectorXcd z(d);
    for (int j = 0; j < d; ++j) z[j] = cplx(N(rng), N(rng));
    z *= 0.6 / z.norm();
    double ratio = coeff_norm(beta_eval(d, 0.5 * z)) / coeff_norm(beta_eval(d, z));
    CHECK(ratio == doctest::Approx(std::pow(2.0, 2 * d - 1)).epsilon(1e-12));
  }
  // z -> iz: the coefficient row transforms by the rotation of the frame
  Eigen::VectorXcd z(1);
  z << cplx(0.4, 0.1);
  auto b = beta_eval(1, z);
  auto br = beta_eval(1, cplx(0, 1) * z);
  // R(x, y) = (-y, x); beta(Rz)(R v) = beta(z)(v), with (b_x, b_y) = (b[1], b[0])
  CHECK(std::abs(br[0] * 1.0 - b[1]) < 1e-14);
  CHECK(std::abs(-br[1] - b[0]) < 1e-14);
}

TEST_CASE("unit sphere integrals") {
  for (double r : {0.2, 0.4, 0.5, 0.6, 0.8}) {
    CAPTURE(r);
    auto s1 = sphere_integral(1, r, 4);
    CHECK(std::abs(s1.value - 1.0) <= 1e-10);
    auto s2 = sphere_integral(2, r, 3);
    CHECK(std::abs(s2.value - 1.0) <= 1e-6);
    CHECK(s2.error_estimate <= 1e-6);
  }
  auto a = sphere_integral(2, 0.3, 2), b = sphere_integral(2, 0.7, 2);
  CHECK(std::abs(a.value - b.value) <= 2 * (a.error_estimate + b.error_estimate) + 1e-14);
  // closed form for d = 1
  CHECK(std::abs(sphere_integral(1, 0.5, 1).value - 1.0) <= 1e-12);
  CHECK_THROWS_AS(sphere_integral(2, 0.5, 0), Error);
  CHECK_THROWS_AS(sphere_integral(2, 0.5, 100000), Error);
  CHECK_THROWS_AS(sphere_integral(3, 0.5, 1), Error);
}

TEST_CASE("closedness residuals") {
  Eigen::VectorXcd z1(1);
  z1 << cplx(0.5, 0);
  double r1 = closedness_residual(1, z1, 1e-2), r2 = closedness_residual(1, z1, 5e-3);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));

  std::mt19937_64 rng(6);
  std::normal_distribution<double> N;
  for (int it = 0; it < 5; ++it) {
    Eigen::VectorXcd z(2);
    z << cplx(N(rng), N(rng)), cplx(N(rng), N(rng));
    z *= 0.6 / z.norm();
    double a = closedness_residual(2, z, 1e-3);
    CHECK(a <= 1e-5);
    double b = closedness_residual(2, z, 2e-2), c = closedness_residual(2, z, 1e-2);
    CHECK(b / c == doctest::Approx(4.0).epsilon(0.1));
    // scaling: |d beta| at (2z, 2h) is 2^{-2d} times the value at (z, h)
    Eigen::VectorXcd zs = 0.5 * z;
    CHECK(closedness_residual(2, z, 2e-2) ==
          doctest::Approx(std::pow(2.0, -4) * closedness_residual(2, zs, 1e-2)).epsilon(1e-6));
  }
  CHECK_THROWS_AS(closedness_residual(1, Eigen::VectorXcd::Zero(1), 1e-3), Error);
}
