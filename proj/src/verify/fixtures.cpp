#include <boost/math/special_functions/zeta.hpp>
#include <algorithm>
#include <cmath>

#include "polylog/verify.hpp"

namespace polylog::verify {

PolarizedAbelianData tau_i(QNormalization norm) {
  RationalMatrix J = RationalMatrix::from_rows({{0, -1}, {1, 0}});
  return PolarizedAbelianData::from_rational(1, J, {{0, -1}, {1, 0}}, norm);
}

PolarizedAbelianData random_abelian(std::mt19937_64& rng, int d) {
  std::uniform_real_distribution<double> U(-0.5, 0.5);
  Eigen::MatrixXd X = Eigen::MatrixXd::NullaryExpr(d, d, [&] { return U(rng); });
  X = (0.5 * (X + X.transpose())).eval();
  Eigen::MatrixXd A = Eigen::MatrixXd::NullaryExpr(d, d, [&] { return U(rng); });
  Eigen::MatrixXd Y = A * A.transpose() + 0.7 * Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXcd Pi(d, 2 * d);
  Pi.leftCols(d) = Eigen::MatrixXcd::Identity(d, d);
  Pi.rightCols(d) = X.cast<cplx>() + cplx(0, 1) * Y.cast<cplx>();
  IntMatrix E(2 * d, std::vector<long>(2 * d, 0));
  long c = (rng() % 2) ? 2 : 1;
  for (int i = 0; i < d; ++i) {
    E[i][d + i] = -c;
    E[d + i][i] = c;
  }
  return PolarizedAbelianData::from_period_matrix(d, Pi, E);
}

FourierForm random_form(std::mt19937_64& rng, int rank, int N, int nterms) {
  FourierForm f(rank, N);
  std::uniform_int_distribution<long> ch(-2, 2), num(-9, 9), den(1, 7);
  std::uniform_int_distribution<int> letter(0, rank - 1), len(0, N), pw(0, 2);
  for (int t = 0; t < nterms; ++t) {
    FormKey k;
    for (int i = 0; i < rank; ++i) k.chi.push_back(ch(rng));
    k.mask = static_cast<std::uint32_t>(rng() & ((1u << rank) - 1));
    int L = len(rng);
    for (int i = 0; i < L; ++i) k.word.push_back(letter(rng));
    std::sort(k.word.begin(), k.word.end());
    GaussRational c(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    c.re.canonicalize();
    c.im.canonicalize();
    f.add(std::move(k), QIota(c, pw(rng)));
  }
  return f;
}

double dirichlet_beta(double s) {
  // Cohen, Rodriguez Villegas, Zagier
  const int n = 40;
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = 0.5 * (d + 1.0 / d);
  double b = -1.0, c = -d, sum = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    sum += c * std::pow(2.0 * k + 1.0, -s);
    b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0));
  }
  return sum / d;
}

double riemann_zeta(double s) { return boost::math::zeta(s); }

double z2_epstein(double s) { return 4.0 * riemann_zeta(s) * dirichlet_beta(s); }

}  // namespace polylog::verify
