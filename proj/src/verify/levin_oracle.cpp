#include <algorithm>
#include <cmath>

#include "polylog/error.hpp"
#include "polylog/verify.hpp"

namespace polylog::verify {
namespace {

struct D1Frame {
  Eigen::Matrix2d gram;   // Q on box coordinates
  cplx gamma[2];          // c = n . gamma
  double phase[2];        // chi = exp(2 pi i n . phase)
  double sigma = 0, qh = 0;
};

D1Frame frame(const PolarizedAbelianData& data, const Eigen::VectorXd& u) {
  if (data.d() != 1) fail(ErrorCode::OutOfRange, "oracle is for d = 1");
  D1Frame f;
  Eigen::Matrix2d B = data.dual_basis();
  f.gram = B.transpose() * data.q_matrix() * B;
  f.sigma = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(f.gram).eigenvalues()[0];
  Eigen::Matrix2cd H = 0.5 * (Eigen::Matrix2cd::Identity() - cplx(0, 1) * data.J().cast<cplx>());
  Eigen::Vector2cd h = H.col(0);
  int j = std::abs(h[0]) >= std::abs(h[1]) ? 0 : 1;
  for (int i = 0; i < 2; ++i) f.gamma[i] = (H * B.col(i).cast<cplx>())[j] / h[j];
  Eigen::Vector2d ph = B.transpose() * data.E() * u;
  f.phase[0] = ph[0];
  f.phase[1] = ph[1];
  f.qh = f.gram(0, 0) / std::norm(f.gamma[0]);
  return f;
}

std::vector<cplx> powers_of_root(double phase, long N) {
  std::vector<cplx> z(2 * N + 1);
  for (long m = -N; m <= N; ++m) {
    double x = phase * double(m);
    x -= std::floor(x);
    z[m + N] = std::polar(1.0, 2 * M_PI * x);
  }
  return z;
}
}  // namespace

LevinOracle levin_d1_bruteforce(const PolarizedAbelianData& data, const Eigen::VectorXd& u,
                                const std::vector<std::pair<int, int>>& ab, double tol) {
  auto f = frame(data, u);
  // shell |n|_inf = k holds 8k points, each term at most (1/2) qh^{1-n/2} (sigma k^2)^{-n/2}
  long N = 1;
  for (auto [a, b] : ab) {
    int n = a + b;
    if (n < 3) fail(ErrorCode::NotAbsolutelyConvergent, "brute force needs a + b > 2");
    if (n > 15) fail(ErrorCode::OutOfRange, "grade too large for the oracle");
    double C = 4 * std::pow(f.qh, 1 - 0.5 * n) * std::pow(f.sigma, -0.5 * n) / (n - 2);
    long need = static_cast<long>(std::ceil(std::pow(C / tol, 1.0 / (n - 2))));
    N = std::max(N, need);
  }
  LevinOracle out;
  out.box = N;
  for (auto [a, b] : ab) {
    int n = a + b;
    double C = 4 * std::pow(f.qh, 1 - 0.5 * n) * std::pow(f.sigma, -0.5 * n) / (n - 2);
    out.tail = std::max(out.tail, C * std::pow(double(N), 2 - n));
  }
  auto z0 = powers_of_root(f.phase[0], N), z1 = powers_of_root(f.phase[1], N);
  const std::size_t K = ab.size();
  int nmax = 0;
  for (auto [a, b] : ab) nmax = std::max(nmax, a + b);
  std::vector<cplx> total(K, 0.0);
  std::vector<cplx> row(K);
  // lambda and -lambda together: c flips sign, chi conjugates
  for (long m0 = 0; m0 <= N; ++m0) {
    std::fill(row.begin(), row.end(), 0.0);
    for (long m1 = m0 == 0 ? 1 : -N; m1 <= N; ++m1) {
      double x0 = double(m0), x1 = double(m1);
      double q = f.gram(0, 0) * x0 * x0 + 2 * f.gram(0, 1) * x0 * x1 + f.gram(1, 1) * x1 * x1;
      cplx c = x0 * f.gamma[0] + x1 * f.gamma[1];
      const cplx chi = z0[m0 + N] * z1[m1 + N];
      const cplx even = -q * chi.real(), odd = cplx(0, -q * chi.imag());
      double iq[16];
      cplx pc[16], pcb[16];
      iq[0] = 1;
      pc[0] = pcb[0] = 1;
      const double inv = 1.0 / q;
      for (int e = 1; e <= nmax; ++e) {
        iq[e] = iq[e - 1] * inv;
        pc[e] = pc[e - 1] * c;
        pcb[e] = std::conj(pc[e]);
      }
      for (std::size_t i = 0; i < K; ++i) {
        auto [a, b] = ab[i];
        row[i] += ((a + b) % 2 ? odd : even) * pcb[a - 1] * pc[b - 1] * iq[a + b];
      }
    }
    for (std::size_t i = 0; i < K; ++i) total[i] += row[i];
  }
  for (std::size_t i = 0; i < K; ++i) out.value[ab[i]] = total[i];
  return out;
}

cplx levin_d1_smoothed(const PolarizedAbelianData& data, const Eigen::VectorXd& u, double t) {
  auto f = frame(data, u);
  long N = static_cast<long>(std::ceil(std::sqrt(60.0 / (t * f.sigma)))) + 1;
  auto z0 = powers_of_root(f.phase[0], N), z1 = powers_of_root(f.phase[1], N);
  cplx total = 0;
  for (long m0 = -N; m0 <= N; ++m0) {
    cplx row = 0;
    for (long m1 = -N; m1 <= N; ++m1) {
      if (m0 == 0 && m1 == 0) continue;
      double x0 = double(m0), x1 = double(m1);
      double q = f.gram(0, 0) * x0 * x0 + 2 * f.gram(0, 1) * x0 * x1 + f.gram(1, 1) * x1 * x1;
      row += z0[m0 + N] * z1[m1 + N] * std::exp(-t * q) / q;
    }
    total += row;
  }
  return -0.5 * total;
}

std::vector<int> levin_d1_word(int a, int b) {
  std::vector<int> w(b - 1, 0);
  w.insert(w.end(), a - 1, 1);
  return w;
}

std::map<std::vector<int>, cplx> eisenstein_d1_bruteforce(const PolarizedAbelianData& data, const Eigen::VectorXd& x,
                                                          int l, const std::vector<cplx>& chi, double tol) {
  if (chi.size() != 2) fail(ErrorCode::ArityMismatch, "functional needs two letters");
  const int n = l + 3;
  std::vector<std::pair<int, int>> ab;
  for (int a = 1; a < n; ++a) ab.push_back({a, n - a});
  auto o = levin_d1_bruteforce(data, x, ab, tol);
  const double kappa = std::abs(data.E().determinant());
  std::map<std::vector<int>, cplx> out;
  for (auto [a, b] : ab) {
    // (-1)^a from the grade sum, (-1)^d / (d! kappa) from the coefficient
    cplx g = (a % 2 ? -1.0 : 1.0) * -1.0 / kappa * o.value[{a, b}];
    auto w = levin_d1_word(a, b);
    for (std::size_t j = 0; j < w.size(); ++j) {
      std::vector<int> rest = w;
      rest.erase(rest.begin() + static_cast<long>(j));
      out[rest] += chi[w[j]] * g / double(w.size());
    }
  }
  return out;
}

}  // namespace polylog::verify
