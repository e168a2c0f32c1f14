#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "polylog/error.hpp"

namespace polylog {

using cplx = std::complex<double>;

struct NeumaierSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

class VectorAccumulator {
 public:
  explicit VectorAccumulator(std::size_t dim = 0) : re_(dim), im_(dim) {}
  std::size_t dim() const { return re_.size(); }
  void add(std::size_t i, cplx z) {
    re_[i].add(z.real());
    im_[i].add(z.imag());
  }
  void add_all(const std::vector<cplx>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) add(i, v[i]);
  }
  std::vector<cplx> value() const {
    std::vector<cplx> v(re_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = {re_[i].value(), im_[i].value()};
    return v;
  }

 private:
  std::vector<NeumaierSum> re_, im_;
};

// A lattice B*Z^r in R^r with positive form Q(x) = x^T G x.
class LatticeGeometry {
 public:
  LatticeGeometry() = default;
  LatticeGeometry(Eigen::MatrixXd basis, Eigen::MatrixXd form);

  int rank() const { return static_cast<int>(basis_.cols()); }
  const Eigen::MatrixXd& basis() const { return basis_; }
  const Eigen::MatrixXd& form() const { return form_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  double covolume() const { return covolume_; }
  double cell_radius() const { return cell_radius_; }
  double sqrt_det_gram() const { return sqrt_det_gram_; }
  // sup |x_i| / sqrt(Q(x)) over ambient x
  double coordinate_bound(int i) const { return coord_bound_[i]; }
  // lower bound for Q(B n) / |n|^2
  double sigma_min() const { return sigma_min_; }

  Eigen::VectorXd coefficients_of(const Eigen::VectorXd& ambient) const { return basis_inv_ * ambient; }
  double q_of_coefficients(const Eigen::VectorXd& z) const { return z.dot(gram_ * z); }

  // Calls f(n, q) for integer n with lo < q <= hi, q = Q(B(n + shift)), lexicographic n.
  // n_0 is restricted to [first_lo, first_hi].
  template <class F>
  std::size_t visit(const Eigen::VectorXd& shift, double lo, double hi, F&& f, long first_lo, long first_hi) const;
  template <class F>
  std::size_t visit(const Eigen::VectorXd& shift, double lo, double hi, F&& f) const {
    return visit(shift, lo, hi, std::forward<F>(f), first_range(shift, hi).first, first_range(shift, hi).second);
  }
  std::pair<long, long> first_range(const Eigen::VectorXd& shift, double hi) const;
  // rough count of points with q <= R
  double estimated_count(double R) const;

 private:
  Eigen::MatrixXd basis_, basis_inv_, form_, gram_;
  Eigen::MatrixXd mu_;  // unit lower: y_i = z_i + sum_{j<i} mu(i,j) z_j
  std::vector<double> diag_;
  std::vector<double> coord_bound_;
  double covolume_ = 1, cell_radius_ = 0, sqrt_det_gram_ = 1, sigma_min_ = 0;
};

inline double threshold_of(double R) { return R * (1.0 + 1e-12); }

template <class F>
std::size_t LatticeGeometry::visit(const Eigen::VectorXd& shift, double lo, double hi, F&& f, long first_lo,
                                   long first_hi) const {
  const int r = rank();
  if (r == 0 || hi < 0) return 0;
  std::vector<int> n(r);
  std::vector<double> z(r), partial(r + 1, 0.0), center(r);
  std::size_t count = 0;
  const double* c = shift.data();

  // iterative depth-first enumeration
  std::vector<long> cur(r), last(r);
  int level = 0;
  auto setup = [&](int i) -> bool {
    double m = c[i];
    for (int j = 0; j < i; ++j) m += mu_(i, j) * z[j];
    center[i] = m;
    double room = hi - partial[i];
    if (room < 0) return false;
    double rho = std::sqrt(room / diag_[i]);
    long a = static_cast<long>(std::floor(-m - rho)), b = static_cast<long>(std::ceil(-m + rho));
    if (i == 0) {
      a = std::max(a, first_lo);
      b = std::min(b, first_hi);
    }
    if (a > b) return false;
    cur[i] = a;
    last[i] = b;
    return true;
  };
  if (!setup(0)) return 0;
  while (level >= 0) {
    if (cur[level] > last[level]) {
      --level;
      if (level >= 0) ++cur[level];
      continue;
    }
    if (level == r - 1) {
      // innermost row
      const double m = center[level], base = partial[level], dg = diag_[level];
      long a = cur[level], b = last[level];
      long skip_a = 1, skip_b = 0;
      if (lo > base) {
        double rho_lo = std::sqrt((lo - base) / dg);
        if (rho_lo > 2.0 && dg > 1e-9 * std::max(1.0, hi)) {
          skip_a = static_cast<long>(std::ceil(-m - rho_lo + 1.0));
          skip_b = static_cast<long>(std::floor(-m + rho_lo - 1.0));
        }
      }
      for (int j = 0; j < level; ++j) n[j] = static_cast<int>(cur[j]);
      for (long k = a; k <= b; ++k) {
        if (k == skip_a && skip_a <= skip_b) {
          k = skip_b;
          continue;
        }
        double y = double(k) + m;
        double q = base + dg * y * y;
        if (q <= hi && q > lo) {
          n[level] = static_cast<int>(k);
          f(n.data(), q);
          ++count;
        }
      }
      cur[level] = last[level] + 1;
      continue;
    }
    double y = double(cur[level]) + center[level];
    partial[level + 1] = partial[level] + diag_[level] * y * y;
    if (partial[level + 1] > hi) {
      ++cur[level];
      continue;
    }
    z[level] = double(cur[level]) + c[level];
    if (setup(level + 1)) {
      ++level;
    } else {
      ++cur[level];
    }
  }
  return count;
}

// Tail-bound weights as functions of tau = sqrt(Q).
struct TailWeight {
  enum class Kind { Gaussian, Power, MellinUpper } kind = Kind::Gaussian;
  double kappa = 1.0;  // Gaussian: exp(-kappa tau^2); MellinUpper: exp(-kappa tau^2 x)
  double sigma = 0.0;  // Power: tau^{-2 sigma}
  double lower = 1.0;  // MellinUpper: integral over x >= lower of x^{gamma-1} ...
  double gamma = 1.0;

  static TailWeight gaussian(double kappa) { return {Kind::Gaussian, kappa, 0, 1, 1}; }
  static TailWeight power(double sigma) { return {Kind::Power, 1, sigma, 1, 1}; }
  static TailWeight mellin(double lower, double gamma, double kappa) { return {Kind::MellinUpper, kappa, 0, lower, gamma}; }
};

// Rigorous bound for sum over lattice points with Q > R of sum_k p_k tau^k w(tau).
double tail_bound(const LatticeGeometry& g, double R, const std::vector<double>& poly_bound, const TailWeight& w);

// Smallest R (up to bisection resolution) with tail_bound <= tol.
double radius_for_tail(const LatticeGeometry& g, double tol, const std::vector<double>& poly_bound,
                       const TailWeight& w);

struct ShellSumResult {
  std::vector<cplx> value;
  double radius = 0;
  double tail = 0;
  std::size_t shells = 0;
  std::size_t points = 0;
};

struct SumOptions {
  int threads = 1;
  std::size_t max_points = 4'000'000'000ull;
};

std::vector<double> shell_radii(const LatticeGeometry& g, double R);

// Term signature: void(const int* n, double q, VectorAccumulator& acc).
// Includes q = 0 points; terms decide what to do with them.
template <class Term>
ShellSumResult shell_sum(const LatticeGeometry& g, const Eigen::VectorXd& shift, std::size_t dim, double R,
                         const SumOptions& opt, Term&& term) {
  ShellSumResult res;
  res.radius = R;
  if (g.estimated_count(R) > double(opt.max_points))
    fail(ErrorCode::BudgetExceeded, "lattice sum needs about " + std::to_string(g.estimated_count(R)) +
                                        " points, above the budget of " + std::to_string(opt.max_points));
  VectorAccumulator total(dim);
  double lo = -1.0;
  for (double radius : shell_radii(g, R)) {
    double hi = threshold_of(radius);
    std::vector<cplx> shell_value;
    if (opt.threads <= 1) {
      VectorAccumulator acc(dim);
      res.points += g.visit(shift, lo, hi, [&](const int* n, double q) { term(n, q, acc); });
      shell_value = acc.value();
    } else {
      auto [a, b] = g.first_range(shift, hi);
      long span = b - a + 1;
      int nt = static_cast<int>(std::min<long>(opt.threads, std::max<long>(span, 1)));
      std::vector<VectorAccumulator> accs(nt, VectorAccumulator(dim));
      std::vector<std::size_t> counts(nt, 0);
      std::vector<std::thread> pool;
      for (int t = 0; t < nt; ++t) {
        long ta = a + span * t / nt, tb = a + span * (t + 1) / nt - 1;
        pool.emplace_back([&, t, ta, tb] {
          counts[t] = g.visit(
              shift, lo, hi, [&](const int* n, double q) { term(n, q, accs[t]); }, ta, tb);
        });
      }
      for (auto& th : pool) th.join();
      VectorAccumulator acc(dim);
      for (int t = 0; t < nt; ++t) {
        acc.add_all(accs[t].value());
        res.points += counts[t];
      }
      shell_value = acc.value();
    }
    total.add_all(shell_value);
    ++res.shells;
    if (res.points > opt.max_points) fail(ErrorCode::BudgetExceeded, "lattice sum exceeded its point budget");
    lo = hi;
  }
  res.value = total.value();
  return res;
}

}  // namespace polylog
