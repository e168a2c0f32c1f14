#include "polylog/lattice_sum.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <limits>

namespace polylog {
namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

std::vector<double> binomial_power(double shift, int k) {
  std::vector<double> p{1.0};
  for (int i = 0; i < k; ++i) p = poly_mul(p, {shift, 1.0});
  return p;
}

double gaussian_moment(int j, double kappa, double T0) {
  double a = 0.5 * (j + 1);
  double x = kappa * T0 * T0;
  if (x > 700 + a * std::log(x + 1.0) + 50) return 0.0;
  return 0.5 * std::pow(kappa, -a) * boost::math::tgamma(a, x);
}
}  // namespace

LatticeGeometry::LatticeGeometry(Eigen::MatrixXd basis, Eigen::MatrixXd form)
    : basis_(std::move(basis)), form_(std::move(form)) {
  const int r = rank();
  if (form_.rows() != r || form_.cols() != r || basis_.rows() != r)
    fail(ErrorCode::ArityMismatch, "lattice basis and form have inconsistent sizes");
  Eigen::MatrixXd sym = 0.5 * (form_ + form_.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(sym);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (llt.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0)
    fail(ErrorCode::NotPositiveDefinite, "quadratic form is not positive definite");
  form_ = sym;
  covolume_ = std::abs(basis_.determinant());
  if (!(covolume_ > 0)) fail(ErrorCode::SingularPolarization, "lattice basis is singular");
  basis_inv_ = basis_.inverse();
  gram_ = basis_.transpose() * form_ * basis_;
  gram_ = 0.5 * (gram_ + gram_.transpose());

  Eigen::MatrixXd m = gram_;
  mu_ = Eigen::MatrixXd::Identity(r, r);
  diag_.assign(r, 0.0);
  for (int i = r - 1; i >= 0; --i) {
    diag_[i] = m(i, i);
    if (!(diag_[i] > 0)) fail(ErrorCode::NotPositiveDefinite, "lattice Gram matrix is not positive definite");
    for (int j = 0; j < i; ++j) mu_(i, j) = m(i, j) / diag_[i];
    for (int a = 0; a < i; ++a)
      for (int b = 0; b < i; ++b) m(a, b) -= diag_[i] * mu_(i, a) * mu_(i, b);
  }

  Eigen::MatrixXd inv = form_.inverse();
  coord_bound_.resize(r);
  for (int i = 0; i < r; ++i) coord_bound_[i] = std::sqrt(inv(i, i)) * (1.0 + 1e-12);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gs(gram_);
  sigma_min_ = gs.eigenvalues().minCoeff() - 1e-10;
  sqrt_det_gram_ = std::sqrt(gs.eigenvalues().prod());

  if (r <= 16) {
    double best = 0.0;
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
      Eigen::VectorXd v(r);
      for (int i = 0; i < r; ++i) v[i] = (mask >> i & 1u) ? 0.5 : -0.5;
      best = std::max(best, v.dot(gram_ * v));
    }
    cell_radius_ = std::sqrt(best) * (1.0 + 1e-12);
  } else {
    cell_radius_ = 0.5 * std::sqrt(r * gs.eigenvalues().maxCoeff()) * (1.0 + 1e-12);
  }
}

std::pair<long, long> LatticeGeometry::first_range(const Eigen::VectorXd& shift, double hi) const {
  if (rank() == 0 || hi < 0) return {1, 0};
  double rho = std::sqrt(hi / diag_[0]);
  return {static_cast<long>(std::floor(-shift[0] - rho)), static_cast<long>(std::ceil(-shift[0] + rho))};
}

double LatticeGeometry::estimated_count(double R) const {
  const int r = rank();
  double vr = std::pow(kPi, 0.5 * r) / std::tgamma(0.5 * r + 1.0);
  return vr * std::pow(std::sqrt(std::max(R, 0.0)) + 2 * cell_radius_, r) / sqrt_det_gram_;
}

double tail_bound(const LatticeGeometry& g, double R, const std::vector<double>& poly_bound, const TailWeight& w) {
  const int r = g.rank();
  const double delta = g.cell_radius();
  if (!(R > 0)) return kInf;
  double T0 = std::sqrt(R) - 2 * delta;
  if (!(T0 > 0)) return kInf;

  std::vector<double> integrand{0.0};
  for (std::size_t k = 0; k < poly_bound.size(); ++k) {
    if (poly_bound[k] == 0.0) continue;
    auto term = binomial_power(2 * delta, static_cast<int>(k));
    for (auto& x : term) x *= poly_bound[k];
    if (term.size() > integrand.size()) integrand.resize(term.size(), 0.0);
    for (std::size_t i = 0; i < term.size(); ++i) integrand[i] += term[i];
  }
  integrand = poly_mul(integrand, binomial_power(delta, r - 1));

  double total = 0.0;
  double D = 1.0, kappa = w.kappa;
  if (w.kind == TailWeight::Kind::MellinUpper) {
    double B = w.lower, gm = w.gamma, c = w.kappa * T0 * T0;
    if (gm <= 1.0) {
      D = std::pow(B, gm - 1.0) / c;
    } else {
      double f = std::pow(2.0, std::max(gm - 2.0, 0.0));
      D = f * (std::pow(B, gm - 1.0) / c + std::tgamma(gm) * std::pow(c, -gm));
    }
    kappa = w.kappa * B;
  }
  for (std::size_t j = 0; j < integrand.size(); ++j) {
    double a = integrand[j];
    if (a == 0.0) continue;
    double I;
    if (w.kind == TailWeight::Kind::Power) {
      double e = double(j) + 1.0 - 2.0 * w.sigma;
      if (e >= 0) return kInf;
      I = std::pow(T0, e) / (-e);
    } else {
      I = D * gaussian_moment(static_cast<int>(j), kappa, T0);
    }
    total += a * I;
  }
  double sphere = 2 * std::pow(kPi, 0.5 * r) / std::tgamma(0.5 * r);
  return sphere / g.sqrt_det_gram() * total;
}

double radius_for_tail(const LatticeGeometry& g, double tol, const std::vector<double>& poly_bound,
                       const TailWeight& w) {
  double delta = g.cell_radius();
  double R = std::max(4.0 * delta * delta * 1.0001, 1e-6);
  int steps = 0;
  while (!(tail_bound(g, R, poly_bound, w) <= tol)) {
    R *= 2.0;
    if (++steps > 300) fail(ErrorCode::BudgetExceeded, "no finite summation radius reaches the tolerance");
  }
  if (steps == 0) return R;
  double lo = R / 2, hi = R;
  for (int it = 0; it < 40; ++it) {
    double mid = std::sqrt(lo * hi);
    if (tail_bound(g, mid, poly_bound, w) <= tol)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

std::vector<double> shell_radii(const LatticeGeometry& g, double R) {
  double base = 0.0;
  for (int i = 0; i < g.rank(); ++i) base = std::max(base, g.gram()(i, i));
  base *= 8.0;
  std::vector<double> radii;
  for (double x = base; x < R; x *= 4.0) radii.push_back(x);
  radii.push_back(R);
  return radii;
}

}  // namespace polylog
