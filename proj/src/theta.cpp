#include "polylog/theta.hpp"

#include <cmath>
#include <numeric>

namespace polylog {
namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr int kStackDim = 512;

Rational frac(const Rational& q) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational r = q - Rational(fl);
  r.canonicalize();
  return r;
}

std::vector<double> coordinate_bounds(const LatticeGeometry& g) {
  std::vector<double> b(g.rank());
  for (int i = 0; i < g.rank(); ++i) b[i] = g.coordinate_bound(i);
  return b;
}

void check_dim(const VectorPolynomial& P, int r) {
  if (P.arity() != r) fail(ErrorCode::ArityMismatch, "polynomial arity differs from the lattice rank");
  if (P.target_dim() > kStackDim) fail(ErrorCode::DimensionOverflow, "polynomial target dimension too large");
}
}  // namespace

double vector_norm(const std::vector<cplx>& v) {
  double s = 0;
  for (auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

TorusPoint TorusPoint::from_rational(const std::vector<Rational>& u) {
  TorusPoint p;
  p.exact = u;
  p.value.resize(static_cast<int>(u.size()));
  for (std::size_t i = 0; i < u.size(); ++i) p.value[static_cast<int>(i)] = u[i].get_d();
  return p;
}

TorusPoint TorusPoint::from_double(const Eigen::VectorXd& u) {
  TorusPoint p;
  p.value = u;
  return p;
}

CharacterTable CharacterTable::exact(const std::vector<Rational>& c) {
  mpz_class den = 1;
  for (auto& x : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  if (den > mpz_class(1L << 30)) {
    Eigen::VectorXd v(static_cast<int>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) v[static_cast<int>(i)] = c[i].get_d();
    return numeric(v);
  }
  CharacterTable t;
  t.exact_ = true;
  t.den_ = den.get_si();
  t.trivial_ = true;
  for (auto& x : c) {
    Rational y = x * Rational(den);
    long v = y.get_num().get_si();
    t.num_.push_back(v);
    t.phase_.push_back(x.get_d());
    if (v % t.den_ != 0) t.trivial_ = false;
  }
  if (t.den_ <= (1L << 20)) {
    t.roots_.resize(t.den_);
    for (long m = 0; m < t.den_; ++m) {
      // exact values at the quarter points
      long g = std::gcd(m, t.den_);
      long a = m / g, b = t.den_ / g;
      if (b == 1) t.roots_[m] = 1.0;
      else if (b == 2) t.roots_[m] = -1.0;
      else if (b == 4) t.roots_[m] = a == 1 ? cplx(0, 1) : cplx(0, -1);
      else t.roots_[m] = std::polar(1.0, 2 * kPi * double(m) / double(t.den_));
    }
  }
  return t;
}

CharacterTable CharacterTable::numeric(const Eigen::VectorXd& c) {
  CharacterTable t;
  t.exact_ = false;
  t.trivial_ = true;
  for (int i = 0; i < c.size(); ++i) {
    t.phase_.push_back(c[i]);
    if (c[i] != 0.0) t.trivial_ = false;
  }
  return t;
}

cplx CharacterTable::operator()(const int* n) const {
  if (trivial_) return 1.0;
  if (exact_) {
    __int128 s = 0;
    for (std::size_t i = 0; i < num_.size(); ++i) s += __int128(n[i]) * num_[i];
    long m = static_cast<long>(s % den_);
    if (m < 0) m += den_;
    if (!roots_.empty()) return roots_[m];
    return std::polar(1.0, 2 * kPi * double(m) / double(den_));
  }
  double f = 0.0;
  for (std::size_t i = 0; i < phase_.size(); ++i) f += double(n[i]) * phase_[i];
  f -= std::floor(f);
  return {std::cos(2 * kPi * f), std::sin(2 * kPi * f)};
}

PairedLattice::PairedLattice(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& G, const Eigen::MatrixXd& M)
    : direct_(basis, G), M_(M) {
  const int r = direct_.rank();
  Eigen::MatrixXd Bd = M.inverse() * basis.transpose().inverse();
  dual_ = LatticeGeometry(Bd, dual_form(direct_.form(), M));
  disc_ = std::pow(kPi, 0.5 * r) / (std::sqrt(direct_.form().determinant()) * direct_.covolume());
  Eigen::MatrixXd C = basis.transpose() * M;
  std::vector<std::vector<long>> ci(r, std::vector<long>(r));
  bool integral = true;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      double x = std::round(C(i, j));
      if (std::abs(C(i, j) - x) > 1e-9) integral = false;
      ci[i][j] = static_cast<long>(x);
    }
  if (integral) coeff_map_ = ci;
}

PairedLattice PairedLattice::from_abelian(const PolarizedAbelianData& data, LatticeSide side) {
  const int n = data.rank();
  Eigen::MatrixXd B = side == LatticeSide::Lambda ? Eigen::MatrixXd::Identity(n, n) : data.dual_basis();
  PairedLattice pl(B, data.q_matrix(), data.E());
  pl.description = side == LatticeSide::Lambda ? "Lambda" : "Lambda'";
  return pl;
}

PairedLattice PairedLattice::standard(const Eigen::MatrixXd& G) {
  const int r = static_cast<int>(G.rows());
  PairedLattice pl(Eigen::MatrixXd::Identity(r, r), G, Eigen::MatrixXd::Identity(r, r));
  pl.description = "Z^" + std::to_string(r);
  return pl;
}

PairedLattice PairedLattice::general(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& G, const Eigen::MatrixXd& M) {
  PairedLattice pl(basis, G, M);
  pl.description = "general";
  return pl;
}

ResolvedShift PairedLattice::resolve(const TorusPoint& u) const {
  const int r = rank();
  if (u.size() != r) fail(ErrorCode::ArityMismatch, "torus point has wrong length");
  ResolvedShift s;
  s.dual_coeffs.resize(r);
  if (u.exact && coeff_map_) {
    std::vector<Rational> c(r);
    bool zero = true;
    for (int i = 0; i < r; ++i) {
      Rational acc = 0;
      for (int j = 0; j < r; ++j) acc += Rational((*coeff_map_)[i][j]) * (*u.exact)[j];
      c[i] = frac(acc);
      if (sgn(c[i]) != 0) zero = false;
      s.dual_coeffs[i] = c[i].get_d();
    }
    s.on_lattice = zero;
    s.character = CharacterTable::exact(c);
  } else {
    Eigen::VectorXd c = dual_.coefficients_of(u.value);
    bool zero = true;
    for (int i = 0; i < r; ++i) {
      double f = c[i] - std::floor(c[i]);
      if (f < 1e-12 || f > 1.0 - 1e-12) f = 0.0;
      if (f != 0.0) zero = false;
      c[i] = f;
    }
    s.dual_coeffs = c;
    s.on_lattice = zero;
    s.character = CharacterTable::numeric(c);
  }
  s.ambient = dual_.basis() * s.dual_coeffs;
  return s;
}

ThetaResult theta_direct(const PairedLattice& pl, const VectorPolynomial& P, const TorusPoint& u, double t, double tol,
                         const SumOptions& opt) {
  if (!(t > 0)) fail(ErrorCode::OutOfRange, "t must be positive");
  if (!(tol > 0)) fail(ErrorCode::OutOfRange, "tolerance must be positive");
  const int r = pl.rank();
  check_dim(P, r);
  const auto sh = pl.resolve(u);
  const auto& g = pl.direct();
  auto bounds = P.degree_bounds(coordinate_bounds(g));
  double R = radius_for_tail(g, tol, bounds, TailWeight::gaussian(t));
  const int dim = P.target_dim();
  const Eigen::MatrixXd& B = g.basis();
  auto res = shell_sum(g, Eigen::VectorXd::Zero(r), dim, R, opt, [&](const int* n, double q, VectorAccumulator& acc) {
    double x[16];
    cplx val[kStackDim];
    for (int i = 0; i < r; ++i) {
      double s = 0;
      for (int j = 0; j < r; ++j) s += B(i, j) * n[j];
      x[i] = s;
    }
    P.evaluate_into(x, val);
    cplx w = sh.character(n) * std::exp(-t * q);
    for (int i = 0; i < dim; ++i) acc.add(i, w * val[i]);
  });
  ThetaResult out;
  out.value = res.value;
  out.tail_bound = tail_bound(g, R, bounds, TailWeight::gaussian(t));
  out.shells = res.shells;
  out.points = res.points;
  out.radius = R;
  out.mode = "direct";
  return out;
}

namespace {
VectorPolynomial combine_laurent(const std::vector<LaurentTerm>& terms, double t, int arity, int dim) {
  VectorPolynomial total(arity, dim, 0, false);
  for (auto& lt : terms) {
    double f = std::pow(t, -lt.inv_t_power);
    for (auto& term : lt.poly.terms()) {
      auto c = term.coeff;
      for (auto& z : c) z *= f;
      total.add_term(term.alpha, c);
    }
  }
  return total;
}

template <class F>
ShellSumResult dual_sum(const PairedLattice& pl, const ResolvedShift& sh, const VectorPolynomial& poly, double R,
                        const SumOptions& opt, F&& envelope) {
  const int r = pl.rank();
  const auto& g = pl.dual();
  const Eigen::MatrixXd& B = g.basis();
  const int dim = poly.target_dim();
  return shell_sum(g, sh.dual_coeffs, dim, R, opt, [&](const int* n, double q, VectorAccumulator& acc) {
    double x[16];
    cplx val[kStackDim];
    for (int i = 0; i < r; ++i) {
      double s = 0;
      for (int j = 0; j < r; ++j) s += B(i, j) * (n[j] + sh.dual_coeffs[j]);
      x[i] = s;
    }
    poly.evaluate_into(x, val);
    double w = envelope(q);
    for (int i = 0; i < dim; ++i) acc.add(i, w * val[i]);
  });
}
}  // namespace

ThetaResult theta_transformed(const PairedLattice& pl, const VectorPolynomial& P, const TorusPoint& u, double t,
                              double tol, const SumOptions& opt) {
  if (!(t > 0)) fail(ErrorCode::OutOfRange, "t must be positive");
  if (!(tol > 0)) fail(ErrorCode::OutOfRange, "tolerance must be positive");
  const int r = pl.rank();
  check_dim(P, r);
  const auto sh = pl.resolve(u);
  auto terms = transform_terms(P, pl.direct().form(), pl.pairing());
  VectorPolynomial poly = combine_laurent(terms, t, r, P.target_dim());
  const double pref = std::pow(t, -0.5 * r) * pl.disc_factor();
  auto bounds = poly.degree_bounds(coordinate_bounds(pl.dual()));
  for (auto& b : bounds) b *= pref;
  const double kappa = kPi * kPi / t;
  double R = radius_for_tail(pl.dual(), tol, bounds, TailWeight::gaussian(kappa));
  auto res = dual_sum(pl, sh, poly, R, opt, [&](double q) { return pref * std::exp(-kappa * q); });
  ThetaResult out;
  out.value = res.value;
  out.tail_bound = tail_bound(pl.dual(), R, bounds, TailWeight::gaussian(kappa));
  out.shells = res.shells;
  out.points = res.points;
  out.radius = R;
  out.mode = "transformed";
  return out;
}

ThetaResult theta_eval(const PairedLattice& pl, const VectorPolynomial& P, const TorusPoint& u, double t, double tol,
                       const SumOptions& opt) {
  return t >= 1.0 ? theta_direct(pl, P, u, t, tol, opt) : theta_transformed(pl, P, u, t, tol, opt);
}

double poisson_check(const PairedLattice& pl, const VectorPolynomial& P, double t, const TorusPoint& h,
                     double R_direct, double R_dual, const SumOptions& opt) {
  if (!(t > 0)) fail(ErrorCode::OutOfRange, "t must be positive");
  const int r = pl.rank();
  check_dim(P, r);
  if (P.is_zero()) return 0.0;
  const auto sh = pl.resolve(h);
  const auto& g = pl.direct();
  auto bounds = P.degree_bounds(coordinate_bounds(g));
  if (!(tail_bound(g, R_direct, bounds, TailWeight::gaussian(t)) <= 1e-12))
    fail(ErrorCode::BudgetExceeded, "direct-side radius does not certify a tail below 1e-12");
  auto terms = transform_terms(P, g.form(), pl.pairing());
  VectorPolynomial poly = combine_laurent(terms, t, r, P.target_dim());
  const double pref = std::pow(t, -0.5 * r) * pl.disc_factor();
  auto dbounds = poly.degree_bounds(coordinate_bounds(pl.dual()));
  for (auto& b : dbounds) b *= pref;
  const double kappa = kPi * kPi / t;
  if (!(tail_bound(pl.dual(), R_dual, dbounds, TailWeight::gaussian(kappa)) <= 1e-12))
    fail(ErrorCode::BudgetExceeded, "dual-side radius does not certify a tail below 1e-12");

  const Eigen::MatrixXd& B = g.basis();
  const int dim = P.target_dim();
  auto lhs = shell_sum(g, Eigen::VectorXd::Zero(r), dim, R_direct, opt, [&](const int* n, double q, VectorAccumulator& acc) {
    double x[16];
    cplx val[kStackDim];
    for (int i = 0; i < r; ++i) {
      double s = 0;
      for (int j = 0; j < r; ++j) s += B(i, j) * n[j];
      x[i] = s;
    }
    P.evaluate_into(x, val);
    cplx w = sh.character(n) * std::exp(-t * q);
    for (int i = 0; i < dim; ++i) acc.add(i, w * val[i]);
  });
  auto rhs = dual_sum(pl, sh, poly, R_dual, opt, [&](double q) { return pref * std::exp(-kappa * q); });
  std::vector<cplx> diff(dim);
  for (int i = 0; i < dim; ++i) diff[i] = lhs.value[i] - rhs.value[i];
  return vector_norm(diff);
}

}  // namespace polylog
