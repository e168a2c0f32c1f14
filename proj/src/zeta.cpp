#include "polylog/zeta.hpp"

#include <cmath>
#include <limits>

#include "polylog/special.hpp"

namespace polylog {
namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr int kStackDim = 512;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> coordinate_bounds(const LatticeGeometry& g) {
  std::vector<double> b(g.rank());
  for (int i = 0; i < g.rank(); ++i) b[i] = g.coordinate_bound(i);
  return b;
}

void check_dim(const VectorPolynomial& P, int r) {
  if (P.arity() != r) fail(ErrorCode::ArityMismatch, "polynomial arity differs from the lattice rank");
  if (P.target_dim() > kStackDim) fail(ErrorCode::DimensionOverflow, "polynomial target dimension too large");
  if (r > 16) fail(ErrorCode::DimensionOverflow, "lattice rank above 16");
}

template <class F>
double search_radius(const LatticeGeometry& g, double tol, F&& err) {
  double delta = g.cell_radius();
  double R = std::max(4.0 * delta * delta * 1.0001, 1e-6);
  int steps = 0;
  while (!(err(R) <= tol)) {
    R *= 2.0;
    if (++steps > 300) fail(ErrorCode::BudgetExceeded, "no finite summation radius reaches the tolerance");
  }
  if (steps == 0) return R;
  double lo = R / 2, hi = R;
  for (int it = 0; it < 40; ++it) {
    double mid = std::sqrt(lo * hi);
    if (err(mid) <= tol)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// lower bound for sum_{Q > R} Q^{-s}, real s with 2s > r
double power_tail_lower(const LatticeGeometry& g, double R, double s) {
  const int r = g.rank();
  const double delta = g.cell_radius();
  double V = std::sqrt(R) + 2 * delta;
  double total = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= r - 1; ++j) {
    if (j > 0) binom = binom * double(r - j) / double(j);
    double e = double(j) + 1.0 - 2.0 * s;
    total += binom * std::pow(-delta, r - 1 - j) * std::pow(V, e) / (-e);
  }
  double sphere = 2 * std::pow(kPi, 0.5 * r) / std::tgamma(0.5 * r);
  return std::max(0.0, sphere / g.sqrt_det_gram() * total);
}

cplx cpow_real(double q, cplx e) {
  if (e.imag() == 0.0) return std::pow(q, e.real());
  return std::exp(e * std::log(q));
}

struct DirectPlan {
  double R = 0;
  bool two_sided = false;
  std::vector<double> bounds;
};

DirectPlan plan_direct(const PairedLattice& pl, const VectorPolynomial& P, const ResolvedShift& sh, cplx s,
                       double tol) {
  const auto& g = pl.direct();
  DirectPlan plan;
  plan.bounds = P.degree_bounds(coordinate_bounds(g));
  const double sigma = s.real();
  plan.two_sided = sh.character.trivial() && s.imag() == 0.0 && P.max_order() == 0;
  if (plan.two_sided) {
    double c = plan.bounds[0];
    plan.R = search_radius(g, tol, [&](double R) {
      double U = tail_bound(g, R, {1.0}, TailWeight::power(sigma));
      double L = power_tail_lower(g, threshold_of(R), sigma);
      return 0.5 * c * (U - L);
    });
  } else {
    plan.R = search_radius(g, tol, [&](double R) { return tail_bound(g, R, plan.bounds, TailWeight::power(sigma)); });
  }
  return plan;
}

ZetaValue direct_with_plan(const PairedLattice& pl, const VectorPolynomial& P, const ResolvedShift& sh, cplx s,
                           const DirectPlan& plan, const SumOptions& opt) {
  const int r = pl.rank();
  const auto& g = pl.direct();
  const int dim = P.target_dim();
  const Eigen::MatrixXd& B = g.basis();
  ZetaValue out;
  out.s = s;
  out.regime = ZetaRegime::Direct;
  out.radius = plan.R;
  out.two_sided_tail = plan.two_sided;
  const cplx mexp = -s;
  if (plan.two_sided) {
    auto c = P.constant_term();
    auto res = shell_sum(g, Eigen::VectorXd::Zero(r), 1, plan.R, opt, [&](const int*, double q, VectorAccumulator& acc) {
      if (q <= 0.0) return;
      acc.add(0, std::pow(q, -s.real()));
    });
    double U = tail_bound(g, plan.R, {1.0}, TailWeight::power(s.real()));
    double L = power_tail_lower(g, threshold_of(plan.R), s.real());
    double S = res.value[0].real() + 0.5 * (U + L);
    out.value.resize(dim);
    for (int i = 0; i < dim; ++i) out.value[i] = c[i] * S;
    out.error_bound = 0.5 * plan.bounds[0] * (U - L);
    out.points = res.points;
    return out;
  }
  auto res = shell_sum(g, Eigen::VectorXd::Zero(r), dim, plan.R, opt, [&](const int* n, double q, VectorAccumulator& acc) {
    if (q <= 0.0) return;
    double x[16];
    cplx val[kStackDim];
    for (int i = 0; i < r; ++i) {
      double t = 0;
      for (int j = 0; j < r; ++j) t += B(i, j) * n[j];
      x[i] = t;
    }
    P.evaluate_into(x, val);
    cplx w = sh.character(n) * cpow_real(q, mexp);
    for (int i = 0; i < dim; ++i) acc.add(i, w * val[i]);
  });
  out.value = res.value;
  out.error_bound = tail_bound(g, plan.R, plan.bounds, TailWeight::power(s.real()));
  out.points = res.points;
  return out;
}
}  // namespace

std::string regime_name(ZetaRegime r) { return r == ZetaRegime::Direct ? "direct" : "accelerated"; }

ZetaMode parse_zeta_mode(const std::string& s) {
  if (s == "direct") return ZetaMode::Direct;
  if (s == "accel" || s == "accelerated") return ZetaMode::Accelerated;
  if (s == "auto") return ZetaMode::Auto;
  fail(ErrorCode::Usage, "unknown zeta mode '" + s + "' (direct, accel, auto)");
}

bool absolutely_convergent(const VectorPolynomial& P, int rank, cplx s) {
  return 2.0 * s.real() - double(std::max(P.max_order(), 0)) > double(rank);
}

ZetaValue kzeta_direct(const PairedLattice& pl, const VectorPolynomial& P, const TorusPoint& u, cplx s, double tol,
                       const SumOptions& opt) {
  if (!(tol > 0)) fail(ErrorCode::OutOfRange, "tolerance must be positive");
  const int r = pl.rank();
  check_dim(P, r);
  if (!absolutely_convergent(P, r, s))
    fail(ErrorCode::NotAbsolutelyConvergent, "direct summation needs 2 Re(s) - deg P > " + std::to_string(r));
  const auto sh = pl.resolve(u);
  if (P.is_zero()) {
    ZetaValue z;
    z.value.assign(P.target_dim(), 0.0);
    z.s = s;
    return z;
  }
  auto plan = plan_direct(pl, P, sh, s, tol);
  return direct_with_plan(pl, P, sh, s, plan, opt);
}

ZetaValue kzeta_accelerated(const PairedLattice& pl, const VectorPolynomial& P, const TorusPoint& u, cplx s, double A,
                            double tol, const SumOptions& opt) {
  if (!(tol > 0)) fail(ErrorCode::OutOfRange, "tolerance must be positive");
  if (!(A > 0) || !std::isfinite(A)) fail(ErrorCode::OutOfRange, "split point A must be positive");
  const int r = pl.rank();
  check_dim(P, r);
  const int dim = P.target_dim();
  const auto sh = pl.resolve(u);
  ZetaValue out;
  out.s = s;
  out.regime = ZetaRegime::Accelerated;
  out.split_A = A;
  out.value.assign(dim, 0.0);
  if (P.is_zero()) return out;

  auto p0 = P.constant_term();
  bool p0_zero = true;
  for (auto& z : p0)
    if (z != 0.0) p0_zero = false;
  if (!p0_zero && s == 0.0) fail(ErrorCode::PoleAtS, "boundary term P(0) A^s / s has a pole at s = 0");

  const cplx rg = rgamma(s);
  const double side_tol = std::abs(rg) > 0 ? tol / (2.0 * std::abs(rg)) : tol;
  const double sigma = s.real();

  // (i) summation side: sum chi P Gamma(s, A q) q^{-s}
  const auto& g = pl.direct();
  const Eigen::MatrixXd& B = g.basis();
  auto bounds = P.degree_bounds(coordinate_bounds(g));
  const TailWeight w1 = TailWeight::mellin(A, sigma, 1.0);
  double R1 = search_radius(g, side_tol, [&](double R) { return tail_bound(g, R, bounds, w1); });
  auto res1 = shell_sum(g, Eigen::VectorXd::Zero(r), dim, R1, opt, [&](const int* n, double q, VectorAccumulator& acc) {
    if (q <= 0.0) return;
    double x[16];
    cplx val[kStackDim];
    for (int i = 0; i < r; ++i) {
      double t = 0;
      for (int j = 0; j < r; ++j) t += B(i, j) * n[j];
      x[i] = t;
    }
    P.evaluate_into(x, val);
    cplx w = sh.character(n) * upper_gamma(s, A * q) * cpow_real(q, -s);
    for (int i = 0; i < dim; ++i) acc.add(i, w * val[i]);
  });

  // (ii) Poisson side, one incomplete gamma per Laurent power
  const auto& gd = pl.dual();
  const Eigen::MatrixXd& Bd = gd.basis();
  auto terms = transform_terms(P, g.form(), pl.pairing());
  const double disc = pl.disc_factor();
  std::vector<cplx> cexp;
  std::vector<std::vector<double>> dbounds;
  std::vector<TailWeight> dweights;
  for (auto& lt : terms) {
    cplx c = 0.5 * r + double(lt.inv_t_power) - s;
    cexp.push_back(c);
    auto b = lt.poly.degree_bounds(coordinate_bounds(gd));
    for (auto& x : b) x *= disc;
    dbounds.push_back(b);
    dweights.push_back(TailWeight::mellin(1.0 / A, c.real(), kPi * kPi));
  }
  auto dual_tail = [&](double R) {
    double t = 0;
    for (std::size_t e = 0; e < terms.size(); ++e) t += tail_bound(gd, R, dbounds[e], dweights[e]);
    return t;
  };
  double R2 = terms.empty() ? 0.0 : search_radius(gd, side_tol, dual_tail);
  // zero section term first, so singular configurations fail before any summation
  std::vector<cplx> zero_term(dim, 0.0);
  if (sh.on_lattice) {
    std::vector<double> zero(r, 0.0);
    for (std::size_t e = 0; e < terms.size(); ++e) {
      auto pe = terms[e].poly.evaluate(zero);
      bool nz = false;
      for (auto& z : pe)
        if (z != 0.0) nz = true;
      if (!nz) continue;
      cplx c = cexp[e];
      if (!(c.real() < 0))
        fail(ErrorCode::ZeroSectionSingularity,
             "u lies on the lattice and the zero-section term diverges at this s (needs Re(s) > " +
                 std::to_string(0.5 * r + terms[e].inv_t_power) + ")");
      cplx f = -cpow_real(A, -c) / c * disc;
      for (int i = 0; i < dim; ++i) zero_term[i] += f * pe[i];
    }
  }
  ShellSumResult res2;
  res2.value.assign(dim, 0.0);
  if (!terms.empty()) {
    res2 = shell_sum(gd, sh.dual_coeffs, dim, R2, opt, [&](const int* n, double q, VectorAccumulator& acc) {
      if (q <= 0.0) return;
      double x[16];
      cplx val[kStackDim];
      for (int i = 0; i < r; ++i) {
        double t = 0;
        for (int j = 0; j < r; ++j) t += Bd(i, j) * (n[j] + sh.dual_coeffs[j]);
        x[i] = t;
      }
      const double a = kPi * kPi * q;
      for (std::size_t e = 0; e < terms.size(); ++e) {
        terms[e].poly.evaluate_into(x, val);
        cplx f = disc * cpow_real(a, -cexp[e]) * upper_gamma(cexp[e], a / A);
        for (int i = 0; i < dim; ++i) acc.add(i, f * val[i]);
      }
    });
  }

  // (iii) boundary term
  cplx boundary = p0_zero ? cplx(0.0) : -cpow_real(A, s) / s;
  for (int i = 0; i < dim; ++i) {
    cplx total = res1.value[i] + res2.value[i] + zero_term[i] + boundary * p0[i];
    out.value[i] = rg * total;
  }
  out.error_bound = std::abs(rg) * (tail_bound(g, R1, bounds, w1) + (terms.empty() ? 0.0 : dual_tail(R2)));
  out.points = res1.points + res2.points;
  out.radius = R1;
  out.dual_radius = R2;
  return out;
}

ZetaValue kzeta(const PairedLattice& pl, const VectorPolynomial& P, const TorusPoint& u, cplx s, double tol,
                ZetaMode mode, double A, const SumOptions& opt) {
  if (mode == ZetaMode::Direct) return kzeta_direct(pl, P, u, s, tol, opt);
  if (mode == ZetaMode::Accelerated) return kzeta_accelerated(pl, P, u, s, A, tol, opt);
  if (!(tol > 0)) fail(ErrorCode::OutOfRange, "tolerance must be positive");
  check_dim(P, pl.rank());
  if (absolutely_convergent(P, pl.rank(), s) && !P.is_zero()) {
    const auto sh = pl.resolve(u);
    auto plan = plan_direct(pl, P, sh, s, tol);
    if (pl.direct().estimated_count(plan.R) <= 2e6) return direct_with_plan(pl, P, sh, s, plan, opt);
  }
  return kzeta_accelerated(pl, P, u, s, A, tol, opt);
}

ZetaValue kzeta_direct(const PolarizedAbelianData& data, const VectorPolynomial& P, const TorusPoint& u, cplx s,
                       double tol, const SumOptions& opt) {
  return kzeta_direct(PairedLattice::from_abelian(data, LatticeSide::DualLambda), P, u, s, tol, opt);
}

ZetaValue kzeta_accelerated(const PolarizedAbelianData& data, const VectorPolynomial& P, const TorusPoint& u, cplx s,
                            double A, double tol, const SumOptions& opt) {
  return kzeta_accelerated(PairedLattice::from_abelian(data, LatticeSide::DualLambda), P, u, s, A, tol, opt);
}

double torus_distance(const PairedLattice& pl, const Eigen::VectorXd& u) {
  const auto& gd = pl.dual();
  const int r = gd.rank();
  Eigen::VectorXd c = gd.coefficients_of(u);
  for (int i = 0; i < r; ++i) c[i] -= std::floor(c[i]);
  double best = kInf;
  // corners of the containing cell, widened by one when the rank is small
  const int klo = r <= 6 ? -1 : 0, khi = r <= 6 ? 2 : 1;
  std::vector<int> k(r, klo);
  while (true) {
    Eigen::VectorXd v(r);
    for (int i = 0; i < r; ++i) v[i] = c[i] - double(k[i]);
    best = std::min(best, (gd.basis() * v).norm());
    int i = 0;
    while (i < r && ++k[i] > khi) k[i++] = klo;
    if (i == r) break;
  }
  return best;
}

std::vector<Eigen::VectorXd> offset_grid(const PairedLattice& pl, int n) {
  const int r = pl.rank();
  static const double offs[] = {0.3, 0.6, 0.4, 0.7, 0.35, 0.65, 0.45, 0.55};
  std::vector<Eigen::VectorXd> grid;
  std::vector<int> idx(r, 0);
  while (true) {
    Eigen::VectorXd c(r);
    for (int i = 0; i < r; ++i) c[i] = (idx[i] + offs[i % 8]) / double(n);
    grid.push_back(pl.dual().basis() * c);
    int i = r - 1;
    while (i >= 0 && ++idx[i] == n) idx[i--] = 0;
    if (i < 0) break;
  }
  return grid;
}

std::vector<ScanRow> fd_scan(const PairedLattice& pl, const TorusFunction& f, const std::vector<Eigen::VectorXd>& grid,
                             double h) {
  if (!(h > 0)) fail(ErrorCode::OutOfRange, "finite-difference step must be positive");
  const int r = pl.rank();
  for (auto& u : grid) {
    if (u.size() != r) fail(ErrorCode::ArityMismatch, "grid point has wrong length");
    if (torus_distance(pl, u) < 10.0 * h)
      fail(ErrorCode::GridTouchesZeroSection, "grid point within 10 fd steps of the lattice");
  }
  auto gradient = [&](const Eigen::VectorXd& u, double step) {
    std::vector<std::vector<cplx>> g(r);
    for (int i = 0; i < r; ++i) {
      Eigen::VectorXd a = u, b = u;
      a[i] += step;
      b[i] -= step;
      auto fa = f(TorusPoint::from_double(a)), fb = f(TorusPoint::from_double(b));
      g[i].resize(fa.size());
      for (std::size_t c = 0; c < fa.size(); ++c) g[i][c] = (fa[c] - fb[c]) / (2 * step);
    }
    return g;
  };
  auto norm = [](const std::vector<std::vector<cplx>>& g) {
    double s = 0;
    for (auto& row : g)
      for (auto& z : row) s += std::norm(z);
    return std::sqrt(s);
  };
  auto diff = [&](const std::vector<std::vector<cplx>>& a, const std::vector<std::vector<cplx>>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t c = 0; c < a[i].size(); ++c) s += std::norm(a[i][c] - b[i][c]);
    return std::sqrt(s);
  };
  std::vector<ScanRow> rows;
  for (auto& u : grid) {
    ScanRow row;
    row.u = u;
    row.value = f(TorusPoint::from_double(u));
    row.grad = gradient(u, h);
    row.grad_half = gradient(u, h / 2);
    row.grad_quarter = gradient(u, h / 4);
    row.grad_norm = norm(row.grad_half);
    double n1 = norm(row.grad);
    row.stability_ratio = row.grad_norm > 0 ? n1 / row.grad_norm : 1.0;
    double d1 = diff(row.grad, row.grad_half), d2 = diff(row.grad_half, row.grad_quarter);
    row.richardson_ratio = d2 > 0 ? d1 / d2 : kInf;
    for (auto& z : row.value)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) row.finite = false;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ScanRow> smoothness_scan(const PairedLattice& pl, const VectorPolynomial& P, cplx s,
                                     const std::vector<Eigen::VectorXd>& grid, double fd_step, double tol, double A,
                                     const SumOptions& opt) {
  TorusFunction f = [&](const TorusPoint& u) { return kzeta_accelerated(pl, P, u, s, A, tol, opt).value; };
  return fd_scan(pl, f, grid, fd_step);
}

}  // namespace polylog
