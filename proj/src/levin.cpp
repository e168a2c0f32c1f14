#include "polylog/levin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "polylog/error.hpp"
#include "polylog/forms.hpp"
#include "polylog/hodge.hpp"

namespace polylog {
namespace {

Eigen::MatrixXcd hodge_projector(const PolarizedAbelianData& data) {
  const int r = data.rank();
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Identity(r, r);
  H -= cplx(0, 1) * data.J().cast<cplx>();
  return 0.5 * H;
}

VectorPolynomial linear_row(const Eigen::MatrixXcd& M, int row) {
  std::vector<cplx> c(M.cols());
  for (int j = 0; j < M.cols(); ++j) c[j] = M(row, j);
  return VectorPolynomial::linear(c);
}

double multinomial_count(const std::vector<int>& word) {
  // orderings of the letters of a sorted word
  double r = std::tgamma(double(word.size()) + 1);
  std::size_t i = 0;
  while (i < word.size()) {
    std::size_t j = i;
    while (j < word.size() && word[j] == word[i]) ++j;
    r /= std::tgamma(double(j - i) + 1);
    i = j;
  }
  return r;
}

void check_ab(int a, int b) {
  if (a < 1 || b < 1) fail(ErrorCode::OutOfRange, "a and b must be at least 1");
}

bool on_lattice(const PairedLattice& pl, const TorusPoint& u) { return pl.resolve(u).on_lattice; }

std::string merge_regime(const std::string& acc, const std::string& r) {
  if (acc.empty() || acc == "exact-zero") return r;
  if (r == "exact-zero" || r == acc) return acc;
  return "mixed";
}
}  // namespace

cplx CurrentValue::value(const std::vector<int>& word, std::uint32_t mask) const {
  auto it = components.find({word, mask});
  return it == components.end() ? cplx(0) : it->second;
}

HodgeBasis hodge_basis(const PolarizedAbelianData& data) {
  const int d = data.d(), r = data.rank();
  Eigen::MatrixXcd H = hodge_projector(data);
  HodgeBasis hb;
  hb.d = d;
  Eigen::MatrixXcd cols(r, 0);
  for (int i = 0; i < r && static_cast<int>(hb.source.size()) < d; ++i) {
    Eigen::MatrixXcd trial(r, cols.cols() + 1);
    trial << cols, H.col(i);
    Eigen::FullPivHouseholderQR<Eigen::MatrixXcd> qr(trial);
    qr.setThreshold(1e-10);
    if (qr.rank() == trial.cols()) {
      cols = trial;
      hb.source.push_back(i);
    }
  }
  if (static_cast<int>(hb.source.size()) != d) fail(ErrorCode::ConventionViolation, "Hodge projector has wrong rank");
  hb.vectors.resize(r, 2 * d);
  hb.vectors << cols, cols.conjugate();
  Eigen::MatrixXcd gram = cols.adjoint() * cols;
  hb.coords = gram.inverse() * cols.adjoint() * H;
  return hb;
}

TorsionPoint TorsionPoint::from_rational(std::vector<Rational> u) {
  TorsionPoint t;
  Integer n = 1;
  for (auto& x : u) {
    x.canonicalize();
    mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), x.get_den().get_mpz_t());
  }
  if (!n.fits_slong_p()) fail(ErrorCode::OutOfRange, "torsion order too large");
  t.u = std::move(u);
  t.order = n.get_si();
  return t;
}

Rational levin_coefficient(int a, int b, int k, int d, const Integer& kappa) {
  check_ab(a, b);
  if (d < 1) fail(ErrorCode::OutOfRange, "d must be positive");
  if (k < 0 || k > 2 * d) fail(ErrorCode::OutOfRange, "k must lie in [0, 2d]");
  if (sgn(kappa) <= 0) fail(ErrorCode::OutOfRange, "kappa must be positive");
  Rational c(factorial(a + b + k - 1));
  c /= Rational(factorial(a + b - 1) * factorial(k) * factorial(d) * kappa);
  if (d % 2) c = -c;
  return c;
}

LevinNumerator levin_numerator(const PolarizedAbelianData& data, const HodgeBasis& basis, int a, int b) {
  check_ab(a, b);
  const int d = data.d(), r = data.rank();
  Eigen::MatrixXcd H = hodge_projector(data);
  Eigen::MatrixXcd Hb = H.conjugate();

  // i_{e_p} i_{e_q} omega^d, constant coefficients
  auto wd = wedge_power(polarization_form(data), d);
  auto ctx = TorusContext::from_abelian(data);
  std::map<std::uint32_t, Eigen::MatrixXcd> T;
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(r);
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q) {
      std::vector<GaussRational> ep(r), eq(r);
      ep[p] = 1;
      eq[q] = 1;
      for (auto& [key, v] : evaluate(ctx, contract(contract(wd, eq), ep), zero)) {
        auto& M = T[key.first];
        if (M.size() == 0) M = Eigen::MatrixXcd::Zero(r, r);
        M(p, q) += v;
      }
    }
  std::vector<std::uint32_t> masks;
  for (auto& [m, M] : T) masks.push_back(m);
  if (masks.empty()) masks.push_back((1u << (r - 2)) - 1);

  std::vector<VectorPolynomial> hp, hq;
  for (int p = 0; p < r; ++p) {
    hp.push_back(linear_row(H, p));
    hq.push_back(linear_row(Hb, p));
  }
  VectorPolynomial X(r, static_cast<int>(masks.size()), 2, true);
  for (std::size_t m = 0; m < masks.size(); ++m) {
    auto it = T.find(masks[m]);
    if (it == T.end()) continue;
    for (int p = 0; p < r; ++p)
      for (int q = 0; q < r; ++q) {
        cplx t = it->second(p, q);
        if (t == 0.0) continue;
        std::vector<cplx> slot(masks.size(), 0.0);
        slot[m] = t;
        auto term = hp[p].times(hq[q]).times(VectorPolynomial::constant(r, slot));
        for (auto& tt : term.terms()) X.add_term(tt.alpha, tt.coeff);
      }
  }

  std::vector<VectorPolynomial> c, cb;
  Eigen::MatrixXcd Cb = basis.coords.conjugate();
  for (int j = 0; j < d; ++j) {
    c.push_back(linear_row(basis.coords, j));
    cb.push_back(linear_row(Cb, j));
  }
  auto words_h = sym_basis(d, b - 1), words_hb = sym_basis(d, a - 1);
  LevinNumerator out;
  const int nm = static_cast<int>(masks.size());
  const int dim = static_cast<int>(words_h.size() * words_hb.size()) * nm;
  out.P = VectorPolynomial(r, dim, a + b, true);
  int slot = 0;
  for (auto& wb : words_hb)
    for (auto& wh : words_h) {
      std::vector<int> word = wh;
      VectorPolynomial mono = VectorPolynomial::constant(r, {multinomial_count(wh) * multinomial_count(wb)});
      for (int l : wh) mono = mono.times(c[l]);
      for (int l : wb) {
        word.push_back(l + d);
        mono = mono.times(cb[l]);
      }
      auto full = mono.times(X);
      for (auto& t : full.terms()) {
        std::vector<cplx> v(dim, 0.0);
        for (int m = 0; m < nm; ++m) v[slot + m] = t.coeff[m];
        out.P.add_term(t.alpha, v);
      }
      for (int m = 0; m < nm; ++m) out.keys.push_back({word, masks[m]});
      slot += nm;
    }
  return out;
}

CurrentValue g_abk(const PolarizedAbelianData& data, int a, int b, int k, const TorusPoint& u, double tol,
                   const LevinOptions& opt) {
  check_ab(a, b);
  if (k < 0 || k > 2 * data.d()) fail(ErrorCode::OutOfRange, "k must lie in [0, 2d]");
  if (!(tol > 0)) fail(ErrorCode::OutOfRange, "tolerance must be positive");
  auto pl = PairedLattice::from_abelian(data, LatticeSide::DualLambda);
  if (on_lattice(pl, u)) fail(ErrorCode::ZeroSectionSingularity, "u lies on the lattice");
  auto num = levin_numerator(data, hodge_basis(data), a, b);
  CurrentValue out;
  out.sym_degree = a + b - 2;
  out.form_degree = data.rank() - 2;
  out.point = u.value;
  if (k >= 1) {
    // constant base: the Lie-derivative tower vanishes
    for (auto& key : num.keys) out.components[key] = 0.0;
    out.regime = "exact-zero";
    return out;
  }
  auto z = kzeta(pl, num.P, u, cplx(a + b, 0), tol, opt.mode, opt.A, opt.sum);
  for (std::size_t i = 0; i < num.keys.size(); ++i) out.components[num.keys[i]] = z.value[i];
  out.regime = regime_name(z.regime);
  out.error_bound = z.error_bound;
  out.points = z.points;
  return out;
}

CurrentValue g_grade(const PolarizedAbelianData& data, const TorusPoint& u, int n, double tol,
                     const LevinOptions& opt) {
  if (n < 2) fail(ErrorCode::OutOfRange, "grade must be at least 2");
  const Integer kappa = dual_lattice(data).kappa;
  const int d = data.d();
  CurrentValue out;
  out.sym_degree = n - 2;
  out.form_degree = data.rank() - 2;
  out.point = u.value;
  for (int a = 1; a < n; ++a) {
    const int b = n - a;
    for (int k = 0; k <= 2 * d; ++k) {
      Rational c = levin_coefficient(a, b, k, d, kappa);
      if (a % 2) c = -c;
      const double cd = c.get_d();
      auto piece = g_abk(data, a, b, k, u, tol / ((n - 1) * std::max(1.0, std::abs(cd))), opt);
      for (auto& [key, v] : piece.components) out.components[key] += cd * v;
      out.error_bound += std::abs(cd) * piece.error_bound;
      out.points += piece.points;
      out.regime = merge_regime(out.regime, piece.regime);
    }
  }
  return out;
}

std::vector<CurrentValue> g_total(const PolarizedAbelianData& data, const TorusPoint& u, int n_max, double tol,
                                  const LevinOptions& opt) {
  if (n_max < 2) fail(ErrorCode::OutOfRange, "grade_max must be at least 2");
  std::vector<CurrentValue> out;
  for (int n = 2; n <= n_max; ++n) out.push_back(g_grade(data, u, n, tol, opt));
  return out;
}

std::vector<cplx> pairing_functional(const PolarizedAbelianData& data, const HodgeBasis& basis,
                                     const std::vector<long>& mu) {
  const int r = data.rank();
  if (static_cast<int>(mu.size()) != r) fail(ErrorCode::ArityMismatch, "functional vector has wrong length");
  Eigen::VectorXd n(r);
  for (int i = 0; i < r; ++i) n[i] = double(mu[i]);
  Eigen::VectorXd m = data.dual_basis() * n;
  Eigen::RowVectorXcd row = (m.transpose() * data.E()).cast<cplx>();
  std::vector<cplx> chi(basis.vectors.cols());
  for (int j = 0; j < basis.vectors.cols(); ++j) chi[j] = (row * basis.vectors.col(j))(0);
  return chi;
}

std::map<CurrentKey, cplx> contract_components(const std::map<CurrentKey, cplx>& w, const std::vector<cplx>& chi,
                                               int letters) {
  if (static_cast<int>(chi.size()) != letters) fail(ErrorCode::ArityMismatch, "functional has wrong length");
  std::map<CurrentKey, cplx> out;
  for (auto& [key, x] : w) {
    if (key.first.empty()) fail(ErrorCode::OutOfRange, "cannot contract a degree-0 word");
    for (int i = 0; i < letters; ++i) {
      if (chi[i] == 0.0) continue;
      std::vector<Rational> e(letters, 0);
      e[i] = 1;
      auto img = c_n_contraction(e, SymElem::word(letters, key.first));
      for (auto& [word, c] : img.coeffs()) out[{word, key.second}] += chi[i] * c.get_d() * x;
    }
  }
  return out;
}

CurrentValue eisenstein_value(const PolarizedAbelianData& data, const TorsionPoint& x, int l, int n_max,
                              const std::vector<cplx>& chi, double tol, const LevinOptions& opt) {
  if (x.order == 1) fail(ErrorCode::ZeroSectionSingularity, "torsion point is the zero section");
  if (l < 0) fail(ErrorCode::OutOfRange, "l must be non-negative");
  if (l + 3 > n_max) fail(ErrorCode::OutOfRange, "grade l + 3 exceeds grade_max");
  auto g = g_grade(data, x.torus(), l + 3, tol, opt);
  CurrentValue out;
  out.sym_degree = l;
  out.form_degree = g.form_degree;
  out.point = g.point;
  out.regime = g.regime;
  out.points = g.points;
  out.components = contract_components(g.components, chi, 2 * data.d());
  double norm = 0;
  for (auto z : chi) norm += std::abs(z);
  out.error_bound = norm * g.error_bound * double(g.components.size());
  return out;
}

std::vector<ScanRow> current_scan(const PolarizedAbelianData& data, int n, const std::vector<Eigen::VectorXd>& grid,
                                  double h, double tol, const LevinOptions& opt) {
  auto pl = PairedLattice::from_abelian(data, LatticeSide::DualLambda);
  TorusFunction f = [&](const TorusPoint& p) {
    auto g = g_grade(data, p, n, tol, opt);
    std::vector<cplx> v;
    for (auto& [key, z] : g.components) v.push_back(z);
    return v;
  };
  return fd_scan(pl, f, grid, h);
}

PairingResult pair_with_test_form(const PolarizedAbelianData& data, const TorusScalar& f, const TorusScalar& w,
                                  double eps, int quad_n) {
  if (quad_n < 4 || quad_n % 2) fail(ErrorCode::OutOfRange, "quad_n must be even and at least 4");
  if (!(eps > 0)) fail(ErrorCode::OutOfRange, "excision radius must be positive");
  const int r = data.rank();
  auto pl = PairedLattice::from_abelian(data, LatticeSide::DualLambda);
  double total = std::pow(double(quad_n), r);
  if (total > 5e7) fail(ErrorCode::QuadratureBudget, "too many quadrature nodes");
  const std::size_t nodes = static_cast<std::size_t>(total);
  // sums over the full and the even-index grid, with eps and eps / 2 excisions
  cplx full = 0, full_half = 0, coarse = 0;
  std::vector<int> idx(r, 0);
  Eigen::VectorXd u(r);
  for (std::size_t k = 0; k < nodes; ++k) {
    std::size_t t = k;
    bool even = true;
    for (int i = r - 1; i >= 0; --i) {
      idx[i] = static_cast<int>(t % quad_n);
      t /= quad_n;
      u[i] = double(idx[i]) / quad_n;
      if (idx[i] % 2) even = false;
    }
    cplx wv = w(u);
    if (wv == 0.0) continue;
    double dist = torus_distance(pl, u);
    if (dist <= 0.5 * eps) continue;
    cplx val = f(u) * wv;
    full_half += val;
    if (dist > eps) {
      full += val;
      if (even) coarse += val;
    }
  }
  PairingResult res;
  res.nodes = nodes;
  res.value = full / total;
  res.value_half_eps = full_half / total;
  res.quad_error = std::abs(res.value - coarse / (total / std::pow(2.0, r)));
  res.eps_change = std::abs(res.value - res.value_half_eps);
  if (res.eps_change > 10 * res.quad_error)
    fail(ErrorCode::QuadratureUnstable, "halving the excision moved the pairing by " + std::to_string(res.eps_change));
  return res;
}

TorusScalar bump_form(const Eigen::VectorXd& c, double radius) {
  return [c, radius](const Eigen::VectorXd& u) -> cplx {
    double rho2 = 0;
    for (int i = 0; i < u.size(); ++i) {
      double x = u[i] - c[i];
      x -= std::round(x);
      rho2 += x * x;
    }
    rho2 /= radius * radius;
    if (rho2 >= 1) return 0.0;
    return std::exp(-1.0 / (1.0 - rho2));
  };
}

}  // namespace polylog
