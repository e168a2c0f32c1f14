#include "polylog/gauss.hpp"

#include <cmath>
#include <map>

#include "polylog/error.hpp"

namespace polylog {
namespace {
constexpr double kPi = 3.14159265358979323846;

void require_spd(const Eigen::MatrixXd& G) {
  if (G.rows() != G.cols()) fail(ErrorCode::NotPositiveDefinite, "form is not square");
  Eigen::MatrixXd s = 0.5 * (G + G.transpose());
  if ((s - G).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, G.cwiseAbs().maxCoeff()))
    fail(ErrorCode::NotPositiveDefinite, "form is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  if (es.eigenvalues().minCoeff() <= 0) fail(ErrorCode::NotPositiveDefinite, "form is not positive definite");
}

// Gaussian moments E[y^gamma] for y ~ N(0, S), via Isserlis.
class Moments {
 public:
  explicit Moments(Eigen::MatrixXd S) : S_(std::move(S)) {}
  double operator()(const MultiIndex& g) {
    int total = 0, first = -1;
    for (std::size_t i = 0; i < g.size(); ++i) {
      total += g[i];
      if (g[i] > 0 && first < 0) first = static_cast<int>(i);
    }
    if (total == 0) return 1.0;
    if (total % 2) return 0.0;
    auto it = memo_.find(g);
    if (it != memo_.end()) return it->second;
    MultiIndex rest = g;
    rest[first] -= 1;
    double v = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (rest[j] == 0) continue;
      MultiIndex r2 = rest;
      double mult = rest[j];
      r2[j] -= 1;
      v += S_(first, j) * mult * (*this)(r2);
    }
    memo_[g] = v;
    return v;
  }

 private:
  Eigen::MatrixXd S_;
  std::map<MultiIndex, double> memo_;
};

double binom(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}
}  // namespace

Eigen::MatrixXd dual_form(const Eigen::MatrixXd& G, const Eigen::MatrixXd& M) {
  require_spd(G);
  Eigen::MatrixXd D = M.transpose() * G.inverse() * M;
  return 0.5 * (D + D.transpose());
}

std::vector<LaurentTerm> transform_terms(const VectorPolynomial& P, const Eigen::MatrixXd& G, const Eigen::MatrixXd& M) {
  require_spd(G);
  const int r = P.arity();
  if (G.rows() != r || M.rows() != r) fail(ErrorCode::ArityMismatch, "polynomial arity differs from the lattice rank");
  Eigen::MatrixXd Ginv = G.inverse();
  Ginv = 0.5 * (Ginv + Ginv.transpose());
  Moments mom(0.5 * Ginv);
  Eigen::MatrixXd K = Ginv * M;  // x0 = (i pi / t) K w
  const cplx ipi(0.0, kPi);
  std::vector<VectorPolynomial> lin;
  for (int i = 0; i < r; ++i) {
    std::vector<cplx> c(M.cols());
    for (int j = 0; j < M.cols(); ++j) c[j] = ipi * K(i, j);
    lin.push_back(VectorPolynomial::linear(c));
  }
  const int wr = static_cast<int>(M.cols());
  std::map<int, VectorPolynomial> by_power;
  auto slot = [&](int e) -> VectorPolynomial& {
    auto it = by_power.find(e);
    if (it == by_power.end()) it = by_power.emplace(e, VectorPolynomial(wr, P.target_dim(), 0, false)).first;
    return it->second;
  };

  for (auto& term : P.terms()) {
    // enumerate beta <= alpha
    MultiIndex beta(r, 0);
    while (true) {
      MultiIndex gam(r);
      double c = 1.0;
      int nb = 0, ng = 0;
      for (int i = 0; i < r; ++i) {
        gam[i] = term.alpha[i] - beta[i];
        c *= binom(term.alpha[i], beta[i]);
        nb += beta[i];
        ng += gam[i];
      }
      double m = ng % 2 ? 0.0 : mom(gam);
      if (m != 0.0) {
        VectorPolynomial prod = VectorPolynomial::constant(wr, {c * m});
        for (int i = 0; i < r; ++i)
          for (int e = 0; e < beta[i]; ++e) prod = prod.times(lin[i]);
        VectorPolynomial vec = prod.times(VectorPolynomial::constant(wr, term.coeff));
        VectorPolynomial& dst = slot(nb + ng / 2);
        for (auto& t : vec.terms()) dst.add_term(t.alpha, t.coeff);
      }
      int i = 0;
      while (i < r && beta[i] == term.alpha[i]) {
        beta[i] = 0;
        ++i;
      }
      if (i == r) break;
      ++beta[i];
    }
  }
  std::vector<LaurentTerm> out;
  for (auto& [e, p] : by_power)
    if (!p.is_zero()) out.push_back({e, p});
  return out;
}

std::vector<cplx> GaussPolyFactor::poly_factor(const Eigen::VectorXd& w) const {
  std::vector<double> x(w.data(), w.data() + w.size());
  std::vector<cplx> out;
  for (auto& lt : terms) {
    auto v = lt.poly.evaluate(x);
    if (out.empty()) out.assign(v.size(), 0.0);
    double f = std::pow(t, -lt.inv_t_power);
    for (std::size_t i = 0; i < v.size(); ++i) out[i] += f * v[i];
  }
  return out;
}

std::vector<cplx> GaussPolyFactor::evaluate(const Eigen::VectorXd& p) const {
  Eigen::VectorXd w = p + shift;
  auto v = poly_factor(w);
  double env = std::pow(t, prefactor_exponent) * disc_factor * std::exp(-kPi * kPi * w.dot(dual_form * w) / t);
  for (auto& z : v) z *= env;
  return v;
}

GaussPolyFactor gaussian_ft(const VectorPolynomial& P, const Eigen::MatrixXd& G, const Eigen::MatrixXd& M,
                            double covolume, double t, const Eigen::VectorXd& h) {
  if (!(t > 0)) fail(ErrorCode::OutOfRange, "t must be positive");
  GaussPolyFactor f;
  f.dual_form = dual_form(G, M);
  f.shift = h;
  const int r = static_cast<int>(G.rows());
  f.prefactor_exponent = -0.5 * r;
  f.disc_factor = std::pow(kPi, 0.5 * r) / (std::sqrt(G.determinant()) * covolume);
  f.t = t;
  f.terms = transform_terms(P, G, M);
  if (f.terms.empty()) f.terms.push_back({0, VectorPolynomial(static_cast<int>(M.cols()), P.target_dim(), 0, false)});
  return f;
}

}  // namespace polylog
