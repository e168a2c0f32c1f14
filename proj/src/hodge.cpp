#include "polylog/hodge.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "polylog/error.hpp"

namespace polylog {
namespace {

int total(const std::vector<int>& a) { return std::accumulate(a.begin(), a.end(), 0); }

long count_sym(int dim, int n) {
  Integer b = binomial(n + dim - 1, n);
  return b.fits_slong_p() ? b.get_si() : -1;
}

void check_cap(long dim, const AlgebraCaps& caps) {
  if (dim < 0 || std::size_t(dim) > caps.max_dimension)
    fail(ErrorCode::DimensionOverflow, "basis dimension " + std::to_string(dim) + " above the cap");
}

// multinomial n! / prod k_i!
Integer multinomial(const std::vector<int>& k) {
  Integer r = factorial(static_cast<unsigned>(total(k)));
  for (int x : k) r /= factorial(static_cast<unsigned>(x));
  return r;
}

std::vector<int> counts_of(const std::vector<int>& word, int dim) {
  std::vector<int> k(dim, 0);
  for (int l : word) ++k[l];
  return k;
}
}  // namespace

GroupAlgElem::GroupAlgElem(int m, int n) : m_(m), n_(n) {
  if (m < 1) fail(ErrorCode::OutOfRange, "group algebra rank must be positive");
  if (n < 0) fail(ErrorCode::OutOfRange, "truncation must be non-negative");
}

GroupAlgElem GroupAlgElem::unit(int m, int n) { return monomial(m, n, std::vector<int>(m, 0)); }

GroupAlgElem GroupAlgElem::monomial(int m, int n, const std::vector<int>& alpha, const Rational& c) {
  GroupAlgElem e(m, n);
  if (static_cast<int>(alpha.size()) != m) fail(ErrorCode::ArityMismatch, "exponent vector has wrong length");
  e.add(alpha, c);
  return e;
}

GroupAlgElem GroupAlgElem::group_element(int m, int n, const std::vector<long>& g) {
  if (static_cast<int>(g.size()) != m) fail(ErrorCode::ArityMismatch, "group element has wrong length");
  GroupAlgElem r = unit(m, n);
  for (int i = 0; i < m; ++i) {
    GroupAlgElem f(m, n);
    std::vector<int> a(m, 0);
    for (int j = 0; j < n; ++j) {
      a[i] = j;
      // (1+Y)^g = sum_j binom(g, j) Y^j, generalized for negative g
      Rational c;
      if (g[i] >= 0) {
        c = Rational(binomial(g[i], j));
      } else {
        c = Rational(binomial(-g[i] + j - 1, j));
        if (j % 2) c = -c;
      }
      f.add(a, c);
    }
    r = r * f;
  }
  return r;
}

Rational GroupAlgElem::coeff(const std::vector<int>& alpha) const {
  auto it = c_.find(alpha);
  return it == c_.end() ? Rational(0) : it->second;
}

void GroupAlgElem::add(const std::vector<int>& alpha, const Rational& c) {
  if (sgn(c) == 0 || total(alpha) >= n_) return;
  auto& v = c_[alpha];
  v += c;
  if (sgn(v) == 0) c_.erase(alpha);
}

GroupAlgElem& GroupAlgElem::operator+=(const GroupAlgElem& o) {
  if (o.m_ != m_ || o.n_ != n_) fail(ErrorCode::ArityMismatch, "group algebra shapes differ");
  for (auto& [a, c] : o.c_) add(a, c);
  return *this;
}

GroupAlgElem& GroupAlgElem::operator-=(const GroupAlgElem& o) {
  if (o.m_ != m_ || o.n_ != n_) fail(ErrorCode::ArityMismatch, "group algebra shapes differ");
  for (auto& [a, c] : o.c_) add(a, -c);
  return *this;
}

GroupAlgElem operator*(const GroupAlgElem& a, const GroupAlgElem& b) {
  if (a.m_ != b.m_ || a.n_ != b.n_) fail(ErrorCode::ArityMismatch, "group algebra shapes differ");
  GroupAlgElem r(a.m_, a.n_);
  std::vector<int> s(a.m_);
  for (auto& [x, cx] : a.c_)
    for (auto& [y, cy] : b.c_) {
      if (total(x) + total(y) >= a.n_) continue;
      for (int i = 0; i < a.m_; ++i) s[i] = x[i] + y[i];
      r.add(s, cx * cy);
    }
  return r;
}

GroupAlgElem GroupAlgElem::reduce(int k) const {
  if (k > n_) fail(ErrorCode::OutOfRange, "cannot lift to a finer truncation");
  GroupAlgElem r(m_, k);
  for (auto& [a, c] : c_) r.add(a, c);
  return r;
}

std::string GroupAlgElem::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [a, c] : c_) {
    if (!first) os << " + ";
    first = false;
    os << polylog::to_string(c);
    for (int i = 0; i < m_; ++i)
      if (a[i]) os << "*Y" << i + 1 << (a[i] > 1 ? "^" + std::to_string(a[i]) : "");
  }
  return os.str();
}

SymElem SymElem::word(int dim, std::vector<int> w, const Rational& c) {
  SymElem e(dim, static_cast<int>(w.size()));
  e.add(std::move(w), c);
  return e;
}

void SymElem::add(std::vector<int> w, const Rational& c) {
  if (static_cast<int>(w.size()) != degree_) fail(ErrorCode::ArityMismatch, "word length differs from the degree");
  for (int l : w)
    if (l < 0 || l >= dim_) fail(ErrorCode::OutOfRange, "letter outside the basis");
  if (sgn(c) == 0) return;
  std::sort(w.begin(), w.end());
  auto& v = c_[w];
  v += c;
  if (sgn(v) == 0) c_.erase(w);
}

SymElem& SymElem::operator+=(const SymElem& o) {
  if (o.dim_ != dim_ || o.degree_ != degree_) fail(ErrorCode::ArityMismatch, "symmetric power shapes differ");
  for (auto& [w, c] : o.c_) add(w, c);
  return *this;
}

SymElem SymElem::scaled(const Rational& c) const {
  SymElem e(dim_, degree_);
  for (auto& [w, x] : c_) e.add(w, x * c);
  return e;
}

std::string SymElem::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [w, c] : c_) {
    if (!first) os << " + ";
    first = false;
    os << polylog::to_string(c) << "[";
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "." : "") << "v" << w[i];
    os << "]";
  }
  return os.str();
}

std::vector<std::vector<int>> sym_basis(int dim, int n) {
  std::vector<std::vector<int>> out;
  if (dim <= 0) {
    if (n == 0) out.push_back({});
    return out;
  }
  std::vector<int> w(n, 0);
  while (true) {
    out.push_back(w);
    int i = n - 1;
    while (i >= 0 && w[i] == dim - 1) --i;
    if (i < 0) break;
    int v = w[i] + 1;
    for (int j = i; j < n; ++j) w[j] = v;
  }
  return out;
}

std::vector<std::vector<int>> monomial_basis(int m, int n) {
  std::vector<std::vector<int>> out;
  for (int k = 0; k <= n; ++k)
    for (auto& w : sym_basis(m, k)) {
      std::vector<int> a(m, 0);
      for (int l : w) ++a[l];
      out.push_back(a);
    }
  std::reverse(out.begin(), out.end());
  std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    int ta = total(a), tb = total(b);
    return ta != tb ? ta < tb : a > b;
  });
  return out;
}

PsiMatrix psi_n_matrix(int m, int n, const AlgebraCaps& caps) {
  if (m < 1) fail(ErrorCode::OutOfRange, "group algebra rank must be positive");
  if (n < 0) fail(ErrorCode::OutOfRange, "n must be non-negative");
  long src = count_sym(m + 1, n);
  check_cap(src, caps);
  PsiMatrix out;
  out.source_basis = monomial_basis(m, n);
  out.target_basis = sym_basis(m + 1, n);
  std::map<std::vector<int>, int> row_of;
  for (std::size_t i = 0; i < out.target_basis.size(); ++i) row_of[out.target_basis[i]] = static_cast<int>(i);
  const int rows = static_cast<int>(out.target_basis.size()), cols = static_cast<int>(out.source_basis.size());
  out.matrix = RationalMatrix(rows, cols);
  for (int col = 0; col < cols; ++col) {
    const auto& alpha = out.source_basis[col];
    // Y^alpha = sum_{beta <= alpha} (-1)^{|alpha - beta|} binom(alpha, beta) X^beta
    std::vector<int> beta(m, 0);
    while (true) {
      Rational c = 1;
      int parity = 0;
      for (int i = 0; i < m; ++i) {
        c *= Rational(binomial(alpha[i], beta[i]));
        parity += alpha[i] - beta[i];
      }
      if (parity % 2) c = -c;
      // [X^beta] = v_0 + sum beta_i v_i, raised to the n-th symmetric power
      for (auto& w : out.target_basis) {
        auto k = counts_of(w, m + 1);
        Rational t = Rational(multinomial(k));
        for (int i = 1; i <= m && sgn(t) != 0; ++i)
          for (int e = 0; e < k[i]; ++e) t *= beta[i - 1];
        if (sgn(t) != 0) out.matrix(row_of[w], col) += c * t;
      }
      int i = 0;
      while (i < m && ++beta[i] > alpha[i]) beta[i++] = 0;
      if (i == m) break;
    }
  }
  out.rank = out.matrix.rank();
  out.bijective = rows == cols && out.rank == rows;
  return out;
}

std::vector<GammaCheck> gamma_vs_delta(int m, const std::vector<std::vector<long>>& elements) {
  std::vector<GammaCheck> out;
  for (auto& g : elements) {
    GammaCheck ck;
    ck.g = g;
    // d0(s)(g) = g.s - s with s = 1 in Q[Z^m]/a^2
    auto s = GroupAlgElem::unit(m, 2);
    auto cocycle = GroupAlgElem::group_element(m, 2, g) * s - s;
    ck.cocycle.resize(m);
    ck.equal = sgn(cocycle.coeff(std::vector<int>(m, 0))) == 0;
    for (int i = 0; i < m; ++i) {
      std::vector<int> a(m, 0);
      a[i] = 1;
      ck.cocycle[i] = cocycle.coeff(a);
      if (ck.cocycle[i] != Rational(g[i])) ck.equal = false;
    }
    out.push_back(std::move(ck));
  }
  return out;
}

SymElem c_n_contraction(const std::vector<Rational>& chi, const SymElem& w) {
  if (w.degree() < 1) fail(ErrorCode::OutOfRange, "contraction needs degree at least 1");
  if (static_cast<int>(chi.size()) != w.dim()) fail(ErrorCode::ArityMismatch, "functional has wrong length");
  SymElem out(w.dim(), w.degree() - 1);
  const Rational inv_n(1, w.degree());
  for (auto& [word, c] : w.coeffs()) {
    // each position leads (n-1)! permutations
    for (std::size_t j = 0; j < word.size(); ++j) {
      if (sgn(chi[word[j]]) == 0) continue;
      std::vector<int> rest;
      rest.reserve(word.size() - 1);
      for (std::size_t k = 0; k < word.size(); ++k)
        if (k != j) rest.push_back(word[k]);
      out.add(std::move(rest), c * chi[word[j]] * inv_n);
    }
  }
  return out;
}

SymElem psi_ladder(int h_dim, int n, const std::vector<int>& hword) {
  int k = static_cast<int>(hword.size());
  if (k > n) fail(ErrorCode::OutOfRange, "grade above the ladder level");
  std::vector<int> w(n - k, 0);
  for (int l : hword) w.push_back(l + 1);
  return SymElem::word(h_dim + 1, w);
}

SymElem theta_ladder(int h_dim, int n, const std::vector<int>& hword) {
  int k = static_cast<int>(hword.size());
  // alpha_n^k = n! / (n-k)!
  Rational a(factorial(static_cast<unsigned>(n)) / factorial(static_cast<unsigned>(n - k)));
  return psi_ladder(h_dim, n, hword).scaled(a);
}

LadderVerdict theta_ladder_check(int h_dim, int n, const AlgebraCaps& caps) {
  if (n < 0 || h_dim < 1) fail(ErrorCode::OutOfRange, "ladder check needs n >= 0 and H_dim >= 1");
  check_cap(count_sym(h_dim + 1, n + 1), caps);
  std::vector<Rational> eps(h_dim + 1, 0);
  eps[0] = 1;
  LadderVerdict v;
  v.n = n;
  v.theta_commutes = v.psi_commutes = true;
  for (int k = 0; k <= n + 1; ++k)
    for (auto& hw : sym_basis(h_dim, k)) {
      // right side: theta_n o p_{n+1,n}, grade n+1 dropped
      SymElem rt(h_dim + 1, n), rp(h_dim + 1, n);
      if (k <= n) {
        rt = theta_ladder(h_dim, n, hw);
        rp = psi_ladder(h_dim, n, hw);
      }
      if (!(c_n_contraction(eps, theta_ladder(h_dim, n + 1, hw)) == rt)) {
        v.theta_commutes = false;
        if (!v.theta_counterexample) v.theta_counterexample = hw;
      }
      if (!(c_n_contraction(eps, psi_ladder(h_dim, n + 1, hw)) == rp)) {
        v.psi_commutes = false;
        if (!v.psi_counterexample) v.psi_counterexample = hw;
      }
    }
  return v;
}

SplittingVerdict splitting_grading_check(int h_dim, int n_max, const AlgebraCaps& caps) {
  if (n_max < 0 || h_dim < 1) fail(ErrorCode::OutOfRange, "splitting check needs n_max >= 0 and H_dim >= 1");
  check_cap(count_sym(h_dim + 1, n_max), caps);
  SplittingVerdict out;
  std::vector<Rational> eps(h_dim + 1, 0);
  eps[0] = 1;
  for (int k = 0; k <= n_max; ++k) out.sym_dims.push_back(count_sym(h_dim, k));
  for (int n = 0; n <= n_max; ++n) {
    auto vb = sym_basis(h_dim + 1, n);
    std::map<std::vector<int>, int> idx;
    for (std::size_t i = 0; i < vb.size(); ++i) idx[vb[i]] = static_cast<int>(i);
    // theta_n as a matrix from G_n
    std::vector<std::vector<int>> gb;
    for (int k = 0; k <= n; ++k)
      for (auto& w : sym_basis(h_dim, k)) gb.push_back(w);
    RationalMatrix T(static_cast<int>(vb.size()), static_cast<int>(gb.size()));
    for (std::size_t c = 0; c < gb.size(); ++c) {
      auto img = theta_ladder(h_dim, n, gb[c]);
      for (auto& [w, x] : img.coeffs()) T(idx[w], static_cast<int>(c)) = x;
    }
    if (!(T.rows() == T.cols() && T.rank() == T.rows())) out.theta_bijective = false;
    if (n == 0) {
      out.kernel_dims.push_back(static_cast<long>(vb.size()));
      continue;
    }
    // contraction matrix Sym^n V -> Sym^{n-1} V
    auto lb = sym_basis(h_dim + 1, n - 1);
    std::map<std::vector<int>, int> lidx;
    for (std::size_t i = 0; i < lb.size(); ++i) lidx[lb[i]] = static_cast<int>(i);
    RationalMatrix C(static_cast<int>(lb.size()), static_cast<int>(vb.size()));
    for (std::size_t c = 0; c < vb.size(); ++c) {
      auto img = c_n_contraction(eps, SymElem::word(h_dim + 1, vb[c]));
      for (auto& [w, x] : img.coeffs()) C(lidx[w], static_cast<int>(c)) = x;
    }
    out.kernel_dims.push_back(static_cast<long>(vb.size()) - C.rank());
    // theta_{n-1}^{-1} o c_n o theta_n = projection dropping grade n
    std::vector<std::vector<int>> gl;
    for (int k = 0; k < n; ++k)
      for (auto& w : sym_basis(h_dim, k)) gl.push_back(w);
    RationalMatrix Tl(static_cast<int>(lb.size()), static_cast<int>(gl.size()));
    for (std::size_t c = 0; c < gl.size(); ++c) {
      auto img = theta_ladder(h_dim, n - 1, gl[c]);
      for (auto& [w, x] : img.coeffs()) Tl(lidx[w], static_cast<int>(c)) = x;
    }
    RationalMatrix Tinv;
    try {
      Tinv = Tl.inverse();
    } catch (const std::domain_error&) {
      out.theta_bijective = false;
      continue;
    }
    RationalMatrix composite = Tinv * C * T;
    RationalMatrix proj(static_cast<int>(gl.size()), static_cast<int>(gb.size()));
    for (std::size_t i = 0; i < gl.size(); ++i) proj(static_cast<int>(i), static_cast<int>(i)) = 1;
    if (!(composite == proj)) out.projection_identity = false;
  }
  bool dims = out.sym_dims == out.kernel_dims;
  out.ok = dims && out.theta_bijective && out.projection_identity;
  return out;
}

}  // namespace polylog
