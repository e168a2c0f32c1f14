#include "polylog/poly.hpp"

#include <algorithm>
#include <cmath>

#include "polylog/error.hpp"

namespace polylog {

int VectorPolynomial::order(const MultiIndex& a) {
  int s = 0;
  for (int e : a) s += e;
  return s;
}

VectorPolynomial::VectorPolynomial(int arity, int target_dim, int degree, bool homogeneous)
    : arity_(arity), target_dim_(target_dim), degree_(degree), homogeneous_(homogeneous) {
  if (arity < 0 || target_dim < 1 || degree < 0) fail(ErrorCode::OutOfRange, "bad polynomial shape");
}

VectorPolynomial VectorPolynomial::constant(int arity, std::vector<cplx> value) {
  VectorPolynomial p(arity, static_cast<int>(value.size()), 0, true);
  p.add_term(MultiIndex(arity, 0), value);
  return p;
}

VectorPolynomial VectorPolynomial::monomial(int arity, const MultiIndex& alpha, std::vector<cplx> coeff) {
  VectorPolynomial p(arity, static_cast<int>(coeff.size()), order(alpha), true);
  p.add_term(alpha, coeff);
  return p;
}

VectorPolynomial VectorPolynomial::linear(const std::vector<cplx>& c) {
  int n = static_cast<int>(c.size());
  VectorPolynomial p(n, 1, 1, true);
  for (int i = 0; i < n; ++i) {
    MultiIndex a(n, 0);
    a[i] = 1;
    if (c[i] != 0.0) p.add_term(a, {c[i]});
  }
  return p;
}

void VectorPolynomial::add_term(const MultiIndex& alpha, const std::vector<cplx>& coeff) {
  if (static_cast<int>(alpha.size()) != arity_) fail(ErrorCode::ArityMismatch, "multi-index has wrong arity");
  if (static_cast<int>(coeff.size()) != target_dim_) fail(ErrorCode::ArityMismatch, "coefficient has wrong length");
  for (int e : alpha)
    if (e < 0) fail(ErrorCode::OutOfRange, "negative exponent");
  int k = order(alpha);
  if (homogeneous_ && k != degree_)
    fail(ErrorCode::OutOfRange, "term degree differs from the degree of a homogeneous polynomial");
  if (!homogeneous_) degree_ = std::max(degree_, k);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), alpha,
                             [](const Term& t, const MultiIndex& a) { return t.alpha < a; });
  if (it != terms_.end() && it->alpha == alpha) {
    for (int i = 0; i < target_dim_; ++i) it->coeff[i] += coeff[i];
    bool zero = std::all_of(it->coeff.begin(), it->coeff.end(), [](cplx z) { return z == 0.0; });
    if (zero) terms_.erase(it);
  } else {
    bool zero = std::all_of(coeff.begin(), coeff.end(), [](cplx z) { return z == 0.0; });
    if (!zero) terms_.insert(it, Term{alpha, coeff});
  }
  max_exp_ = 0;
  for (auto& t : terms_)
    for (int e : t.alpha) max_exp_ = std::max(max_exp_, e);
}

int VectorPolynomial::max_order() const {
  int m = -1;
  for (auto& t : terms_) m = std::max(m, order(t.alpha));
  return m;
}

bool VectorPolynomial::is_zero() const { return terms_.empty(); }

std::vector<cplx> VectorPolynomial::evaluate(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != arity_) fail(ErrorCode::ArityMismatch, "point has wrong arity");
  std::vector<cplx> out(target_dim_);
  evaluate_into(x.data(), out.data());
  return out;
}

std::vector<cplx> VectorPolynomial::evaluate(const std::vector<cplx>& x) const {
  if (static_cast<int>(x.size()) != arity_) fail(ErrorCode::ArityMismatch, "point has wrong arity");
  std::vector<cplx> out(target_dim_, 0.0);
  for (auto& t : terms_) {
    cplx m = 1.0;
    for (int i = 0; i < arity_; ++i)
      for (int e = 0; e < t.alpha[i]; ++e) m *= x[i];
    for (int j = 0; j < target_dim_; ++j) out[j] += m * t.coeff[j];
  }
  return out;
}

void VectorPolynomial::evaluate_into(const double* x, cplx* out) const {
  for (int j = 0; j < target_dim_; ++j) out[j] = 0.0;
  constexpr int kMaxArity = 16, kMaxExp = 32;
  if (arity_ <= kMaxArity && max_exp_ < kMaxExp) {
    double pw[kMaxArity][kMaxExp];
    for (int i = 0; i < arity_; ++i) {
      pw[i][0] = 1.0;
      for (int e = 1; e <= max_exp_; ++e) pw[i][e] = pw[i][e - 1] * x[i];
    }
    for (auto& t : terms_) {
      double m = 1.0;
      for (int i = 0; i < arity_; ++i) m *= pw[i][t.alpha[i]];
      for (int j = 0; j < target_dim_; ++j) out[j] += m * t.coeff[j];
    }
    return;
  }
  for (auto& t : terms_) {
    double m = 1.0;
    for (int i = 0; i < arity_; ++i) m *= std::pow(x[i], t.alpha[i]);
    for (int j = 0; j < target_dim_; ++j) out[j] += m * t.coeff[j];
  }
}

std::vector<cplx> VectorPolynomial::constant_term() const {
  for (auto& t : terms_)
    if (order(t.alpha) == 0) return t.coeff;
  return std::vector<cplx>(target_dim_, 0.0);
}

VectorPolynomial VectorPolynomial::homogeneous_part(int k) const {
  VectorPolynomial p(arity_, target_dim_, k, true);
  for (auto& t : terms_)
    if (order(t.alpha) == k) p.add_term(t.alpha, t.coeff);
  return p;
}

std::vector<double> VectorPolynomial::degree_bounds(const std::vector<double>& b) const {
  std::vector<double> out(std::max(max_order(), 0) + 1, 0.0);
  for (auto& t : terms_) {
    double norm = 0.0;
    for (auto& c : t.coeff) norm += std::norm(c);
    norm = std::sqrt(norm);
    for (int i = 0; i < arity_; ++i) norm *= std::pow(b[i], t.alpha[i]);
    out[order(t.alpha)] += norm;
  }
  for (auto& x : out) x *= 1.0 + 1e-12;
  return out;
}

VectorPolynomial VectorPolynomial::scaled(cplx c) const {
  VectorPolynomial p(arity_, target_dim_, degree_, homogeneous_);
  if (c == 0.0) return p;
  for (auto& t : terms_) {
    auto coeff = t.coeff;
    for (auto& z : coeff) z *= c;
    p.add_term(t.alpha, coeff);
  }
  return p;
}

VectorPolynomial VectorPolynomial::operator+(const VectorPolynomial& o) const {
  if (o.arity_ != arity_ || o.target_dim_ != target_dim_) fail(ErrorCode::ArityMismatch, "polynomial shapes differ");
  bool hom = homogeneous_ && o.homogeneous_ && (degree_ == o.degree_ || is_zero() || o.is_zero());
  int deg = std::max(degree_, o.degree_);
  if (hom) deg = is_zero() ? o.degree_ : degree_;
  VectorPolynomial p(arity_, target_dim_, deg, hom);
  for (auto& t : terms_) p.add_term(t.alpha, t.coeff);
  for (auto& t : o.terms_) p.add_term(t.alpha, t.coeff);
  return p;
}

VectorPolynomial VectorPolynomial::times(const VectorPolynomial& o) const {
  if (target_dim_ != 1) fail(ErrorCode::ArityMismatch, "left factor must be scalar");
  if (o.arity_ != arity_) fail(ErrorCode::ArityMismatch, "polynomial arities differ");
  bool hom = homogeneous_ && o.homogeneous_;
  VectorPolynomial p(arity_, o.target_dim_, hom ? degree_ + o.degree_ : 0, hom);
  for (auto& a : terms_)
    for (auto& b : o.terms_) {
      MultiIndex al(arity_);
      for (int i = 0; i < arity_; ++i) al[i] = a.alpha[i] + b.alpha[i];
      auto c = b.coeff;
      for (auto& z : c) z *= a.coeff[0];
      p.add_term(al, c);
    }
  return p;
}

VectorPolynomial VectorPolynomial::compose_linear(const std::vector<cplx>& A, int new_arity) const {
  if (static_cast<int>(A.size()) != arity_ * new_arity) fail(ErrorCode::ArityMismatch, "substitution has wrong shape");
  std::vector<VectorPolynomial> lin;
  for (int i = 0; i < arity_; ++i)
    lin.push_back(VectorPolynomial::linear(std::vector<cplx>(A.begin() + i * new_arity, A.begin() + (i + 1) * new_arity)));
  VectorPolynomial out(new_arity, target_dim_, degree_, homogeneous_);
  for (auto& t : terms_) {
    VectorPolynomial m = VectorPolynomial::constant(new_arity, {1.0});
    for (int i = 0; i < arity_; ++i)
      for (int e = 0; e < t.alpha[i]; ++e) m = m.times(lin[i]);
    VectorPolynomial c = VectorPolynomial::constant(new_arity, t.coeff);
    VectorPolynomial term = m.times(c);
    for (auto& tt : term.terms()) out.add_term(tt.alpha, tt.coeff);
  }
  return out;
}

}  // namespace polylog
