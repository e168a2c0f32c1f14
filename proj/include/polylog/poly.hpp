#pragma once

#include <complex>
#include <vector>

namespace polylog {

using cplx = std::complex<double>;
using MultiIndex = std::vector<int>;

class VectorPolynomial {
 public:
  struct Term {
    MultiIndex alpha;
    std::vector<cplx> coeff;
  };

  VectorPolynomial() = default;
  // homogeneous: every term must have |alpha| = degree.
  VectorPolynomial(int arity, int target_dim, int degree, bool homogeneous = true);

  static VectorPolynomial constant(int arity, std::vector<cplx> value);
  static VectorPolynomial monomial(int arity, const MultiIndex& alpha, std::vector<cplx> coeff);
  // scalar linear form sum_i c_i x_i
  static VectorPolynomial linear(const std::vector<cplx>& c);

  void add_term(const MultiIndex& alpha, const std::vector<cplx>& coeff);

  int arity() const { return arity_; }
  int target_dim() const { return target_dim_; }
  int degree() const { return degree_; }
  bool homogeneous() const { return homogeneous_; }
  // largest |alpha| among nonzero terms (-1 for the zero polynomial)
  int max_order() const;
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const;

  std::vector<cplx> evaluate(const std::vector<double>& x) const;
  std::vector<cplx> evaluate(const std::vector<cplx>& x) const;
  // unchecked fast path; out has target_dim entries and is overwritten
  void evaluate_into(const double* x, cplx* out) const;

  std::vector<cplx> constant_term() const;
  VectorPolynomial homogeneous_part(int k) const;
  // p_k with |P_k(x)| <= p_k * N(x)^k whenever |x_i| <= b_i N(x)
  std::vector<double> degree_bounds(const std::vector<double>& coordinate_bounds) const;

  VectorPolynomial scaled(cplx c) const;
  VectorPolynomial operator+(const VectorPolynomial& o) const;
  // this must be scalar (target_dim 1); result has o's target_dim
  VectorPolynomial times(const VectorPolynomial& o) const;
  // substitute x = A y, A is arity x new_arity (row-major flat)
  VectorPolynomial compose_linear(const std::vector<cplx>& A, int new_arity) const;

 private:
  static int order(const MultiIndex& a);
  int arity_ = 0, target_dim_ = 1, degree_ = 0;
  bool homogeneous_ = true;
  int max_exp_ = 0;
  std::vector<Term> terms_;  // sorted by alpha
};

}  // namespace polylog
