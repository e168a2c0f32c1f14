#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polylog/exact.hpp"

namespace polylog {

// Q[Z^m] / a^n in the monomials Y^alpha, Y_i = X_i - 1, |alpha| < n
class GroupAlgElem {
 public:
  GroupAlgElem(int m, int n);
  static GroupAlgElem unit(int m, int n);
  // X^g = prod (1 + Y_i)^{g_i}, negative powers by truncated geometric series
  static GroupAlgElem group_element(int m, int n, const std::vector<long>& g);
  static GroupAlgElem monomial(int m, int n, const std::vector<int>& alpha, const Rational& c = 1);

  int rank() const { return m_; }
  int truncation() const { return n_; }
  const std::map<std::vector<int>, Rational>& coeffs() const { return c_; }
  Rational coeff(const std::vector<int>& alpha) const;
  bool is_zero() const { return c_.empty(); }

  GroupAlgElem& operator+=(const GroupAlgElem& o);
  GroupAlgElem& operator-=(const GroupAlgElem& o);
  friend GroupAlgElem operator+(GroupAlgElem a, const GroupAlgElem& b) { return a += b; }
  friend GroupAlgElem operator-(GroupAlgElem a, const GroupAlgElem& b) { return a -= b; }
  friend GroupAlgElem operator*(const GroupAlgElem& a, const GroupAlgElem& b);
  friend bool operator==(const GroupAlgElem& a, const GroupAlgElem& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.c_ == b.c_;
  }
  // image in Q[Z^m] / a^k, k <= n
  GroupAlgElem reduce(int k) const;
  std::string to_string() const;

 private:
  void add(const std::vector<int>& alpha, const Rational& c);
  int m_, n_;
  std::map<std::vector<int>, Rational> c_;
};

// Element of Sym^n of a space with basis letters 0..dim-1, stored on sorted words
class SymElem {
 public:
  SymElem(int dim, int degree) : dim_(dim), degree_(degree) {}
  static SymElem word(int dim, std::vector<int> w, const Rational& c = 1);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::map<std::vector<int>, Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  void add(std::vector<int> w, const Rational& c);
  SymElem& operator+=(const SymElem& o);
  SymElem scaled(const Rational& c) const;
  friend bool operator==(const SymElem& a, const SymElem& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.c_ == b.c_;
  }
  std::string to_string() const;

 private:
  int dim_, degree_;
  std::map<std::vector<int>, Rational> c_;
};

struct AlgebraCaps {
  std::size_t max_dimension = 20000;
};

// sorted words of length n over letters 0..dim-1
std::vector<std::vector<int>> sym_basis(int dim, int n);
// exponent vectors of total degree <= n in m variables
std::vector<std::vector<int>> monomial_basis(int m, int n);

struct PsiMatrix {
  RationalMatrix matrix;  // columns: source monomials Y^alpha, rows: target words
  std::vector<std::vector<int>> source_basis, target_basis;
  int rank = 0;
  bool bijective = false;
};

// psi^(n): Q[Z^m]/a^{n+1} -> Sym^n(Q[Z^m]/a^2), X^g -> [X^g]^n; letter 0 is 1, letter i is Y_i
PsiMatrix psi_n_matrix(int m, int n, const AlgebraCaps& caps = {});

struct GammaCheck {
  std::vector<long> g;
  std::vector<Rational> cocycle;  // coefficients on [Y_i] in a/a^2
  bool equal = false;
};
std::vector<GammaCheck> gamma_vs_delta(int m, const std::vector<std::vector<long>>& elements);

// (1/n!) sum_sigma chi(v_sigma(1)) [v_sigma(2) .. v_sigma(n)]
SymElem c_n_contraction(const std::vector<Rational>& chi, const SymElem& w);

struct LadderVerdict {
  int n = 0;
  bool theta_commutes = false;
  bool psi_commutes = false;
  std::optional<std::vector<int>> psi_counterexample;  // grade word in G_{n+1}
  std::optional<std::vector<int>> theta_counterexample;
};

// c_{n+1}(eps) o theta_{n+1} = theta_n o p_{n+1,n} on a basis of G_{n+1} = sum_{k <= n+1} Sym^k H
LadderVerdict theta_ladder_check(int h_dim, int n, const AlgebraCaps& caps = {});

struct SplittingVerdict {
  std::vector<long> sym_dims;     // dim Sym^k H
  std::vector<long> kernel_dims;  // dim ker c_k(eps) on Sym^k V, k >= 1; dim Sym^0 V at k = 0
  bool theta_bijective = true;
  bool projection_identity = true;
  bool ok = false;
};
SplittingVerdict splitting_grading_check(int h_dim, int n_max, const AlgebraCaps& caps = {});

// psi_n and theta_n of a grade word over H (letters 0..h-1) into Sym^n V, V letters 0 = 1, 1..h = H
SymElem psi_ladder(int h_dim, int n, const std::vector<int>& hword);
SymElem theta_ladder(int h_dim, int n, const std::vector<int>& hword);

}  // namespace polylog
