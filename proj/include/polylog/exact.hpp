#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

namespace polylog {

using Integer = mpz_class;
using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

// Element of Q(i).
struct GaussRational {
  Rational re, im;

  GaussRational() = default;
  GaussRational(Rational r) : re(std::move(r)) {}
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussRational(long r) : re(r) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  GaussRational conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  GaussRational& operator+=(const GaussRational& o) { re += o.re; im += o.im; return *this; }
  GaussRational& operator-=(const GaussRational& o) { re -= o.re; im -= o.im; return *this; }
  GaussRational& operator*=(const GaussRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator-(GaussRational a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.re == b.re && a.im == b.im; }
  GaussRational inverse() const;
};

std::string to_string(const GaussRational& z);

// Dense rational matrix, row major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}
  static RationalMatrix identity(int n);
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

  RationalMatrix transpose() const;
  RationalMatrix operator*(const RationalMatrix& o) const;
  RationalMatrix operator+(const RationalMatrix& o) const;
  RationalMatrix operator-(const RationalMatrix& o) const;
  RationalMatrix scaled(const Rational& c) const;
  bool operator==(const RationalMatrix& o) const;
  bool is_zero() const;

  int rank() const;
  Rational determinant() const;
  // Throws SingularPolarization-free std::domain_error when singular; callers translate.
  RationalMatrix inverse() const;
  std::vector<double> to_doubles() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

// Invariant factors of an integer matrix (Smith normal form diagonal), zeros included.
std::vector<Integer> smith_invariants(std::vector<std::vector<Integer>> a);

Integer factorial(unsigned n);
Integer binomial(long n, long k);

}  // namespace polylog
