#include "polylog/exact.hpp"

#include <algorithm>
#include <stdexcept>

namespace polylog {

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (c != ' ') text.push_back(c);
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto dot = text.find('.');
  auto e = text.find_first_of("eE");
  if (dot != std::string::npos || e != std::string::npos) {
    // decimal literal: exact value of the decimal string, not of the double
    std::string mant = e == std::string::npos ? text : text.substr(0, e);
    long expo = e == std::string::npos ? 0 : std::stol(text.substr(e + 1));
    bool neg = !mant.empty() && mant[0] == '-';
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) mant = mant.substr(1);
    std::string digits;
    long frac = 0;
    bool seen_dot = false;
    for (char c : mant) {
      if (c == '.') {
        if (seen_dot) throw std::invalid_argument("bad decimal: " + raw);
        seen_dot = true;
      } else if (c >= '0' && c <= '9') {
        digits.push_back(c);
        if (seen_dot) ++frac;
      } else {
        throw std::invalid_argument("bad decimal: " + raw);
      }
    }
    if (digits.empty()) throw std::invalid_argument("bad decimal: " + raw);
    Rational q{Integer(digits)};
    long shift = expo - frac;
    Integer p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift >= 0)
      q *= p10;
    else
      q /= p10;
    if (neg) q = -q;
    q.canonicalize();
    return q;
  }
  Rational q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + raw);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + raw);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

GaussRational GaussRational::inverse() const {
  Rational n = re * re + im * im;
  if (sgn(n) == 0) throw std::domain_error("inverse of zero");
  return {re / n, -im / n};
}

std::string to_string(const GaussRational& z) {
  if (sgn(z.im) == 0) return z.re.get_str();
  if (sgn(z.re) == 0) return z.im.get_str() + "i";
  return z.re.get_str() + (sgn(z.im) > 0 ? "+" : "") + z.im.get_str() + "i";
}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  RationalMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged matrix");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
  RationalMatrix p(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (int j = 0; j < o.cols_; ++j) p(i, j) += a * o(k, j);
    }
  return p;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
  RationalMatrix p = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) p.data_[i] += o.data_[i];
  return p;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
  RationalMatrix p = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) p.data_[i] -= o.data_[i];
  return p;
}

RationalMatrix RationalMatrix::scaled(const Rational& c) const {
  RationalMatrix p = *this;
  for (auto& x : p.data_) x *= c;
  return p;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

int RationalMatrix::rank() const {
  RationalMatrix a = *this;
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int piv = -1;
    for (int i = r; i < rows_; ++i)
      if (sgn(a(i, c)) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols_; ++j) std::swap(a(piv, j), a(r, j));
    for (int i = r + 1; i < rows_; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (int j = c; j < cols_; ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

Rational RationalMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
  RationalMatrix a = *this;
  Rational det = 1;
  for (int c = 0; c < cols_; ++c) {
    int piv = -1;
    for (int i = c; i < rows_; ++i)
      if (sgn(a(i, c)) != 0) { piv = i; break; }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < cols_; ++j) std::swap(a(piv, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (int i = c + 1; i < rows_; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (int j = c; j < cols_; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

RationalMatrix RationalMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
  int n = rows_;
  RationalMatrix a = *this, inv = identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (sgn(a(i, c)) != 0) { piv = i; break; }
    if (piv < 0) throw std::domain_error("singular matrix");
    if (piv != c)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    Rational p = a(c, c);
    for (int j = 0; j < n; ++j) {
      a(c, j) /= p;
      inv(c, j) /= p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c);
      for (int j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

std::vector<double> RationalMatrix::to_doubles() const {
  std::vector<double> out(data_.size());
  for (std::size_t i = 0; i < data_.size(); ++i) out[i] = data_[i].get_d();
  return out;
}

std::vector<Integer> smith_invariants(std::vector<std::vector<Integer>> a) {
  int m = static_cast<int>(a.size());
  int n = m ? static_cast<int>(a[0].size()) : 0;
  std::vector<Integer> diag;
  int t = 0;
  while (t < m && t < n) {
    // pivot: smallest nonzero magnitude in the remaining block
    int pi = -1, pj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (sgn(a[i][j]) != 0 && (pi < 0 || abs(a[i][j]) < abs(a[pi][pj]))) { pi = i; pj = j; }
    if (pi < 0) break;
    std::swap(a[t], a[pi]);
    for (int i = 0; i < m; ++i) std::swap(a[i][t], a[i][pj]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < m; ++i) {
        if (sgn(a[i][t]) == 0) continue;
        Integer q = a[i][t] / a[t][t];
        for (int j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (sgn(a[i][t]) != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (int j = t + 1; j < n; ++j) {
        if (sgn(a[t][j]) == 0) continue;
        Integer q = a[t][j] / a[t][t];
        for (int i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        if (sgn(a[t][j]) != 0) {
          for (int i = 0; i < m; ++i) std::swap(a[i][t], a[i][j]);
          clean = false;
        }
      }
      if (clean) {
        // divisibility of the rest of the block
        for (int i = t + 1; i < m && clean; ++i)
          for (int j = t + 1; j < n && clean; ++j)
            if (sgn(a[i][j] % a[t][t]) != 0) {
              for (int k = t; k < n; ++k) a[t][k] += a[i][k];
              clean = false;
            }
      }
    }
    diag.push_back(abs(a[t][t]));
    ++t;
  }
  while (static_cast<int>(diag.size()) < std::min(m, n)) diag.push_back(0);
  return diag;
}

Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

}  // namespace polylog
