#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "polylog/exact.hpp"
#include "polylog/lattice.hpp"

namespace polylog {

// Q(i)[iota], iota a formal symbol standing for 2 pi i
class QIota {
 public:
  QIota() = default;
  QIota(GaussRational c, int power = 0);
  QIota(long c) : QIota(GaussRational(c)) {}
  static QIota iota(int power = 1) { return QIota(GaussRational(1), power); }

  bool is_zero() const { return c_.empty(); }
  const std::map<int, GaussRational>& coeffs() const { return c_; }
  QIota& operator+=(const QIota& o);
  QIota& operator-=(const QIota& o);
  friend QIota operator+(QIota a, const QIota& b) { return a += b; }
  friend QIota operator-(QIota a, const QIota& b) { return a -= b; }
  friend QIota operator-(const QIota& a) { return QIota() - a; }
  friend QIota operator*(const QIota& a, const QIota& b);
  friend bool operator==(const QIota& a, const QIota& b);
  // iota -> 2 pi i
  std::complex<double> to_complex() const;
  std::string to_string() const;

 private:
  std::map<int, GaussRational> c_;
};

struct FormKey {
  std::vector<long> chi;  // character index in the dual-lattice basis
  std::uint32_t mask = 0;  // dx^I, bit i for dx^{i+1}
  std::vector<int> word;  // sorted letters over the lattice basis
  bool operator<(const FormKey& o) const;
  bool operator==(const FormKey& o) const { return chi == o.chi && mask == o.mask && word == o.word; }
};

// Finite sum of chi dx^I (x) w with exact coefficients, Sym values truncated at degree N.
class FourierForm {
 public:
  static constexpr int kMaxRank = 16;
  static constexpr int kMaxTruncation = 24;
  static constexpr std::size_t kMaxTerms = 2'000'000;

  FourierForm() = default;
  FourierForm(int rank, int N);
  static FourierForm monomial(int rank, int N, std::vector<long> chi, std::uint32_t mask, std::vector<int> word,
                              const QIota& c);
  static FourierForm constant(int rank, int N, const QIota& c);

  int rank() const { return rank_; }
  int truncation() const { return N_; }
  const std::map<FormKey, QIota>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // dropped silently when deg w > N or a repeated dx index
  void add(FormKey key, const QIota& c);
  FourierForm& operator+=(const FourierForm& o);
  FourierForm& operator-=(const FourierForm& o);
  friend FourierForm operator+(FourierForm a, const FourierForm& b) { return a += b; }
  friend FourierForm operator-(FourierForm a, const FourierForm& b) { return a -= b; }
  friend bool operator==(const FourierForm& a, const FourierForm& b);
  FourierForm scaled(const QIota& c) const;

  // wedge with characters multiplying and words concatenating
  FourierForm wedge(const FourierForm& o) const;
  // single form degree, -1 if mixed or zero
  int degree() const;
  std::string to_string() const;

 private:
  void check_compatible(const FourierForm& o) const;
  void lower_truncation(int N);
  int rank_ = 0, N_ = 0;
  std::map<FormKey, QIota> terms_;
};

// E(lambda', lambda_i) for the character indices
class TorusContext {
 public:
  static TorusContext from_abelian(const PolarizedAbelianData& data);
  // E(lambda', lambda_i) = n_i
  static TorusContext standard(int rank);
  int rank() const { return rank_; }
  std::vector<Rational> pairing(const std::vector<long>& chi) const;
  // numerical exp(2 pi i E(lambda', u))
  std::complex<double> character(const std::vector<long>& chi, const Eigen::VectorXd& u) const;

 private:
  int rank_ = 0;
  RationalMatrix P_;  // row i: E(., lambda_i) in character coordinates
};

FourierForm exterior_d(const TorusContext& ctx, const FourierForm& f);
// nu = sum_i dx^i (x) lambda_i
FourierForm nu_form(int rank, int N);
FourierForm log_connection(const TorusContext& ctx, const FourierForm& f);
// interior product with the constant field sum v^i d/dx^i
FourierForm contract(const FourierForm& f, const std::vector<GaussRational>& v);
FourierForm lie_derivative(const TorusContext& ctx, const FourierForm& f, const std::vector<GaussRational>& v);
// omega = (iota / 2) sum_{i<j} E_ij dx^i dx^j
FourierForm polarization_form(const PolarizedAbelianData& data, int N = 0);
FourierForm wedge_power(const FourierForm& f, int k);

// components by (mask, word) after evaluating characters at u and iota = 2 pi i
std::map<std::pair<std::uint32_t, std::vector<int>>, std::complex<double>> evaluate(const TorusContext& ctx,
                                                                                    const FourierForm& f,
                                                                                    const Eigen::VectorXd& u);

int popcount(std::uint32_t m);
// sign of dx^a dx^b -> dx^{a|b}, 0 on overlap
int wedge_sign(std::uint32_t a, std::uint32_t b);

}  // namespace polylog
