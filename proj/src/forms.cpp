#include "polylog/forms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace polylog {
namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<int> merge_words(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> w;
  w.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(w));
  return w;
}
}  // namespace

int popcount(std::uint32_t m) { return __builtin_popcount(m); }

int wedge_sign(std::uint32_t a, std::uint32_t b) {
  if (a & b) return 0;
  // count pairs (i in a, j in b) with i > j
  int inv = 0;
  for (std::uint32_t x = b; x; x &= x - 1) {
    int j = __builtin_ctz(x);
    inv += popcount(a >> (j + 1));
  }
  return (inv & 1) ? -1 : 1;
}

QIota::QIota(GaussRational c, int power) {
  if (!c.is_zero()) c_[power] = std::move(c);
}

QIota& QIota::operator+=(const QIota& o) {
  for (auto& [k, v] : o.c_) {
    auto it = c_.find(k);
    if (it == c_.end()) {
      c_[k] = v;
    } else {
      it->second += v;
      if (it->second.is_zero()) c_.erase(it);
    }
  }
  return *this;
}

QIota& QIota::operator-=(const QIota& o) {
  for (auto& [k, v] : o.c_) {
    auto it = c_.find(k);
    if (it == c_.end()) {
      c_[k] = -v;
    } else {
      it->second -= v;
      if (it->second.is_zero()) c_.erase(it);
    }
  }
  return *this;
}

QIota operator*(const QIota& a, const QIota& b) {
  QIota r;
  for (auto& [i, x] : a.c_)
    for (auto& [j, y] : b.c_) r += QIota(x * y, i + j);
  return r;
}

bool operator==(const QIota& a, const QIota& b) { return a.c_ == b.c_; }

std::complex<double> QIota::to_complex() const {
  std::complex<double> s = 0;
  const std::complex<double> io(0, 2 * kPi);
  for (auto& [k, v] : c_) s += v.to_complex() * std::pow(io, k);
  return s;
}

std::string QIota::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, v] : c_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << polylog::to_string(v) << ")";
    if (k != 0) os << "*iota^" << k;
  }
  return os.str();
}

bool FormKey::operator<(const FormKey& o) const {
  if (mask != o.mask) return mask < o.mask;
  if (word != o.word) return word < o.word;
  return chi < o.chi;
}

FourierForm::FourierForm(int rank, int N) : rank_(rank), N_(N) {
  if (rank < 0 || rank > kMaxRank) fail(ErrorCode::TruncationOverflow, "torus rank above the exterior-degree cap");
  if (N < 0 || N > kMaxTruncation) fail(ErrorCode::TruncationOverflow, "symmetric truncation level above the cap");
}

FourierForm FourierForm::monomial(int rank, int N, std::vector<long> chi, std::uint32_t mask, std::vector<int> word,
                                  const QIota& c) {
  FourierForm f(rank, N);
  if (static_cast<int>(chi.size()) != rank) fail(ErrorCode::ArityMismatch, "character index has wrong length");
  if (rank < 32 && (mask >> rank) != 0) fail(ErrorCode::OutOfRange, "exterior index beyond the torus dimension");
  for (int l : word)
    if (l < 0 || l >= rank) fail(ErrorCode::OutOfRange, "symmetric letter beyond the lattice basis");
  std::sort(word.begin(), word.end());
  f.add({std::move(chi), mask, std::move(word)}, c);
  return f;
}

FourierForm FourierForm::constant(int rank, int N, const QIota& c) {
  return monomial(rank, N, std::vector<long>(rank, 0), 0, {}, c);
}

void FourierForm::add(FormKey key, const QIota& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(key.word.size()) > N_) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    if (terms_.size() >= kMaxTerms) fail(ErrorCode::TruncationOverflow, "form exceeds the term cap");
    terms_.emplace(std::move(key), c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void FourierForm::check_compatible(const FourierForm& o) const {
  if (o.rank_ != rank_) fail(ErrorCode::ArityMismatch, "forms live on different tori");
}

void FourierForm::lower_truncation(int N) {
  if (N >= N_) return;
  N_ = N;
  for (auto it = terms_.begin(); it != terms_.end();)
    it = static_cast<int>(it->first.word.size()) > N_ ? terms_.erase(it) : std::next(it);
}

FourierForm& FourierForm::operator+=(const FourierForm& o) {
  check_compatible(o);
  lower_truncation(o.N_);
  for (auto& [k, v] : o.terms_) add(k, v);
  return *this;
}

FourierForm& FourierForm::operator-=(const FourierForm& o) {
  check_compatible(o);
  lower_truncation(o.N_);
  for (auto& [k, v] : o.terms_) add(k, -v);
  return *this;
}

bool operator==(const FourierForm& a, const FourierForm& b) { return a.rank_ == b.rank_ && a.terms_ == b.terms_; }

FourierForm FourierForm::scaled(const QIota& c) const {
  FourierForm f(rank_, N_);
  for (auto& [k, v] : terms_) f.add(k, v * c);
  return f;
}

FourierForm FourierForm::wedge(const FourierForm& o) const {
  check_compatible(o);
  FourierForm f(rank_, std::min(N_, o.N_));
  for (auto& [ka, va] : terms_)
    for (auto& [kb, vb] : o.terms_) {
      int sg = wedge_sign(ka.mask, kb.mask);
      if (sg == 0) continue;
      if (static_cast<int>(ka.word.size() + kb.word.size()) > f.N_) continue;
      FormKey k;
      k.chi.resize(rank_);
      for (int i = 0; i < rank_; ++i) k.chi[i] = ka.chi[i] + kb.chi[i];
      k.mask = ka.mask | kb.mask;
      k.word = merge_words(ka.word, kb.word);
      QIota c = va * vb;
      f.add(std::move(k), sg > 0 ? c : -c);
    }
  return f;
}

int FourierForm::degree() const {
  int d = -1;
  for (auto& [k, v] : terms_) {
    int p = popcount(k.mask);
    if (d == -1)
      d = p;
    else if (d != p)
      return -1;
  }
  return d;
}

std::string FourierForm::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, v] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "[" << v.to_string() << "]";
    bool trivial = std::all_of(k.chi.begin(), k.chi.end(), [](long x) { return x == 0; });
    if (!trivial) {
      os << " chi(";
      for (std::size_t i = 0; i < k.chi.size(); ++i) os << (i ? "," : "") << k.chi[i];
      os << ")";
    }
    for (int i = 0; i < rank_; ++i)
      if (k.mask >> i & 1u) os << " dx" << i + 1;
    if (!k.word.empty()) {
      os << " (x) ";
      for (std::size_t i = 0; i < k.word.size(); ++i) os << (i ? "." : "") << "l" << k.word[i] + 1;
    }
  }
  return os.str();
}

TorusContext TorusContext::from_abelian(const PolarizedAbelianData& data) {
  const int n = data.rank();
  RationalMatrix Einv;
  try {
    Einv = data.E_exact().inverse();
  } catch (const std::domain_error&) {
    fail(ErrorCode::SingularPolarization, "det E = 0");
  }
  // lambda' = E^{-T} n, E(lambda', lambda_i) = n^T E^{-1} E e_i
  RationalMatrix P = (Einv * data.E_exact()).transpose();
  TorusContext c;
  c.rank_ = n;
  c.P_ = P;
  return c;
}

TorusContext TorusContext::standard(int rank) {
  TorusContext c;
  c.rank_ = rank;
  c.P_ = RationalMatrix::identity(rank);
  return c;
}

std::vector<Rational> TorusContext::pairing(const std::vector<long>& chi) const {
  std::vector<Rational> out(rank_);
  for (int i = 0; i < rank_; ++i) {
    Rational s = 0;
    for (int k = 0; k < rank_; ++k)
      if (chi[k] != 0) s += P_(i, k) * Rational(chi[k]);
    out[i] = s;
  }
  return out;
}

std::complex<double> TorusContext::character(const std::vector<long>& chi, const Eigen::VectorXd& u) const {
  auto p = pairing(chi);
  double f = 0;
  for (int i = 0; i < rank_; ++i) f += p[i].get_d() * u[i];
  f -= std::floor(f);
  return std::polar(1.0, 2 * kPi * f);
}

FourierForm exterior_d(const TorusContext& ctx, const FourierForm& f) {
  if (ctx.rank() != f.rank()) fail(ErrorCode::ArityMismatch, "form and torus ranks differ");
  FourierForm out(f.rank(), f.truncation());
  for (auto& [k, v] : f.terms()) {
    if (std::all_of(k.chi.begin(), k.chi.end(), [](long x) { return x == 0; })) continue;
    auto p = ctx.pairing(k.chi);
    QIota iv = v * QIota::iota();
    for (int i = 0; i < f.rank(); ++i) {
      if (sgn(p[i]) == 0) continue;
      std::uint32_t bit = 1u << i;
      int sg = wedge_sign(bit, k.mask);
      if (sg == 0) continue;
      FormKey nk{k.chi, k.mask | bit, k.word};
      QIota c = iv * QIota(GaussRational(p[i]));
      out.add(std::move(nk), sg > 0 ? c : -c);
    }
  }
  return out;
}

FourierForm nu_form(int rank, int N) {
  FourierForm nu(rank, N);
  for (int i = 0; i < rank; ++i) nu.add({std::vector<long>(rank, 0), 1u << i, {i}}, QIota(1));
  return nu;
}

FourierForm log_connection(const TorusContext& ctx, const FourierForm& f) {
  if (f.truncation() < 1) fail(ErrorCode::TruncationOverflow, "connection needs truncation level at least 1");
  FourierForm nu = nu_form(f.rank(), f.truncation());
  return exterior_d(ctx, f) + nu.wedge(f);
}

FourierForm contract(const FourierForm& f, const std::vector<GaussRational>& v) {
  if (static_cast<int>(v.size()) != f.rank()) fail(ErrorCode::ArityMismatch, "vector field has wrong length");
  FourierForm out(f.rank(), f.truncation());
  for (auto& [k, c] : f.terms()) {
    int pos = 0;
    for (int i = 0; i < f.rank(); ++i) {
      if (!(k.mask >> i & 1u)) continue;
      if (!v[i].is_zero()) {
        FormKey nk{k.chi, k.mask & ~(1u << i), k.word};
        QIota t = c * QIota(v[i]);
        out.add(std::move(nk), (pos & 1) ? -t : t);
      }
      ++pos;
    }
  }
  return out;
}

FourierForm lie_derivative(const TorusContext& ctx, const FourierForm& f, const std::vector<GaussRational>& v) {
  return exterior_d(ctx, contract(f, v)) + contract(exterior_d(ctx, f), v);
}

FourierForm polarization_form(const PolarizedAbelianData& data, int N) {
  const int n = data.rank();
  FourierForm w(n, N);
  const auto& E = data.E_exact();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (sgn(E(i, j)) == 0) continue;
      w.add({std::vector<long>(n, 0), (1u << i) | (1u << j), {}}, QIota(GaussRational(E(i, j) / 2), 1));
    }
  return w;
}

FourierForm wedge_power(const FourierForm& f, int k) {
  if (k < 0) fail(ErrorCode::OutOfRange, "negative wedge power");
  FourierForm out = FourierForm::constant(f.rank(), f.truncation(), QIota(1));
  for (int i = 0; i < k; ++i) out = out.wedge(f);
  return out;
}

std::map<std::pair<std::uint32_t, std::vector<int>>, std::complex<double>> evaluate(const TorusContext& ctx,
                                                                                    const FourierForm& f,
                                                                                    const Eigen::VectorXd& u) {
  std::map<std::pair<std::uint32_t, std::vector<int>>, std::complex<double>> out;
  for (auto& [k, v] : f.terms()) out[{k.mask, k.word}] += ctx.character(k.chi, u) * v.to_complex();
  return out;
}

}  // namespace polylog
