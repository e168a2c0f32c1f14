#include "polylog/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

namespace polylog {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;

// Lanczos, g = 7, n = 9.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

cplx lanczos_log_gamma(cplx z) {
  // valid for Re z >= 0.5
  z -= 1.0;
  cplx a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + double(i));
  cplx t = z + 7.5;
  return 0.5 * std::log(2 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

// (e^x - 1)/x
cplx phi1(cplx x) {
  if (std::abs(x) < 1e-5) return 1.0 + x / 2.0 + x * x / 6.0;
  return (std::exp(x) - 1.0) / x;
}

const std::array<double, 64>& zeta_table() {
  static const std::array<double, 64> t = [] {
    std::array<double, 64> z{};
    for (int k = 2; k < 64; ++k) z[k] = boost::math::zeta(double(k));
    return z;
  }();
  return t;
}

// Gamma(a, x) for x < 1 via Gamma(a) - sum_k (-1)^k x^{a+k} / (k! (a+k)),
// with the near-pole term at a = -k* combined analytically.
cplx series_small_x(cplx a, double x) {
  const double lx = std::log(x);
  long kstar = std::lround(-a.real());
  cplx eps = a + double(kstar);
  bool near = kstar >= 0 && std::abs(eps) < 0.25;

  cplx sum = 0.0, comp = 0.0;
  double kfact = 1.0;  // k!
  cplx xpow = std::exp(a * lx);  // x^{a+k}
  for (long k = 0; k < 400; ++k) {
    if (k > 0) {
      kfact *= double(k);
      xpow *= x;
    }
    if (near && k == kstar) continue;
    cplx term = (k % 2 ? -1.0 : 1.0) * xpow / (kfact * (a + double(k)));
    // Neumaier, componentwise
    cplx ysum = sum + term;
    double cr = std::abs(sum.real()) >= std::abs(term.real()) ? (sum.real() - ysum.real()) + term.real()
                                                               : (term.real() - ysum.real()) + sum.real();
    double ci = std::abs(sum.imag()) >= std::abs(term.imag()) ? (sum.imag() - ysum.imag()) + term.imag()
                                                               : (term.imag() - ysum.imag()) + sum.imag();
    comp += cplx(cr, ci);
    sum = ysum;
    if (k > kstar + 2 && std::abs(term) < 1e-18 * std::abs(sum + comp)) break;
  }
  sum += comp;

  if (!near) return gamma(a) - sum;

  // bracket = Gamma(a) - (-1)^{k*} x^eps / (k*! eps)
  //         = (-1)^{k*} [ R0 (e^L - 1)/eps - ln x * phi1(eps ln x) / k*! ]
  // with R(eps) = Gamma(1+eps) / prod_{j<=k*} (j - eps), L = ln(R(eps)/R(0)).
  const auto& zt = zeta_table();
  cplx l_over_eps = -kEulerGamma;
  cplx ep = 1.0;  // eps^{k-1}
  for (int k = 2; k < 64; ++k) {
    ep *= eps;
    cplx term = (k % 2 ? -1.0 : 1.0) * zt[k] * ep / double(k);
    l_over_eps += term;
    if (std::abs(term) < 1e-19) break;
  }
  for (long j = 1; j <= kstar; ++j) {
    cplx r = eps / double(j);
    cplx rp = 1.0;  // r^{m-1}
    for (int mm = 1; mm < 200; ++mm) {
      cplx term = rp / (double(mm) * double(j));
      l_over_eps += term;
      if (std::abs(term) < 1e-19) break;
      rp *= r;
    }
  }
  double r0 = 1.0;
  for (long j = 2; j <= kstar; ++j) r0 /= double(j);
  cplx L = eps * l_over_eps;
  cplx bracket = r0 * l_over_eps * phi1(L) - lx * phi1(eps * lx) * r0;
  if (kstar % 2) bracket = -bracket;
  return bracket - sum;
}

// lower gamma via x^a e^{-x} sum x^n / (a)_{n+1}; requires Re a > 0.
cplx lower_series(cplx a, double x) {
  cplx term = 1.0 / a, sum = term;
  for (int n = 1; n < 2000; ++n) {
    term *= x / (a + double(n));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum * std::exp(a * std::log(x) - x);
}

cplx continued_fraction(cplx a, double x) {
  const double tiny = 1e-300;
  cplx b = x + 1.0 - a;
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i < 100000; ++i) {
    cplx an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    cplx del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return std::exp(a * std::log(x) - x) * h;
  }
  throw std::runtime_error("upper_gamma: continued fraction did not converge");
}

}  // namespace

cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z)) return {std::numeric_limits<double>::infinity(), 0.0};
  if (z.real() < 0.5) return std::log(kPi) - std::log(std::sin(kPi * z)) - lanczos_log_gamma(1.0 - z);
  return lanczos_log_gamma(z);
}

cplx gamma(cplx z) {
  if (is_nonpositive_integer(z)) return {std::numeric_limits<double>::infinity(), 0.0};
  if (z.imag() == 0.0) return std::tgamma(z.real());
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * std::exp(lanczos_log_gamma(1.0 - z)));
  return std::exp(lanczos_log_gamma(z));
}

cplx rgamma(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.imag() == 0.0) return 1.0 / std::tgamma(z.real());
  if (z.real() < 0.5) return std::sin(kPi * z) * std::exp(lanczos_log_gamma(1.0 - z)) / kPi;
  return std::exp(-lanczos_log_gamma(z));
}

cplx upper_gamma(cplx a, double x) {
  if (!(x > 0.0)) throw std::domain_error("upper_gamma requires x > 0");
  if (a.imag() == 0.0 && a.real() > 0.0) return boost::math::tgamma(a.real(), x);
  if (x < 1.0) return series_small_x(a, x);
  if (a.real() > 0.0 && x < a.real() + 1.0) return gamma(a) - lower_series(a, x);
  return continued_fraction(a, x);
}

double upper_gamma_real(double a, double x) { return boost::math::tgamma(a, x); }

}  // namespace polylog
