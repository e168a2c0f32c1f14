#include "polylog/bm.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <map>

#include "polylog/error.hpp"
#include "polylog/lattice_sum.hpp"

namespace polylog {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

int bits_above(std::uint32_t mask, int i) { return __builtin_popcount(mask >> (i + 1)); }

// constant (2d-1)-forms dconj(z)[j] dz, by mask over the real coordinates
std::vector<std::map<std::uint32_t, cplx>> build_frames(int d) {
  std::vector<std::map<std::uint32_t, cplx>> frames;
  for (int j = 0; j < d; ++j) {
    std::vector<std::vector<cplx>> factors;
    for (int l = 0; l < d; ++l) {
      if (l == j) continue;
      std::vector<cplx> f(2 * d, 0.0);
      f[2 * l] = 1;
      f[2 * l + 1] = cplx(0, -1);
      factors.push_back(f);
    }
    for (int l = 0; l < d; ++l) {
      std::vector<cplx> f(2 * d, 0.0);
      f[2 * l] = 1;
      f[2 * l + 1] = cplx(0, 1);
      factors.push_back(f);
    }
    std::map<std::uint32_t, cplx> acc{{0u, 1.0}};
    for (auto& f : factors) {
      std::map<std::uint32_t, cplx> next;
      for (auto& [m, c] : acc)
        for (int i = 0; i < 2 * d; ++i) {
          if (f[i] == 0.0 || (m >> i & 1u)) continue;
          double s = bits_above(m, i) % 2 ? -1.0 : 1.0;
          next[m | (1u << i)] += s * c * f[i];
        }
      acc = std::move(next);
    }
    frames.push_back(std::move(acc));
  }
  return frames;
}

constexpr int kMaxD = 4;

const std::vector<std::map<std::uint32_t, cplx>>& kernel_frames(int d) {
  static const auto all = [] {
    std::vector<std::vector<std::map<std::uint32_t, cplx>>> v(kMaxD + 1);
    for (int k = 1; k <= kMaxD; ++k) v[k] = build_frames(k);
    return v;
  }();
  return all[d];
}

cplx kernel_constant(int d) {
  double f = std::tgamma(double(d));
  cplx c = f / std::pow(cplx(0, 2 * kPi), d);
  return (d * (d - 1) / 2) % 2 ? -c : c;
}

std::vector<cplx> beta_raw(int d, const cplx* z) {
  double n2 = 0;
  for (int j = 0; j < d; ++j) n2 += std::norm(z[j]);
  if (n2 == 0.0) fail(ErrorCode::OriginSingularity, "beta is singular at the origin");
  const auto& frames = kernel_frames(d);
  const std::uint32_t full = (1u << (2 * d)) - 1;
  std::vector<cplx> b(2 * d, 0.0);
  const cplx cd = kernel_constant(d) / std::pow(n2, d);
  for (int j = 0; j < d; ++j) {
    cplx w = cd * std::conj(z[j]) * (j % 2 ? -1.0 : 1.0);
    for (auto& [m, c] : frames[j]) {
      int k = __builtin_ctz(full & ~m);
      b[k] += w * c;
    }
  }
  return b;
}

std::vector<cplx> beta_at(int d, const Eigen::VectorXd& x) {
  std::vector<cplx> z(d);
  for (int j = 0; j < d; ++j) z[j] = {x[2 * j], x[2 * j + 1]};
  return beta_raw(d, z.data());
}

void check_d(int d) {
  if (d < 1 || d > kMaxD) fail(ErrorCode::OutOfRange, "d must lie in [1, 4]");
}

// sum_k b_k det J_[k] with the boundary orientation sign
double pulled_back(const std::vector<cplx>& b, const Eigen::VectorXd& n, const Eigen::MatrixXd& J, cplx& out) {
  const int m = static_cast<int>(J.rows());
  double orient = 0;
  out = 0;
  for (int k = 0; k < m; ++k) {
    Eigen::MatrixXd minor(m - 1, m - 1);
    for (int i = 0, row = 0; i < m; ++i) {
      if (i == k) continue;
      minor.row(row++) = J.row(i);
    }
    double det = minor.determinant();
    out += b[k] * det;
    orient += (k % 2 ? -1.0 : 1.0) * n[k] * det;
  }
  if (orient < 0) out = -out;
  return orient;
}

cplx circle_rule(double r, int n) {
  NeumaierSum re, im;
  for (int i = 0; i < n; ++i) {
    double t = 2 * kPi * i / n;
    Eigen::VectorXd x(2), nv(2);
    x << r * std::cos(t), r * std::sin(t);
    nv << std::cos(t), std::sin(t);
    Eigen::MatrixXd J(2, 1);
    J << -r * std::sin(t), r * std::cos(t);
    cplx v;
    pulled_back(beta_at(1, x), nv, J, v);
    re.add(v.real());
    im.add(v.imag());
  }
  return cplx(re.value(), im.value()) * (2 * kPi / n);
}

// z1 = r cos(eta) e^{i xi1}, z2 = r sin(eta) e^{i xi2}
cplx hopf_slice(double r, double eta, int n_xi) {
  NeumaierSum re, im;
  const double ce = std::cos(eta), se = std::sin(eta);
  for (int a = 0; a < n_xi; ++a)
    for (int c = 0; c < n_xi; ++c) {
      double p = 2 * kPi * a / n_xi, q = 2 * kPi * c / n_xi;
      Eigen::VectorXd nv(4);
      nv << ce * std::cos(p), ce * std::sin(p), se * std::cos(q), se * std::sin(q);
      Eigen::VectorXd x = r * nv;
      Eigen::MatrixXd J(4, 3);
      J << -r * se * std::cos(p), -r * ce * std::sin(p), 0,
           -r * se * std::sin(p), r * ce * std::cos(p), 0,
           r * ce * std::cos(q), 0, -r * se * std::sin(q),
           r * ce * std::sin(q), 0, r * se * std::cos(q);
      cplx v;
      pulled_back(beta_at(2, x), nv, J, v);
      re.add(v.real());
      im.add(v.imag());
    }
  const double w = 4 * kPi * kPi / (double(n_xi) * n_xi);
  return cplx(re.value(), im.value()) * w;
}

template <int N>
cplx hopf_rule(double r, int panels, int n_xi) {
  cplx total = 0;
  const double h = 0.5 * kPi / panels;
  for (int i = 0; i < panels; ++i) {
    double a = i * h;
    auto fr = [&](double eta) { return hopf_slice(r, eta, n_xi).real(); };
    auto fi = [&](double eta) { return hopf_slice(r, eta, n_xi).imag(); };
    total += cplx(boost::math::quadrature::gauss<double, N>::integrate(fr, a, a + h),
                  boost::math::quadrature::gauss<double, N>::integrate(fi, a, a + h));
  }
  return total;
}
}  // namespace

std::vector<cplx> beta_eval(int d, const Eigen::VectorXcd& z) {
  check_d(d);
  if (z.size() != d) fail(ErrorCode::ArityMismatch, "point has wrong length");
  if (z.norm() == 0.0) fail(ErrorCode::OriginSingularity, "beta is singular at the origin");
  if (z.norm() >= 1.0) fail(ErrorCode::OutOfRange, "point must lie in the unit ball");
  return beta_raw(d, z.data());
}

std::string bm_convention() {
  return "F(z) = (2z, z) into K(zeta, w), zeta - w = z; c_d = (-1)^{d(d-1)/2} (d-1)!/(2 pi i)^d; "
         "orientation dx1 dy1 .. dxd dyd, outward normal first";
}

SphereIntegral sphere_integral(int d, double r, int quad_level) {
  if (d != 1 && d != 2) fail(ErrorCode::OutOfRange, "sphere quadrature supports d = 1, 2");
  if (!(r > 0 && r < 1)) fail(ErrorCode::OutOfRange, "radius must lie in (0, 1)");
  if (quad_level < 1) fail(ErrorCode::QuadratureBudget, "quad_level must be at least 1");
  SphereIntegral out;
  if (d == 1) {
    const double n = 16.0 * quad_level;
    if (n > 1e8) fail(ErrorCode::QuadratureBudget, "too many quadrature nodes");
    int ni = static_cast<int>(n);
    out.value = circle_rule(r, ni);
    out.error_estimate = std::abs(out.value - circle_rule(r, ni / 2));
    out.nodes = static_cast<std::size_t>(ni);
    return out;
  }
  const int panels = quad_level, n_xi = 4 * quad_level;
  const double nodes = 20.0 * panels * n_xi * n_xi;
  if (nodes > 2e7) fail(ErrorCode::QuadratureBudget, "too many quadrature nodes");
  out.value = hopf_rule<20>(r, panels, n_xi);
  out.error_estimate = std::abs(out.value - hopf_rule<10>(r, panels, std::max(2, n_xi / 2)));
  out.nodes = static_cast<std::size_t>(nodes);
  return out;
}

double closedness_residual(int d, const Eigen::VectorXcd& z, double h) {
  check_d(d);
  if (z.size() != d) fail(ErrorCode::ArityMismatch, "point has wrong length");
  const double nz = z.norm();
  if (nz == 0.0) fail(ErrorCode::OriginSingularity, "beta is singular at the origin");
  if (!(h > 0) || h >= nz / 10) fail(ErrorCode::OutOfRange, "step must lie in (0, |z|/10)");
  const int m = 2 * d;
  Eigen::VectorXd x(m);
  for (int j = 0; j < d; ++j) {
    x[2 * j] = z[j].real();
    x[2 * j + 1] = z[j].imag();
  }
  // d(b_k dx^[k]) = (-1)^k d_k b_k dx^all
  cplx div = 0;
  for (int k = 0; k < m; ++k) {
    Eigen::VectorXd p = x, q = x;
    p[k] += h;
    q[k] -= h;
    cplx dk = (beta_at(d, p)[k] - beta_at(d, q)[k]) / (2 * h);
    div += (k % 2 ? -1.0 : 1.0) * dk;
  }
  return std::abs(div);
}

}  // namespace polylog
