#include "polylog/lattice.hpp"

#include <cmath>

namespace polylog {
namespace {
constexpr double kPi = 3.14159265358979323846;

RationalMatrix to_rational(const IntMatrix& E) {
  RationalMatrix m(static_cast<int>(E.size()), E.empty() ? 0 : static_cast<int>(E[0].size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = Rational(E[i][j]);
  return m;
}

double frac_part(const Rational& q) {
  Rational r = q;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  r -= fl;
  return r.get_d();
}
}  // namespace

double PolarizedAbelianData::q_scale() const { return norm_ == QNormalization::Polarization ? kPi : 1.0; }

PolarizedAbelianData PolarizedAbelianData::from_rational(int d, const RationalMatrix& J, const IntMatrix& E,
                                                         QNormalization norm) {
  PolarizedAbelianData p;
  p.d_ = d;
  if (J.rows() != 2 * d || J.cols() != 2 * d) fail(ErrorCode::ConfigInvalid, "J must be 2d x 2d");
  p.J_exact_ = J;
  auto v = J.to_doubles();
  p.J_ = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(v.data(), 2 * d, 2 * d);
  p.E_int_ = E;
  p.norm_ = norm;
  p.validate_and_build();
  return p;
}

PolarizedAbelianData PolarizedAbelianData::from_numeric(int d, const Eigen::MatrixXd& J, const IntMatrix& E,
                                                        QNormalization norm) {
  PolarizedAbelianData p;
  p.d_ = d;
  if (J.rows() != 2 * d || J.cols() != 2 * d) fail(ErrorCode::ConfigInvalid, "J must be 2d x 2d");
  p.J_ = J;
  p.E_int_ = E;
  p.norm_ = norm;
  p.validate_and_build();
  return p;
}

PolarizedAbelianData PolarizedAbelianData::from_period_matrix(int d, const Eigen::MatrixXcd& Pi, const IntMatrix& E,
                                                              QNormalization norm) {
  if (Pi.rows() != d || Pi.cols() != 2 * d) fail(ErrorCode::ConfigInvalid, "period matrix must be d x 2d");
  Eigen::MatrixXd M(2 * d, 2 * d);
  M.topRows(d) = Pi.real();
  M.bottomRows(d) = Pi.imag();
  if (std::abs(M.determinant()) < 1e-12) fail(ErrorCode::ConfigInvalid, "period matrix columns are not a real basis");
  Eigen::MatrixXd J0 = Eigen::MatrixXd::Zero(2 * d, 2 * d);
  J0.topRightCorner(d, d) = -Eigen::MatrixXd::Identity(d, d);
  J0.bottomLeftCorner(d, d) = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd J = M.inverse() * J0 * M;
  return from_numeric(d, J, E, norm);
}

void PolarizedAbelianData::validate_and_build() {
  const int n = 2 * d_;
  if (d_ < 1) fail(ErrorCode::ConfigInvalid, "d must be positive");
  if (static_cast<int>(E_int_.size()) != n) fail(ErrorCode::ConfigInvalid, "E must be 2d x 2d");
  for (auto& row : E_int_)
    if (static_cast<int>(row.size()) != n) fail(ErrorCode::ConfigInvalid, "E must be 2d x 2d");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (E_int_[i][j] != -E_int_[j][i]) fail(ErrorCode::ConfigInvalid, "E must be alternating");
  E_exact_ = to_rational(E_int_);
  if (sgn(E_exact_.determinant()) == 0) fail(ErrorCode::SingularPolarization, "det E = 0");
  E_.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) E_(i, j) = double(E_int_[i][j]);

  if (J_exact_) {
    RationalMatrix sq = (*J_exact_) * (*J_exact_) + RationalMatrix::identity(n);
    if (!sq.is_zero()) fail(ErrorCode::ConfigInvalid, "J^2 != -1");
    RationalMatrix comp = J_exact_->transpose() * E_exact_ * (*J_exact_) - E_exact_;
    if (!comp.is_zero()) fail(ErrorCode::ConfigInvalid, "J is not compatible with E");
    Gexact_ = J_exact_->transpose() * E_exact_;
    if (!(Gexact_->transpose() == *Gexact_)) fail(ErrorCode::ConfigInvalid, "J^T E is not symmetric");
    report_.j_exact = true;
  }
  report_.j_square_residual = (J_ * J_ + Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  double escale = std::max(1.0, E_.cwiseAbs().maxCoeff());
  report_.compatibility_residual = (J_.transpose() * E_ * J_ - E_).cwiseAbs().maxCoeff() / escale;
  if (report_.j_square_residual > 1e-12) fail(ErrorCode::ConfigInvalid, "J^2 != -1 within 1e-12");
  if (report_.compatibility_residual > 1e-12) fail(ErrorCode::ConfigInvalid, "E(Jx, Jy) != E(x, y) within 1e-12");

  Eigen::MatrixXd S = J_.transpose() * E_;
  S = 0.5 * (S + S.transpose());
  G_ = q_scale() * S;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G_);
  report_.min_q_eigenvalue = es.eigenvalues().minCoeff();
  if (!(report_.min_q_eigenvalue > 0))
    fail(ErrorCode::ConventionViolation, "E(J x, x) is not positive; the orientation of J and E disagree");
}

Eigen::MatrixXd PolarizedAbelianData::dual_basis() const { return E_.transpose().inverse(); }

DualLattice dual_lattice(const PolarizedAbelianData& data) {
  const RationalMatrix& E = data.E_exact();
  Rational det = E.determinant();
  if (sgn(det) == 0) fail(ErrorCode::SingularPolarization, "det E = 0");
  DualLattice out;
  out.basis = E.transpose().inverse();
  std::vector<std::vector<Integer>> a(E.rows(), std::vector<Integer>(E.cols()));
  for (int i = 0; i < E.rows(); ++i)
    for (int j = 0; j < E.cols(); ++j) a[i][j] = Integer(data.E_int()[i][j]);
  out.smith = smith_invariants(a);
  Integer prod = 1;
  for (auto& s : out.smith) prod *= s;
  out.kappa = abs(det.get_num());
  if (prod != out.kappa) fail(ErrorCode::SingularPolarization, "Smith normal form disagrees with det E");
  return out;
}

HodgeVector hodge_split(const PolarizedAbelianData& data, const Eigen::VectorXd& lambda) {
  if (lambda.size() != data.rank()) fail(ErrorCode::ArityMismatch, "vector has wrong length");
  const std::complex<double> I(0, 1);
  Eigen::VectorXcd l = lambda.cast<std::complex<double>>();
  Eigen::VectorXcd jl = (data.J() * lambda).cast<std::complex<double>>();
  return {0.5 * (l - I * jl), 0.5 * (l + I * jl)};
}

double q_form(const PolarizedAbelianData& data, const Eigen::VectorXd& lambda) {
  if (lambda.size() != data.rank()) fail(ErrorCode::ArityMismatch, "vector has wrong length");
  double q = lambda.dot(data.q_matrix() * lambda);
  if (q < 0 || (q == 0 && lambda.norm() > 0))
    fail(ErrorCode::ConventionViolation, "negative Q value for a nonzero vector");
  return q;
}

bool in_dual_lattice(const PolarizedAbelianData& data, const std::vector<Rational>& v) {
  const int n = data.rank();
  if (static_cast<int>(v.size()) != n) fail(ErrorCode::ArityMismatch, "vector has wrong length");
  for (int j = 0; j < n; ++j) {
    Rational s = 0;
    for (int i = 0; i < n; ++i) s += v[i] * Rational(data.E_int()[i][j]);
    if (s.get_den() != 1) return false;
  }
  return true;
}

std::complex<double> character(const PolarizedAbelianData& data, const std::vector<Rational>& v,
                               const std::vector<Rational>& u) {
  if (!in_dual_lattice(data, v)) fail(ErrorCode::NotInDualLattice, "vector is not in the dual lattice");
  if (static_cast<int>(u.size()) != data.rank()) fail(ErrorCode::ArityMismatch, "point has wrong length");
  Rational phase = 0;
  for (int i = 0; i < data.rank(); ++i)
    for (int j = 0; j < data.rank(); ++j) phase += v[i] * Rational(data.E_int()[i][j]) * u[j];
  double f = frac_part(phase);
  return {std::cos(2 * kPi * f), std::sin(2 * kPi * f)};
}

std::complex<double> character(const PolarizedAbelianData& data, const std::vector<Rational>& v,
                               const Eigen::VectorXd& u) {
  if (!in_dual_lattice(data, v)) fail(ErrorCode::NotInDualLattice, "vector is not in the dual lattice");
  if (u.size() != data.rank()) fail(ErrorCode::ArityMismatch, "point has wrong length");
  // E^T v is integral, so the phase is (E^T v) . u
  double phase = 0;
  for (int j = 0; j < data.rank(); ++j) {
    Rational s = 0;
    for (int i = 0; i < data.rank(); ++i) s += v[i] * Rational(data.E_int()[i][j]);
    phase += s.get_d() * u[j];
  }
  phase -= std::floor(phase);
  return {std::cos(2 * kPi * phase), std::sin(2 * kPi * phase)};
}

LatticeGeometry side_geometry(const PolarizedAbelianData& data, LatticeSide side) {
  const int n = data.rank();
  Eigen::MatrixXd B = side == LatticeSide::Lambda ? Eigen::MatrixXd::Identity(n, n) : data.dual_basis();
  return LatticeGeometry(B, data.q_matrix());
}

std::vector<LatticeVector> enumerate_shell(const PolarizedAbelianData& data, LatticeSide side, double R,
                                           std::size_t cap) {
  if (!(R > 0)) fail(ErrorCode::OutOfRange, "shell radius must be positive");
  LatticeGeometry g = side_geometry(data, side);
  if (g.estimated_count(R) > 4.0 * double(cap) + 100)
    fail(ErrorCode::ShellTooLarge, "shell would contain more than " + std::to_string(cap) + " vectors");
  std::vector<LatticeVector> out;
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(g.rank());
  g.visit(zero, 0.0, threshold_of(R), [&](const int* n, double q) {
    if (out.size() >= cap) fail(ErrorCode::ShellTooLarge, "shell exceeds " + std::to_string(cap) + " vectors");
    LatticeVector v;
    v.coeffs.assign(n, n + g.rank());
    Eigen::VectorXd c(g.rank());
    for (int i = 0; i < g.rank(); ++i) c[i] = n[i];
    v.ambient = g.basis() * c;
    v.q = q;
    out.push_back(std::move(v));
  });
  return out;
}

double min_nonzero_q(const PolarizedAbelianData& data, LatticeSide side) {
  LatticeGeometry g = side_geometry(data, side);
  double R = g.sigma_min() > 0 ? g.sigma_min() : 1e-3;
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(g.rank());
  for (int it = 0; it < 200; ++it, R *= 2) {
    double best = -1;
    g.visit(zero, 0.0, threshold_of(R), [&](const int*, double q) {
      if (best < 0 || q < best) best = q;
    });
    if (best > 0) return best;
  }
  fail(ErrorCode::BudgetExceeded, "could not locate a nonzero lattice vector");
}

}  // namespace polylog
