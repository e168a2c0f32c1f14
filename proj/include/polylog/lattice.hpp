#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

#include "polylog/exact.hpp"
#include "polylog/lattice_sum.hpp"

namespace polylog {

using IntMatrix = std::vector<std::vector<long>>;

enum class LatticeSide { Lambda, DualLambda };

// polarization: Q = pi E(J x, x); unit: Q = E(J x, x)
enum class QNormalization { Polarization, Unit };

struct ConventionReport {
  double j_square_residual = 0;
  double compatibility_residual = 0;
  double min_q_eigenvalue = 0;
  bool j_exact = false;
};

class PolarizedAbelianData {
 public:
  static PolarizedAbelianData from_rational(int d, const RationalMatrix& J, const IntMatrix& E,
                                            QNormalization norm = QNormalization::Polarization);
  static PolarizedAbelianData from_numeric(int d, const Eigen::MatrixXd& J, const IntMatrix& E,
                                           QNormalization norm = QNormalization::Polarization);
  // Pi is d x 2d; column j is the image of the j-th lattice basis vector in C^d.
  static PolarizedAbelianData from_period_matrix(int d, const Eigen::MatrixXcd& Pi, const IntMatrix& E,
                                                 QNormalization norm = QNormalization::Polarization);

  int d() const { return d_; }
  int rank() const { return 2 * d_; }
  const Eigen::MatrixXd& J() const { return J_; }
  const std::optional<RationalMatrix>& J_exact() const { return J_exact_; }
  const IntMatrix& E_int() const { return E_int_; }
  const RationalMatrix& E_exact() const { return E_exact_; }
  const Eigen::MatrixXd& E() const { return E_; }
  QNormalization normalization() const { return norm_; }
  double q_scale() const;
  // Q(x) = x^T G x
  const Eigen::MatrixXd& q_matrix() const { return G_; }
  // exact J^T E (so Q = q_scale * x^T (J^T E) x), present when J is exact
  const std::optional<RationalMatrix>& q_matrix_exact() const { return Gexact_; }
  const ConventionReport& conventions() const { return report_; }
  Eigen::MatrixXd dual_basis() const;  // columns: E^{-T}

 private:
  void validate_and_build();
  int d_ = 0;
  Eigen::MatrixXd J_, E_, G_;
  std::optional<RationalMatrix> J_exact_, Gexact_;
  IntMatrix E_int_;
  RationalMatrix E_exact_;
  QNormalization norm_ = QNormalization::Polarization;
  ConventionReport report_;
};

struct DualLattice {
  RationalMatrix basis;  // columns generate the dual lattice
  Integer kappa;
  std::vector<Integer> smith;
};

struct HodgeVector {
  Eigen::VectorXcd minus10;
  Eigen::VectorXcd zero_minus1;
};

struct LatticeVector {
  std::vector<long> coeffs;
  Eigen::VectorXd ambient;
  double q = 0;
};

DualLattice dual_lattice(const PolarizedAbelianData& data);
HodgeVector hodge_split(const PolarizedAbelianData& data, const Eigen::VectorXd& lambda);
double q_form(const PolarizedAbelianData& data, const Eigen::VectorXd& lambda);
std::complex<double> character(const PolarizedAbelianData& data, const std::vector<Rational>& dual_vector,
                               const Eigen::VectorXd& u);
std::complex<double> character(const PolarizedAbelianData& data, const std::vector<Rational>& dual_vector,
                               const std::vector<Rational>& u);
// true when E^T lambda' is integral
bool in_dual_lattice(const PolarizedAbelianData& data, const std::vector<Rational>& dual_vector);

LatticeGeometry side_geometry(const PolarizedAbelianData& data, LatticeSide side);
std::vector<LatticeVector> enumerate_shell(const PolarizedAbelianData& data, LatticeSide side, double R,
                                           std::size_t cap = 10'000'000);
double min_nonzero_q(const PolarizedAbelianData& data, LatticeSide side);

}  // namespace polylog
