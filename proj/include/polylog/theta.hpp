#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "polylog/exact.hpp"
#include "polylog/gauss.hpp"
#include "polylog/lattice.hpp"
#include "polylog/lattice_sum.hpp"
#include "polylog/poly.hpp"

namespace polylog {

// A point of R^r modulo the dual-side lattice, given in ambient coordinates.
struct TorusPoint {
  Eigen::VectorXd value;
  std::optional<std::vector<Rational>> exact;

  static TorusPoint from_rational(const std::vector<Rational>& u);
  static TorusPoint from_double(const Eigen::VectorXd& u);
  int size() const { return static_cast<int>(value.size()); }
};

// exp(2 pi i n . c) for integer n and a phase vector c, exact when c is rational.
class CharacterTable {
 public:
  CharacterTable() = default;
  static CharacterTable exact(const std::vector<Rational>& c);
  static CharacterTable numeric(const Eigen::VectorXd& c);

  bool trivial() const { return trivial_; }
  cplx operator()(const int* n) const;
  int dim() const { return static_cast<int>(phase_.size()); }

 private:
  bool trivial_ = true, exact_ = false;
  long den_ = 1;
  std::vector<long> num_;
  std::vector<cplx> roots_;
  std::vector<double> phase_;
};

struct ResolvedShift {
  Eigen::VectorXd ambient;    // reduced lift h of u
  Eigen::VectorXd dual_coeffs;  // h in dual-lattice coordinates, in [0, 1)
  bool on_lattice = false;
  CharacterTable character;   // on the direct side
};

// Summation lattice L with form Q, kernel exp(2 pi i x^T M p), and its Poisson partner.
class PairedLattice {
 public:
  static PairedLattice from_abelian(const PolarizedAbelianData& data, LatticeSide side = LatticeSide::DualLambda);
  // Z^r with Q(n) = n^T G n and the standard kernel
  static PairedLattice standard(const Eigen::MatrixXd& G);
  static PairedLattice general(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& G, const Eigen::MatrixXd& M);

  int rank() const { return direct_.rank(); }
  const LatticeGeometry& direct() const { return direct_; }
  const LatticeGeometry& dual() const { return dual_; }
  const Eigen::MatrixXd& pairing() const { return M_; }
  double disc_factor() const { return disc_; }
  ResolvedShift resolve(const TorusPoint& u) const;
  std::string description;

 private:
  PairedLattice(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& G, const Eigen::MatrixXd& M);
  LatticeGeometry direct_, dual_;
  Eigen::MatrixXd M_;
  std::optional<std::vector<std::vector<long>>> coeff_map_;  // integral B^T M when available
  double disc_ = 1;
};

struct ThetaResult {
  std::vector<cplx> value;
  double tail_bound = 0;
  std::size_t shells = 0;
  std::size_t points = 0;
  double radius = 0;
  std::string mode;
};

ThetaResult theta_direct(const PairedLattice& pl, const VectorPolynomial& P, const TorusPoint& u, double t, double tol,
                         const SumOptions& opt = {});
ThetaResult theta_transformed(const PairedLattice& pl, const VectorPolynomial& P, const TorusPoint& u, double t,
                              double tol, const SumOptions& opt = {});
// direct for t >= 1, transformed below
ThetaResult theta_eval(const PairedLattice& pl, const VectorPolynomial& P, const TorusPoint& u, double t, double tol,
                       const SumOptions& opt = {});
// |direct - transformed| with both sides truncated at the given Q-radii
double poisson_check(const PairedLattice& pl, const VectorPolynomial& P, double t, const TorusPoint& h,
                     double R_direct, double R_dual, const SumOptions& opt = {});

double vector_norm(const std::vector<cplx>& v);

}  // namespace polylog
