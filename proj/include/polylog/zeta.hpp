#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "polylog/lattice.hpp"
#include "polylog/theta.hpp"

namespace polylog {

enum class ZetaRegime { Direct, Accelerated };
enum class ZetaMode { Direct, Accelerated, Auto };

std::string regime_name(ZetaRegime r);
ZetaMode parse_zeta_mode(const std::string& s);

// K(Q, P, s) = sum over the summation lattice minus 0 of chi P / Q^s
struct ZetaValue {
  std::vector<cplx> value;
  cplx s;
  ZetaRegime regime = ZetaRegime::Direct;
  double error_bound = 0;
  double split_A = 0;
  std::size_t points = 0;
  double radius = 0;       // summation-side Q radius
  double dual_radius = 0;  // Poisson side, accelerated only
  bool two_sided_tail = false;
};

// 2 Re s - deg P > rank
bool absolutely_convergent(const VectorPolynomial& P, int rank, cplx s);

ZetaValue kzeta_direct(const PairedLattice& pl, const VectorPolynomial& P, const TorusPoint& u, cplx s, double tol,
                       const SumOptions& opt = {});
ZetaValue kzeta_accelerated(const PairedLattice& pl, const VectorPolynomial& P, const TorusPoint& u, cplx s, double A,
                            double tol, const SumOptions& opt = {});
// Auto: direct when absolutely convergent and cheap, accelerated otherwise
ZetaValue kzeta(const PairedLattice& pl, const VectorPolynomial& P, const TorusPoint& u, cplx s, double tol,
                ZetaMode mode = ZetaMode::Auto, double A = 1.0, const SumOptions& opt = {});

// Summation over Lambda' with character pairing against u in Lambda (x) R / Lambda.
ZetaValue kzeta_direct(const PolarizedAbelianData& data, const VectorPolynomial& P, const TorusPoint& u, cplx s,
                       double tol, const SumOptions& opt = {});
ZetaValue kzeta_accelerated(const PolarizedAbelianData& data, const VectorPolynomial& P, const TorusPoint& u, cplx s,
                            double A, double tol, const SumOptions& opt = {});

// Euclidean distance from u to the Poisson-side lattice (the one u lives modulo)
double torus_distance(const PairedLattice& pl, const Eigen::VectorXd& u);

struct ScanRow {
  Eigen::VectorXd u;
  std::vector<cplx> value;
  // gradient[i][c]: d/du_i of component c at steps h, h/2, h/4
  std::vector<std::vector<cplx>> grad, grad_half, grad_quarter;
  double grad_norm = 0;
  double stability_ratio = 0;   // |g_h| / |g_{h/2}|
  double richardson_ratio = 0;  // |g_h - g_{h/2}| / |g_{h/2} - g_{h/4}|
  bool finite = true;
};

using TorusFunction = std::function<std::vector<cplx>(const TorusPoint&)>;

// Central-difference probe of f on a grid; every point must sit 10 h away from the lattice.
std::vector<ScanRow> fd_scan(const PairedLattice& pl, const TorusFunction& f, const std::vector<Eigen::VectorXd>& grid,
                             double h);

std::vector<ScanRow> smoothness_scan(const PairedLattice& pl, const VectorPolynomial& P, cplx s,
                                     const std::vector<Eigen::VectorXd>& grid, double fd_step, double tol = 1e-12,
                                     double A = 1.0, const SumOptions& opt = {});

// (i + 0.3)/n, (j + 0.6)/n, ... in Poisson-side lattice coordinates, mapped to ambient
std::vector<Eigen::VectorXd> offset_grid(const PairedLattice& pl, int n);

}  // namespace polylog
