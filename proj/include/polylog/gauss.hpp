#pragma once

#include <Eigen/Dense>

#include <vector>

#include "polylog/poly.hpp"

namespace polylog {

// Q^vee = M^T G^{-1} M for the kernel exp(2 pi i x^T M p).
Eigen::MatrixXd dual_form(const Eigen::MatrixXd& G, const Eigen::MatrixXd& M);
inline Eigen::MatrixXd dual_form(const Eigen::MatrixXd& G) {
  return dual_form(G, Eigen::MatrixXd::Identity(G.rows(), G.cols()));
}

// t^{-inv_t_power} * poly(w)
struct LaurentTerm {
  int inv_t_power = 0;
  VectorPolynomial poly;
};

// Polynomial factor of the transform of P(x) exp(-t Q(x)): sum_e t^{-e} p_e(w), with w = p + h.
std::vector<LaurentTerm> transform_terms(const VectorPolynomial& P, const Eigen::MatrixXd& G, const Eigen::MatrixXd& M);

struct GaussPolyFactor {
  Eigen::MatrixXd dual_form;
  Eigen::VectorXd shift;
  double prefactor_exponent = 0;  // power of t
  double disc_factor = 1;
  double t = 1;
  std::vector<LaurentTerm> terms;

  std::vector<cplx> poly_factor(const Eigen::VectorXd& w) const;
  // full transform at p: t^{e} disc exp(-pi^2 Q^vee(p+h)/t) poly(p+h)
  std::vector<cplx> evaluate(const Eigen::VectorXd& p) const;
};

// Transform of x -> exp(2 pi i x^T M h) P(x) exp(-t x^T G x), with vol = dx / covolume.
GaussPolyFactor gaussian_ft(const VectorPolynomial& P, const Eigen::MatrixXd& G, const Eigen::MatrixXd& M,
                            double covolume, double t, const Eigen::VectorXd& h);

}  // namespace polylog
