#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace polylog {

// beta = F^* K on C^d \ 0, F(z) = (2z, z) into K(zeta, w), so zeta - w = z:
// beta = c_d sum_j (-1)^{j-1} conj(z_j) / |z|^{2d} dconj(z)[j] dz,  c_d = (-1)^{d(d-1)/2} (d-1)! / (2 pi i)^d.
// Real coordinates x_1, y_1, ..., x_d, y_d; b[k] is the coefficient of the wedge of all dx except coordinate k.
std::vector<std::complex<double>> beta_eval(int d, const Eigen::VectorXcd& z);
std::string bm_convention();

struct SphereIntegral {
  std::complex<double> value;
  double error_estimate = 0;
  std::size_t nodes = 0;
};

// boundary orientation, outward normal first; d = 1 trapezoid, d = 2 Hopf coordinates
SphereIntegral sphere_integral(int d, double r, int quad_level);

// |d beta| at z from central differences of step h
double closedness_residual(int d, const Eigen::VectorXcd& z, double h);

}  // namespace polylog
