#pragma once

#include <complex>

namespace polylog {

using cplx = std::complex<double>;

cplx log_gamma(cplx z);
cplx gamma(cplx z);
// 1/Gamma, entire; exactly zero at the poles.
cplx rgamma(cplx z);

// Upper incomplete gamma Gamma(a, x) for complex a and real x > 0.
cplx upper_gamma(cplx a, double x);

// Real a > 0 case, used by the tail certificates.
double upper_gamma_real(double a, double x);

}  // namespace polylog
