#pragma once

#include <map>
#include <random>
#include <utility>
#include <vector>

#include "polylog/forms.hpp"
#include "polylog/lattice.hpp"
#include "polylog/theta.hpp"

namespace polylog::verify {

// d = 1, tau = i, principal polarization
PolarizedAbelianData tau_i(QNormalization norm = QNormalization::Polarization);
// Pi = (I, X + iY) with random symmetric X and positive Y, E = c [[0, -I], [I, 0]]
PolarizedAbelianData random_abelian(std::mt19937_64& rng, int d);

// sum_{k >= 0} (-1)^k (2k+1)^{-s}, alternating-series acceleration
// nterms random monomials with small characters, any exterior degree, words up to N
FourierForm random_form(std::mt19937_64& rng, int rank, int N, int nterms);

// d = 1 box sums of sum' chi conj(c)^{a-1} c^{b-1} (-Q/2) / Q^{a+b}, lambda^{-1,0} = c h, h = (e_1)^{-1,0}
struct LevinOracle {
  std::map<std::pair<int, int>, cplx> value;
  double tail = 0;
  long box = 0;
};
LevinOracle levin_d1_bruteforce(const PolarizedAbelianData& data, const Eigen::VectorXd& u,
                                const std::vector<std::pair<int, int>>& ab, double tol);
// letters 0 = h, 1 = conj(h); g_{a,b} sits on h^{b-1} conj(h)^{a-1}
std::vector<int> levin_d1_word(int a, int b);
// grade l+3 from the box sums, signs and 1/kappa by hand, contracted against chi on each position
std::map<std::vector<int>, cplx> eisenstein_d1_bruteforce(const PolarizedAbelianData& data, const Eigen::VectorXd& x,
                                                          int l, const std::vector<cplx>& chi, double tol);
// -(1/2) sum' chi e^{-tQ} / Q
cplx levin_d1_smoothed(const PolarizedAbelianData& data, const Eigen::VectorXd& u, double t);

double dirichlet_beta(double s);
double riemann_zeta(double s);
// sum over Z^2 minus 0 of |n|^{-2s}
double z2_epstein(double s);

}  // namespace polylog::verify
