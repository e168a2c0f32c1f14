#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "polylog/exact.hpp"
#include "polylog/lattice.hpp"
#include "polylog/theta.hpp"
#include "polylog/zeta.hpp"

namespace polylog {

// h_j = (e_{source_j})^{-1,0}, j < d; letter d + j is conj(h_j)
struct HodgeBasis {
  int d = 0;
  std::vector<int> source;
  Eigen::MatrixXcd vectors;  // r x 2d
  Eigen::MatrixXcd coords;   // d x r, lambda^{-1,0} = sum_j (coords lambda)_j h_j
};
HodgeBasis hodge_basis(const PolarizedAbelianData& data);

// word over Hodge letters, exterior monomial dx^I on the lattice basis
using CurrentKey = std::pair<std::vector<int>, std::uint32_t>;

struct CurrentValue {
  int sym_degree = 0;
  int form_degree = 0;
  std::map<CurrentKey, cplx> components;
  Eigen::VectorXd point;
  std::string regime;  // direct, accelerated, exact-zero, or mixed
  double error_bound = 0;
  std::size_t points = 0;
  cplx value(const std::vector<int>& word, std::uint32_t mask = 0) const;
};

struct TorsionPoint {
  std::vector<Rational> u;
  long order = 1;
  static TorsionPoint from_rational(std::vector<Rational> u);
  TorusPoint torus() const { return TorusPoint::from_rational(u); }
};

// (-1)^d (a+b+k-1)! / ((a+b-1)! k! d! kappa)
Rational levin_coefficient(int a, int b, int k, int d, const Integer& kappa);

// numerator of g_{a,b}^0 and the component keys of its target slots
struct LevinNumerator {
  VectorPolynomial P;
  std::vector<CurrentKey> keys;
};
LevinNumerator levin_numerator(const PolarizedAbelianData& data, const HodgeBasis& basis, int a, int b);

struct LevinOptions {
  ZetaMode mode = ZetaMode::Auto;
  double A = 1.0;
  SumOptions sum;
};

CurrentValue g_abk(const PolarizedAbelianData& data, int a, int b, int k, const TorusPoint& u, double tol,
                   const LevinOptions& opt = {});

// grades n = 2 .. n_max; element n - 2 is the grade-n piece
std::vector<CurrentValue> g_total(const PolarizedAbelianData& data, const TorusPoint& u, int n_max, double tol,
                                  const LevinOptions& opt = {});
CurrentValue g_grade(const PolarizedAbelianData& data, const TorusPoint& u, int n, double tol,
                     const LevinOptions& opt = {});

// functional on the Hodge letters from v -> E(mu, v), mu in the dual-lattice basis coordinates
std::vector<cplx> pairing_functional(const PolarizedAbelianData& data, const HodgeBasis& basis,
                                     const std::vector<long>& mu);

// Sym^{l+1} piece (grade l + 3) at x, contracted against chi on the Hodge letters
CurrentValue eisenstein_value(const PolarizedAbelianData& data, const TorsionPoint& x, int l, int n_max,
                              const std::vector<cplx>& chi, double tol, const LevinOptions& opt = {});
// complex linear extension of the exact contraction c_n
std::map<CurrentKey, cplx> contract_components(const std::map<CurrentKey, cplx>& w, const std::vector<cplx>& chi,
                                               int letters);

// fd_scan of one grade of g over a grid in Lambda coordinates
std::vector<ScanRow> current_scan(const PolarizedAbelianData& data, int n, const std::vector<Eigen::VectorXd>& grid,
                                  double h, double tol, const LevinOptions& opt = {});

using TorusScalar = std::function<cplx(const Eigen::VectorXd&)>;

struct PairingResult {
  cplx value;
  cplx value_half_eps;
  double quad_error = 0;
  double eps_change = 0;
  std::size_t nodes = 0;
};

// periodic trapezoid over [0,1)^r minus the eps-ball around Lambda; f is the field, w the test density
PairingResult pair_with_test_form(const PolarizedAbelianData& data, const TorusScalar& f, const TorusScalar& w,
                                  double eps, int quad_n);

// bump of the given radius around c, smooth and compactly supported
TorusScalar bump_form(const Eigen::VectorXd& c, double radius);

}  // namespace polylog
