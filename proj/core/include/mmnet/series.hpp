#pragma once

#include <iosfwd>
#include <vector>

#include "mmnet/coverage.hpp"
#include "mmnet/params.hpp"
#include "mmnet/specfun.hpp"

namespace mmnet {

// Coefficients of the polynomial-in-k coverage representation.
struct CoefficientTable {
  double tau = 0.0;
  double psi = 0.0;
  std::vector<double> coeffs;  // c_0 .. c_L
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  // Sum_{l=0}^{L} c_l k^l, clamped to [0, 1].
  double evaluate(int k) const;
  void write_csv(std::ostream& os) const;  // columns: l, c_l
};

// All coefficients c_0..c_L in one vector-valued sweep over the unit
// interval; the per-(j, r) bracket is evaluated once and raised to l.
CoefficientTable compute_coefficients(double tau, const NetworkParams& params,
                                      int degree, const QuadratureSpec& quad);

double coeff_c0(double tau, double psi, const NetworkParams& params,
                const QuadratureSpec& quad);
double coeff_cl(int l, double tau, double psi, const NetworkParams& params,
                const QuadratureSpec& quad);

// Lagrange truncation bound (2^mu - 1) e^psi psi^(L+2) / (L+2)!
double truncation_bound(int degree, double psi, int mu);

// Smallest L with truncation_bound(L, psi, mu) <= target_err.
int choose_degree(double psi, int mu, double target_err);

double coverage_via_series(const CoverageQuery& q, int degree,
                           const QuadratureSpec& quad);

}  // namespace mmnet
