#include "mmnet/series.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace mmnet {

double CoefficientTable::evaluate(int k) const {
  // Horner from the top coefficient.
  double acc = 0.0;
  for (int l = degree(); l >= 0; --l) acc = acc * k + coeffs[l];
  return std::clamp(acc, 0.0, 1.0);
}

void CoefficientTable::write_csv(std::ostream& os) const {
  os << "l,c_l\n";
  os.precision(17);
  for (std::size_t l = 0; l < coeffs.size(); ++l)
    os << l << "," << coeffs[l] << "\n";
}

CoefficientTable compute_coefficients(double tau, const NetworkParams& params,
                                      int degree, const QuadratureSpec& quad) {
  if (degree < 0) throw std::invalid_argument("compute_coefficients: degree < 0");
  if (!(tau >= 0.0)) throw std::invalid_argument("compute_coefficients: tau < 0");
  const NetworkParams p = validated(params);
  CoefficientTable table;
  table.tau = tau;
  table.psi = p.psi;
  table.coeffs.assign(degree + 1, 0.0);
  if (p.psi == 0.0) return table;

  const BeamPattern& b = p.beam;
  const double pu = b.main_width_user / (2.0 * kPi);  // theta_U / 2pi
  const double g_ratio_user = b.side_gain_user / b.main_gain_user;
  const double g_ratio_ap = b.side_gain_ap / b.main_gain_ap;
  const double g_ratio_both = g_ratio_ap * g_ratio_user;
  const int mu = p.mu;
  const double psi = p.psi;
  const int dim = degree + 1;

  // Integrand vector over l: sum_j sign C(mu,j) e^{E0_j} bracket_j^l where
  // E0 is the all-side-lobe exponent and the bracket is the main-vs-side
  // kernel difference; the (psi theta_A / 2pi)^l / l! scale is applied after
  // integration.
  auto fill = [&](double r, std::vector<double>& out) {
    if (r <= 0.0) r = std::nextafter(0.0, 1.0);
    std::fill(out.begin(), out.end(), 0.0);
    for (int j = 1; j <= mu; ++j) {
      const double lam_main = lambda_kernel(tau, r, 1.0, j, p, quad);
      const double lam_user_side = lambda_kernel(tau, r, g_ratio_user, j, p, quad);
      const double lam_ap_side = lambda_kernel(tau, r, g_ratio_ap, j, p, quad);
      const double lam_both_side = lambda_kernel(tau, r, g_ratio_both, j, p, quad);
      const double e0 = psi * (pu * lam_ap_side + (1.0 - pu) * lam_both_side);
      const double bracket = pu * lam_main + (1.0 - pu) * lam_user_side -
                             pu * lam_ap_side - (1.0 - pu) * lam_both_side;
      const double sign = (j % 2 == 1) ? 1.0 : -1.0;
      double term = sign * static_cast<double>(binomial(mu, j)) * std::exp(e0);
      for (int l = 0; l < dim; ++l) {
        out[l] += term;
        term *= bracket;
      }
    }
  };
  std::vector<double> integrals = integrate_unit_interval_vec(fill, dim, quad);

  // Scale in log domain: (psi theta_A / 2pi)^l / l! underflows gracefully.
  const double log_base = std::log(psi * b.main_width_ap / (2.0 * kPi));
  const double prefactor = psi * std::exp(-psi);
  for (int l = 0; l < dim; ++l) {
    const double log_scale = l * log_base - std::lgamma(l + 1.0);
    table.coeffs[l] = prefactor * std::exp(log_scale) * integrals[l];
  }
  return table;
}

double coeff_c0(double tau, double psi, const NetworkParams& params,
                const QuadratureSpec& quad) {
  NetworkParams p = params;
  p.psi = psi;
  return compute_coefficients(tau, p, 0, quad).coeffs[0];
}

double coeff_cl(int l, double tau, double psi, const NetworkParams& params,
                const QuadratureSpec& quad) {
  if (l < 1) throw std::invalid_argument("coeff_cl: l must be >= 1");
  NetworkParams p = params;
  p.psi = psi;
  return compute_coefficients(tau, p, l, quad).coeffs[l];
}

double truncation_bound(int degree, double psi, int mu) {
  if (degree < 0) throw std::invalid_argument("truncation_bound: degree < 0");
  if (mu < 1 || mu > kMaxMu)
    throw std::invalid_argument("truncation_bound: mu out of range");
  if (psi == 0.0) return 0.0;
  const double log_bound = std::log(std::pow(2.0, mu) - 1.0) + psi +
                           (degree + 2) * std::log(psi) -
                           std::lgamma(degree + 3.0);
  return std::exp(log_bound);
}

int choose_degree(double psi, int mu, double target_err) {
  if (!(target_err > 0.0))
    throw std::invalid_argument("choose_degree: target_err must be > 0");
  int degree = 0;
  while (truncation_bound(degree, psi, mu) > target_err) ++degree;
  return degree;
}

double coverage_via_series(const CoverageQuery& q, int degree,
                           const QuadratureSpec& quad) {
  CoefficientTable table = compute_coefficients(q.tau, q.params, degree, quad);
  return table.evaluate(q.params.k);
}

}  // namespace mmnet
