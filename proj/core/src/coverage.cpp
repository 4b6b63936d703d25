#include "mmnet/coverage.hpp"

#include <algorithm>
#include <cmath>

namespace mmnet {

bool CoverageCurve::complete() const {
  for (const auto& e : point_errors)
    if (e.has_value()) return false;
  return true;
}

double coverage_probability(const CoverageQuery& q, const QuadratureSpec& quad) {
  if (!(q.tau >= 0.0))
    throw std::invalid_argument("coverage_probability: tau < 0");
  const NetworkParams p = validated(q.params);
  if (p.psi == 0.0) return 0.0;
  const GainMixture mix = gain_mixture(p);
  const int mu = p.mu;
  const double psi = p.psi;

  // The signed binomial sum sits inside the r-integral; the integration
  // variable is the normalized squared serving distance.
  auto integrand = [&](double r) {
    if (r <= 0.0) r = std::nextafter(0.0, 1.0);
    double acc = 0.0;
    for (int j = 1; j <= mu; ++j) {
      const double e = expected_lambda(q.tau, r, j, p, mix, quad);
      const double t = static_cast<double>(binomial(mu, j)) * std::exp(psi * e);
      acc += (j % 2 == 1) ? t : -t;
    }
    return acc;
  };
  const double integral = integrate_unit_interval(integrand, quad);
  const double value = psi * std::exp(-psi) * integral;
  return std::clamp(value, 0.0, 1.0);
}

double nearest_distance_pdf(double r, const NetworkParams& p) {
  if (r < 0.0 || r > p.r_los)
    throw std::invalid_argument("nearest_distance_pdf: r out of [0, R_B]");
  const double lam = derive_ap_intensity(p);
  return 2.0 * kPi * lam * r * std::exp(-kPi * lam * r * r);
}

double nearest_distance_cdf(double r, const NetworkParams& p) {
  if (r < 0.0 || r > p.r_los)
    throw std::invalid_argument("nearest_distance_cdf: r out of [0, R_B]");
  const double lam = derive_ap_intensity(p);
  return 1.0 - std::exp(-kPi * lam * r * r);
}

CoverageCurve coverage_sweep(SweepAxis axis_kind, const std::vector<double>& grid,
                             const NetworkParams& base, const QuadratureSpec& quad,
                             double fixed_tau) {
  if (grid.empty()) throw std::invalid_argument("coverage_sweep: empty grid");
  CoverageCurve curve;
  curve.axis_kind = axis_kind;
  curve.axis = grid;
  curve.meta = base;
  curve.values.resize(grid.size(), std::nan(""));
  curve.point_errors.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CoverageQuery q;
    q.params = base;
    q.tau = fixed_tau;
    switch (axis_kind) {
      case SweepAxis::Tau:
        q.tau = grid[i];
        break;
      case SweepAxis::Psi:
        q.params.psi = grid[i];
        break;
      case SweepAxis::K:
        q.params.k = static_cast<int>(std::lround(grid[i]));
        break;
    }
    try {
      curve.values[i] = coverage_probability(q, quad);
    } catch (const std::exception& ex) {
      curve.point_errors[i] = ex.what();
    }
  }
  return curve;
}

}  // namespace mmnet
