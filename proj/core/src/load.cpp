#include "mmnet/load.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace mmnet {

namespace {

constexpr double kShape = 3.5;  // Voronoi-size gamma shape
constexpr int kMaxSupport = 2'000'000;

// Mean users per AP sector: pi R_B^2 lambda_U / (k psi) = lambda_U / (k lambda_A).
double users_per_sector(const NetworkParams& p) {
  return kPi * p.r_los * p.r_los * p.lambda_user / (p.k * p.psi);
}

double log_simplified_mass(int n, double c) {
  return kShape * std::log(kShape) + std::lgamma(n + kShape) -
         std::lgamma(static_cast<double>(n)) - std::lgamma(kShape) +
         (n - 1) * std::log(c) - (n + kShape) * std::log(kShape + c);
}

LoadPmf build_pmf(const NetworkParams& params, double tail_tol,
                  bool with_gamma_correction) {
  const NetworkParams p = validated(params);
  const double c = users_per_sector(p);
  const double q = c / (kShape + c);

  // Truncation corrections from the sector-area cap at pi R_B^2 / k: the
  // Poisson mixing integral runs over a *truncated* biased gamma density, so
  // each mass carries a regularized lower-gamma factor with arguments
  // psi(3.5+c) (mass n) and 3.5 psi (normalizer).
  double corr_denom = 1.0;
  double corr_arg = 0.0;
  if (with_gamma_correction) {
    corr_arg = p.psi * (kShape + c);
    corr_denom = boost::math::gamma_p(kShape + 1.0, kShape * p.psi);
  }

  LoadPmf pmf;
  double total = 0.0;
  for (int n = 1; n <= kMaxSupport; ++n) {
    double mass = std::exp(log_simplified_mass(n, c));
    if (with_gamma_correction) {
      mass *= boost::math::gamma_p(n + kShape, corr_arg) / corr_denom;
    }
    pmf.masses.push_back({n, mass});
    total += mass;
    // Geometric tail bound once the mass ratio drops below 1.
    const double ratio = (n + kShape) / n * q;
    if (ratio < 1.0 && mass * ratio / (1.0 - ratio) < tail_tol) {
      pmf.truncation_n = n;
      break;
    }
  }
  if (pmf.truncation_n == 0)
    throw std::runtime_error("load pmf: support truncation cap exceeded");
  pmf.tail_mass = std::max(0.0, 1.0 - total);
  return pmf;
}

}  // namespace

double LoadPmf::total_mass() const {
  double s = 0.0;
  for (const auto& m : masses) s += m.p;
  return s;
}

double LoadPmf::mean() const {
  double s = 0.0;
  for (const auto& m : masses) s += m.n * m.p;
  return s;
}

double LoadPmf::mean_inverse() const {
  double s = 0.0;
  for (const auto& m : masses) s += m.p / m.n;
  return s;
}

double LoadPmf::prob(int n) const {
  if (n < 1 || n > truncation_n || masses.empty()) return 0.0;
  const int first = masses.front().n;
  const std::size_t idx = static_cast<std::size_t>(n - first);
  return idx < masses.size() ? masses[idx].p : 0.0;
}

void LoadPmf::write_csv(std::ostream& os) const {
  os << "n,p\n";
  os.precision(17);
  for (const auto& m : masses) os << m.n << "," << m.p << "\n";
}

LoadPmf load_pmf_simplified(const NetworkParams& params, double tail_tol) {
  if (params.psi < 1.0)
    throw std::invalid_argument(
        "load_pmf_simplified requires psi >= 1; use load_pmf_full");
  return build_pmf(params, tail_tol, /*with_gamma_correction=*/false);
}

LoadPmf load_pmf_full(const NetworkParams& params, double tail_tol) {
  return build_pmf(params, tail_tol, /*with_gamma_correction=*/true);
}

double sector_area_pdf(double y, const NetworkParams& params) {
  if (y < 0.0) throw std::invalid_argument("sector_area_pdf: y < 0");
  const NetworkParams p = validated(params);
  const double cap = kPi * p.r_los * p.r_los / p.k;
  if (y > cap) return 0.0;
  const double kl = p.k * derive_ap_intensity(p);
  const double t = kShape * kl * y;
  const double norm = boost::math::tgamma_lower(kShape, kShape * p.psi);
  return kShape * kl * std::pow(t, kShape - 1.0) * std::exp(-t) / norm;
}

double biased_sector_area_pdf(double y, const NetworkParams& params) {
  if (y < 0.0) throw std::invalid_argument("biased_sector_area_pdf: y < 0");
  const NetworkParams p = validated(params);
  const double cap = kPi * p.r_los * p.r_los / p.k;
  if (y > cap) return 0.0;
  const double kl = p.k * derive_ap_intensity(p);
  const double t = kShape * kl * y;
  const double norm = boost::math::tgamma_lower(kShape + 1.0, kShape * p.psi);
  return kShape * kl * std::pow(t, kShape) * std::exp(-t) / norm;
}

double mean_bandwidth(const NetworkParams& params) {
  const NetworkParams p = validated(params);
  return p.bandwidth_total / (1.0 + p.bias_factor * users_per_sector(p));
}

double total_variation(const LoadPmf& a, const LoadPmf& b) {
  const int n_max = std::max(a.truncation_n, b.truncation_n);
  double tv = 0.0;
  for (int n = 1; n <= n_max; ++n) tv += std::abs(a.prob(n) - b.prob(n));
  tv += a.tail_mass + b.tail_mass;  // worst case for unlisted mass
  return 0.5 * tv;
}

}  // namespace mmnet
