#include "mmnet/throughput.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <optional>
#include <stdexcept>

#include "mmnet/parallel.hpp"
#include "mmnet/series.hpp"

namespace mmnet {
namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kLog10_2 = 0.30102999566398120;

// Fritsch-Carlson monotone cubic slopes on a uniform grid.
std::vector<double> pchip_slopes(const std::vector<double>& y) {
  const std::size_t n = y.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  std::vector<double> delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = y[i + 1] - y[i];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      d[i] = 0.0;
    } else {
      d[i] = 2.0 * delta[i - 1] * delta[i] / (delta[i - 1] + delta[i]);
    }
  }
  auto end_slope = [](double d0, double d1) {
    double s = 1.5 * d0 - 0.5 * d1;
    if (s * d0 <= 0.0) return 0.0;
    if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0)) return 3.0 * d0;
    return s;
  };
  d[0] = end_slope(delta[0], n > 2 ? delta[1] : delta[0]);
  d[n - 1] = end_slope(delta[n - 2], n > 2 ? delta[n - 3] : delta[n - 2]);
  return d;
}

// Adaptive integral of f(tau) over [lo, hi] in log-tau coordinates.
double integrate_log_range(const std::function<double(double)>& f, double lo,
                           double hi, const QuadratureSpec& quad) {
  if (!(hi > lo)) return 0.0;
  const double ulo = std::log(lo);
  const double uhi = std::log(hi);
  auto g = [&](double u) {
    const double tau = std::exp(u);
    return f(tau) * tau;
  };
  return integrate_adaptive(g, ulo, uhi, quad).value;
}

const LoadPmf& require_pmf(const NetworkParams& params, LoadPmf& storage) {
  storage = params.psi >= 1.0 ? load_pmf_simplified(params)
                              : load_pmf_full(params);
  return storage;
}

}  // namespace

RateSchedule validated_schedule(RateSchedule s) {
  if (s.thresholds.empty()) {
    throw std::invalid_argument("rate schedule is empty");
  }
  double prev = 0.0;
  for (double r : s.thresholds) {
    if (!(r > prev)) {
      throw std::invalid_argument(
          "rate schedule thresholds must be positive and strictly ascending");
    }
    prev = r;
  }
  return s;
}

CoverageTable::CoverageTable(const NetworkParams& params,
                             const QuadratureSpec& quad, double log10_lo,
                             double log10_hi, double step)
    : params_(validated(params)) {
  if (!(step > 0.0) || !(log10_hi > log10_lo)) {
    throw std::invalid_argument("invalid coverage table grid");
  }
  const std::size_t n =
      static_cast<std::size_t>(std::ceil((log10_hi - log10_lo) / step)) + 1;
  logt_.resize(n);
  val_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    logt_[i] = log10_lo + step * static_cast<double>(i);
  }
  floor_ = params_.psi * std::exp(-params_.psi);
  std::vector<std::exception_ptr> errs(n);
  parallel_for(n, [&](std::size_t i) {
    try {
      val_[i] = coverage_probability({std::pow(10.0, logt_[i]), params_}, quad);
    } catch (...) {
      errs[i] = std::current_exception();
    }
  });
  for (auto& e : errs) {
    if (e) std::rethrow_exception(e);
  }
  slope_ = pchip_slopes(val_);
}

double CoverageTable::operator()(double tau) const {
  if (tau <= 0.0) return val_.front();
  return at_log2_exponent(std::log2(1.0 + tau));
}

double CoverageTable::at_log2_exponent(double x) const {
  if (!(x > 0.0)) return val_.front();
  double lt;
  if (x < 50.0) {
    const double tau = std::expm1(x * kLn2);
    if (tau <= 0.0) return val_.front();
    lt = std::log10(tau);
  } else {
    lt = x * kLog10_2;  // log10(2^x - 1) ~ x log10(2) to below 1e-15
  }
  if (lt <= logt_.front()) return val_.front();
  if (lt >= logt_.back()) return floor_;
  const double step = logt_[1] - logt_[0];
  std::size_t j = static_cast<std::size_t>((lt - logt_.front()) / step);
  if (j + 1 >= logt_.size()) j = logt_.size() - 2;
  const double h = logt_[j + 1] - logt_[j];
  const double t = (lt - logt_[j]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  double v = h00 * val_[j] + h10 * h * slope_[j] + h01 * val_[j + 1] +
             h11 * h * slope_[j + 1];
  return std::clamp(v, 0.0, 1.0);
}

ThroughputReport fixed_rate_throughput(double rho, const NetworkParams& params,
                                       const QuadratureSpec& quad,
                                       LoadModel model,
                                       const CoverageTable* table) {
  const NetworkParams p = validated(params);
  if (!(rho >= 0.0) || !std::isfinite(rho)) {
    throw std::invalid_argument("rate threshold must be finite and >= 0");
  }
  ThroughputReport rep;
  rep.kind = ThroughputKind::Fixed;
  rep.psi = p.psi;
  rep.k = p.k;
  rep.rho = rho;
  if (rho == 0.0) {
    rep.value = 0.0;
    return rep;
  }
  if (model == LoadModel::MeanBandwidth) {
    const double wbar = mean_bandwidth(p);
    const double x = rho / wbar;
    const double cov = table != nullptr
                           ? table->at_log2_exponent(x)
                           : coverage_probability(
                                 {std::expm1(x * kLn2), p}, quad);
    rep.value = p.lambda_user * rho * cov;
    return rep;
  }
  std::optional<CoverageTable> local_table;
  if (table == nullptr) table = &local_table.emplace(p, quad);
  LoadPmf pmf_storage;
  const LoadPmf& pmf = require_pmf(p, pmf_storage);
  double acc = 0.0;
  for (const auto& m : pmf.masses) {
    acc += m.p * table->at_log2_exponent(rho * static_cast<double>(m.n) /
                                         p.bandwidth_total);
  }
  acc += pmf.tail_mass * table->floor();
  rep.value = p.lambda_user * rho * acc;
  return rep;
}

ThroughputReport multi_rate_throughput(const RateSchedule& schedule,
                                       const NetworkParams& params,
                                       const QuadratureSpec& quad,
                                       LoadModel model,
                                       const CoverageTable* table) {
  const NetworkParams p = validated(params);
  const RateSchedule s = validated_schedule(schedule);
  ThroughputReport rep;
  rep.kind = ThroughputKind::Multi;
  rep.psi = p.psi;
  rep.k = p.k;
  // Telescoped form: sum_i (rho_i - rho_{i-1}) C(tau_i) with rho_0 = 0.
  if (model == LoadModel::MeanBandwidth) {
    const double wbar = mean_bandwidth(p);
    double acc = 0.0;
    double prev = 0.0;
    for (double r : s.thresholds) {
      const double x = r / wbar;
      const double cov = table != nullptr
                             ? table->at_log2_exponent(x)
                             : coverage_probability(
                                   {std::expm1(x * kLn2), p}, quad);
      acc += (r - prev) * cov;
      prev = r;
    }
    rep.value = p.lambda_user * acc;
    return rep;
  }
  std::optional<CoverageTable> local_table;
  if (table == nullptr) table = &local_table.emplace(p, quad);
  LoadPmf pmf_storage;
  const LoadPmf& pmf = require_pmf(p, pmf_storage);
  double acc = 0.0;
  for (const auto& m : pmf.masses) {
    double inner = 0.0;
    double prev = 0.0;
    for (double r : s.thresholds) {
      inner += (r - prev) *
               table->at_log2_exponent(r * static_cast<double>(m.n) /
                                       p.bandwidth_total);
      prev = r;
    }
    acc += m.p * inner;
  }
  acc += pmf.tail_mass * s.thresholds.back() * table->floor();
  rep.value = p.lambda_user * acc;
  return rep;
}

ThroughputReport throughput_upper_bound(const NetworkParams& params,
                                        const QuadratureSpec& quad,
                                        const UpperBoundOptions& opts,
                                        const CoverageTable* table) {
  const NetworkParams p = validated(params);
  if (!(opts.tau_cap > 0.0) || !std::isfinite(opts.tau_cap)) {
    throw std::invalid_argument("tau_cap must be finite and positive");
  }
  std::optional<CoverageTable> local_table;
  if (!opts.direct_coverage && table == nullptr) {
    table = &local_table.emplace(p, quad);
  }
  std::function<double(double)> cov;
  if (opts.direct_coverage) {
    cov = [&](double tau) { return coverage_probability({tau, p}, quad); };
  } else {
    cov = [&](double tau) { return (*table)(tau); };
  }
  const double integral = integrate_log_range(
      [&](double tau) { return cov(tau) / (1.0 + tau); }, 1e-9, opts.tau_cap,
      quad);
  // The chunk below tau = 1e-9 contributes at most 1e-9 in absolute value.
  LoadPmf pmf_storage;
  const LoadPmf& pmf = require_pmf(p, pmf_storage);
  ThroughputReport rep;
  rep.kind = ThroughputKind::UpperBound;
  rep.psi = p.psi;
  rep.k = p.k;
  rep.value = p.lambda_user * p.bandwidth_total * pmf.mean_inverse() *
              std::log2(std::exp(1.0)) * integral;
  return rep;
}

double upper_bound_via_series(const NetworkParams& params,
                              const QuadratureSpec& quad, double tau_cap,
                              int degree) {
  const NetworkParams p = validated(params);
  if (degree < 0) throw std::invalid_argument("degree must be >= 0");
  if (!(tau_cap > 0.0) || !std::isfinite(tau_cap)) {
    throw std::invalid_argument("tau_cap must be finite and positive");
  }
  const double ulo = std::log(1e-9);
  const double uhi = std::log(tau_cap);
  const std::size_t dim = static_cast<std::size_t>(degree) + 1;
  auto fill = [&](double x, std::vector<double>& out) {
    const double u = ulo + (uhi - ulo) * x;
    const double tau = std::exp(u);
    const CoefficientTable tab = compute_coefficients(tau, p, degree, quad);
    const double w = (uhi - ulo) * tau / (1.0 + tau);
    for (std::size_t l = 0; l < dim; ++l) out[l] = tab.coeffs[l] * w;
  };
  const std::vector<double> integrals =
      integrate_unit_interval_vec(fill, static_cast<int>(dim), quad);
  double sum = 0.0;
  double kpow = 1.0;
  for (std::size_t l = 0; l < dim; ++l) {
    sum += kpow * integrals[l];
    kpow *= static_cast<double>(p.k);
  }
  LoadPmf pmf_storage;
  const LoadPmf& pmf = require_pmf(p, pmf_storage);
  return p.lambda_user * p.bandwidth_total * pmf.mean_inverse() *
         std::log2(std::exp(1.0)) * sum;
}

SearchResult optimal_rate_threshold(const NetworkParams& params, double rho_lo,
                                    double rho_hi, const QuadratureSpec& quad,
                                    LoadModel model, const CoverageTable* table,
                                    double rel_tol) {
  const NetworkParams p = validated(params);
  if (!(rho_lo > 0.0) || !(rho_hi >= rho_lo)) {
    throw std::invalid_argument("need 0 < rho_lo <= rho_hi");
  }
  std::optional<CoverageTable> local_table;
  if (model == LoadModel::ExactPmf && table == nullptr) {
    table = &local_table.emplace(p, quad);
  }
  if (rho_lo == rho_hi) {
    SearchResult res;
    res.argmax = rho_lo;
    res.value =
        fixed_rate_throughput(rho_lo, p, quad, model, table).value;
    res.boundary_maximum = true;
    return res;
  }
  auto f = [&](double log_rho) {
    return fixed_rate_throughput(std::exp(log_rho), p, quad, model, table)
        .value;
  };
  const double a0 = std::log(rho_lo);
  const double b0 = std::log(rho_hi);
  constexpr int kGrid = 17;
  std::vector<double> xs(kGrid), fs(kGrid);
  for (int i = 0; i < kGrid; ++i) {
    xs[i] = a0 + (b0 - a0) * static_cast<double>(i) / (kGrid - 1);
    fs[i] = f(xs[i]);
  }
  const std::size_t imax = static_cast<std::size_t>(
      std::max_element(fs.begin(), fs.end()) - fs.begin());
  SearchResult res;
  res.boundary_maximum = (imax == 0 || imax == kGrid - 1);
  double a = xs[imax == 0 ? 0 : imax - 1];
  double b = xs[imax + 1 >= kGrid ? kGrid - 1 : imax + 1];
  // Golden-section refinement within the bracket around the grid maximum.
  const double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > rel_tol) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    }
  }
  double xbest = f1 >= f2 ? x1 : x2;
  double fbest = std::max(f1, f2);
  if (fs[imax] > fbest) {
    xbest = xs[imax];
    fbest = fs[imax];
  }
  res.argmax = std::exp(xbest);
  res.value = fbest;
  return res;
}

double densification_gain(double psi, const NetworkParams& params_at_psi1,
                          double rho0, const QuadratureSpec& quad,
                          LoadModel model, const CoverageTable* table_num,
                          const CoverageTable* table_den) {
  if (!(psi > 0.0)) throw std::invalid_argument("psi must be positive");
  if (!(rho0 > 0.0)) throw std::invalid_argument("rho0 must be positive");
  NetworkParams base = params_at_psi1;
  base.psi = 1.0;
  base = validated(base);
  NetworkParams dense = base;
  dense.psi = psi;
  const double num =
      fixed_rate_throughput(psi * rho0, dense, quad, model, table_num).value;
  const double den =
      fixed_rate_throughput(rho0, base, quad, model, table_den).value;
  if (!(den > 1e-300)) {
    throw std::domain_error(
        "reference throughput underflows; densification gain undefined");
  }
  return num / den;
}

SearchResult density_threshold(double tau, int k, const NetworkParams& params,
                               const std::vector<double>& psi_grid,
                               const QuadratureSpec& quad) {
  if (psi_grid.size() < 3) {
    throw std::invalid_argument("psi grid needs at least 3 points");
  }
  NetworkParams p = params;
  p.k = k;
  auto f = [&](double psi) {
    NetworkParams q = p;
    q.psi = psi;
    return coverage_probability({tau, validated(q)}, quad);
  };
  std::vector<double> fs(psi_grid.size());
  std::vector<std::exception_ptr> errs(psi_grid.size());
  parallel_for(psi_grid.size(), [&](std::size_t i) {
    try {
      fs[i] = f(psi_grid[i]);
    } catch (...) {
      errs[i] = std::current_exception();
    }
  });
  for (auto& e : errs) {
    if (e) std::rethrow_exception(e);
  }
  const std::size_t imax = static_cast<std::size_t>(
      std::max_element(fs.begin(), fs.end()) - fs.begin());
  SearchResult res;
  res.boundary_maximum = (imax == 0 || imax + 1 == psi_grid.size());
  double a = psi_grid[imax == 0 ? 0 : imax - 1];
  double b = psi_grid[imax + 1 >= psi_grid.size() ? psi_grid.size() - 1
                                                  : imax + 1];
  const double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > 0.05) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    }
  }
  double xbest = f1 >= f2 ? x1 : x2;
  double fbest = std::max(f1, f2);
  if (fs[imax] > fbest) {
    xbest = psi_grid[imax];
    fbest = fs[imax];
  }
  res.argmax = xbest;
  res.value = fbest;
  return res;
}

double asymptotic_gain_bound(const NetworkParams& params, double rho0,
                             double eps_cutoff, const QuadratureSpec& quad) {
  NetworkParams p = params;
  p.psi = 1.0;
  p.k = 1;
  p = validated(p);
  if (!(rho0 > 0.0)) throw std::invalid_argument("rho0 must be positive");
  if (eps_cutoff < 0.0 || eps_cutoff >= p.r_los) {
    throw std::invalid_argument("eps_cutoff must lie in [0, r_los)");
  }
  const double alpha = p.alpha_los;
  double sigma;
  if (alpha == 2.0) {
    if (!(eps_cutoff > 0.0)) {
      throw std::domain_error(
          "sigma diverges at alpha_los == 2; a positive eps_cutoff is "
          "required");
    }
    sigma = std::log(p.r_los / eps_cutoff);
  } else {
    sigma = (std::pow(p.r_los, 2.0 - alpha) -
             std::pow(eps_cutoff, 2.0 - alpha)) /
            (2.0 - alpha);
  }
  const double w0 = mean_bandwidth(p);
  const double gain_ratio = (p.beam.side_gain_ap * p.beam.side_gain_user) /
                            (p.beam.main_gain_ap * p.beam.main_gain_user);
  const double tau_hat = std::expm1(rho0 / w0 * kLn2) * gain_ratio;
  if (!(tau_hat > 0.0) || !std::isfinite(tau_hat)) {
    throw std::domain_error("tau_hat is degenerate for the given rho0");
  }
  const double t_ref =
      fixed_rate_throughput(rho0, p, quad, LoadModel::ExactPmf).value;
  if (!(t_ref > 1e-300)) {
    throw std::domain_error("reference throughput underflows");
  }
  return p.lambda_user * rho0 /
         (2.0 * kPi * kPi * p.r_los * p.r_los * sigma * tau_hat * t_ref);
}

}  // namespace mmnet
