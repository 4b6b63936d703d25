#pragma once

#include <vector>

#include "mmnet/coverage.hpp"
#include "mmnet/load.hpp"
#include "mmnet/params.hpp"
#include "mmnet/specfun.hpp"

namespace mmnet {

// Ascending positive rate thresholds {rho_i}, bit/s.
struct RateSchedule {
  std::vector<double> thresholds;
};
RateSchedule validated_schedule(RateSchedule s);

enum class ThroughputKind { Fixed, Multi, UpperBound };

// How the per-user bandwidth B/Psi enters the SINR threshold:
//  ExactPmf      — expectation over the load PMF (the theorem-exact form)
//  MeanBandwidth — single evaluation at rho / W-bar (the approximation the
//                  densification-gain lemmas use)
enum class LoadModel { ExactPmf, MeanBandwidth };

struct ThroughputReport {
  double value = 0.0;  // bit/s/km^2
  ThroughputKind kind = ThroughputKind::Fixed;
  double psi = 0.0;
  int k = 1;
  double rho = 0.0;  // bit/s; 0 for kinds without a single threshold
};

// Tabulated coverage vs log10(tau) with monotone cubic interpolation.
// Beyond the grid the curve is flat: the tau->0 limit below, the
// single-AP SIR floor psi e^{-psi} above.
class CoverageTable {
 public:
  CoverageTable(const NetworkParams& params, const QuadratureSpec& quad,
                double log10_lo = -9.0, double log10_hi = 12.0,
                double step = 0.1);
  double operator()(double tau) const;
  // Coverage at tau = 2^x - 1 without forming 2^x (x may be thousands).
  double at_log2_exponent(double x) const;
  double floor() const { return floor_; }
  const NetworkParams& params() const { return params_; }

 private:
  NetworkParams params_;
  std::vector<double> logt_;
  std::vector<double> val_;
  std::vector<double> slope_;
  double floor_ = 0.0;
};

// Theorem-4 fixed-rate throughput T(rho; psi, k). With ExactPmf a coverage
// table is required (pass one; they are expensive to build and reusable).
ThroughputReport fixed_rate_throughput(double rho, const NetworkParams& params,
                                       const QuadratureSpec& quad,
                                       LoadModel model = LoadModel::ExactPmf,
                                       const CoverageTable* table = nullptr);

ThroughputReport multi_rate_throughput(const RateSchedule& schedule,
                                       const NetworkParams& params,
                                       const QuadratureSpec& quad,
                                       LoadModel model = LoadModel::ExactPmf,
                                       const CoverageTable* table = nullptr);

// Shannon-rate upper bound via the spectral-efficiency identity
// log2(e) * int C(tau)/(1+tau) dtau. The integral only converges up to the
// SIR floor, so it is truncated at tau_cap (see README); both evaluation
// paths use the same cap.
struct UpperBoundOptions {
  double tau_cap = 1e6;
  bool direct_coverage = false;  // quadrature on C(tau) instead of the table
};
ThroughputReport throughput_upper_bound(const NetworkParams& params,
                                        const QuadratureSpec& quad,
                                        const UpperBoundOptions& opts = {},
                                        const CoverageTable* table = nullptr);

// Theorem-5-literal cross-check: sum_l k^l int c_l(tau)/(1+tau) dtau with
// the same tau cap.
double upper_bound_via_series(const NetworkParams& params,
                              const QuadratureSpec& quad, double tau_cap,
                              int degree);

struct SearchResult {
  double argmax = 0.0;
  double value = 0.0;
  bool boundary_maximum = false;
};

// Golden-section maximization of T(rho) over log-rho within [rho_lo, rho_hi];
// falls back to the scan grid when an endpoint dominates.
SearchResult optimal_rate_threshold(const NetworkParams& params, double rho_lo,
                                    double rho_hi, const QuadratureSpec& quad,
                                    LoadModel model = LoadModel::ExactPmf,
                                    const CoverageTable* table = nullptr,
                                    double rel_tol = 1e-3);

// gamma(psi, k) = T(psi rho0; psi, k) / T(rho0; 1, k).
double densification_gain(double psi, const NetworkParams& params_at_psi1,
                          double rho0, const QuadratureSpec& quad,
                          LoadModel model = LoadModel::ExactPmf,
                          const CoverageTable* table_num = nullptr,
                          const CoverageTable* table_den = nullptr);

// Coverage-maximizing relative density over a psi grid, golden-refined to
// resolution 0.05.
SearchResult density_threshold(double tau, int k, const NetworkParams& params,
                               const std::vector<double>& psi_grid,
                               const QuadratureSpec& quad);

// Finite constant bounding gamma(psi, 1) as psi grows; sigma needs an
// explicit cutoff when alpha_los == 2.
double asymptotic_gain_bound(const NetworkParams& params, double rho0,
                             double eps_cutoff, const QuadratureSpec& quad);

}  // namespace mmnet
