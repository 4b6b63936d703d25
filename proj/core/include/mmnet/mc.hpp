#pragma once

#include <cstdint>
#include <string>

#include "mmnet/coverage.hpp"
#include "mmnet/load.hpp"
#include "mmnet/params.hpp"

namespace mmnet {

enum class FadingModel { Deterministic, GammaMu };

// Interferer beam-gain handling; the forced modes realize the analytic
// sandwich bounds (all side lobes is optimistic, all main lobes pessimistic).
enum class InterfererGains { Mixture, AllMain, AllSide };

struct McConfig {
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  double window_radius = 0.0;  // km; 0 => 5 * r_los
  FadingModel fading = FadingModel::GammaMu;
  InterfererGains interferers = InterfererGains::Mixture;
  // Load estimator: false = histogram of user-count draws (one sample per
  // trial); true = conditional estimator that integrates the serving-sector
  // area per trial and accumulates the exact conditional Poisson PMF.
  // Both are unbiased for the same distribution; the conditional form
  // removes the user-sampling noise floor of the raw histogram.
  bool conditional_load = false;
  std::string record_path;  // optional per-trial CSV dump
};

struct McEstimate {
  double mean = 0.0;
  double half_width_95 = 0.0;
  std::int64_t trials = 0;
};

// Empirical network simulation on a Poisson point process; no analytic
// approximations. Deterministic for a fixed seed regardless of thread count.
McEstimate simulate_coverage(const CoverageQuery& q, const McConfig& mc);

// Empirical sector-load histogram for the tagged user's access point.
// Trials where the tagged user has no AP within r_los are excluded from the
// histogram; their count is reported via unserved_trials.
LoadPmf simulate_load(const NetworkParams& params, const McConfig& mc,
                      std::int64_t* unserved_trials = nullptr);

// Area throughput estimate lambda_user * rho * P[(B/Psi) log2(1+SIR) > rho]
// with (SIR, Psi) drawn jointly from one realization per trial.
McEstimate simulate_fixed_rate_throughput(double rho,
                                          const NetworkParams& params,
                                          const McConfig& mc);

}  // namespace mmnet
