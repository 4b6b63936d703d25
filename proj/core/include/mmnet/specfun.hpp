#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "mmnet/params.hpp"

namespace mmnet {

struct QuadratureSpec {
  double abs_tol = 1e-9;
  double rel_tol = 1e-8;
  int max_subdivisions = 200;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}
  double achieved_error() const { return achieved_error_; }

 private:
  double achieved_error_;
};

// eta = mu * (mu!)^(-1/mu), the Alzer coefficient; log-factorial internally.
double alzer_eta(int mu);

// Exact C(n, j) for n <= 20 (fits in 64-bit).
std::int64_t binomial(int n, int j);

// sum_{j=1}^{mu} (-1)^{j+1} C(mu, j) term(j)
double signed_binomial_sum(int mu, const std::function<double(int)>& term);

// Adaptive Gauss-Kronrod (15-point) panel subdivision on [a, b].
struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
  bool converged = true;
};

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureSpec& quad);

// Throwing wrappers used by the analytic modules.
double integrate_unit_interval(const std::function<double(double)>& f,
                               const QuadratureSpec& quad);

// Integrates f over (0, inf), truncating at T where tail_bound(T) < abs_tol/2.
double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureSpec& quad,
                               const std::function<double(double)>& tail_bound);

// Vector-valued adaptive quadrature on (0, 1); error controlled on the
// max-abs component. f fills `out` (size dim) at each point.
std::vector<double> integrate_unit_interval_vec(
    const std::function<void(double, std::vector<double>&)>& f, int dim,
    const QuadratureSpec& quad);

// Lambda_j(tau, r, G) = (2r/alpha) (j eta tau G)^(2/alpha)
//                       int_{j eta tau G r^(alpha/2)}^{j eta tau G} t^(-2/alpha-1) e^-t dt
// with the analytic limit 1-r at tau=0 or G=0. Result clamped to [0, 1-r].
double lambda_kernel(double tau, double r, double gain_ratio, int j,
                     const NetworkParams& params, const QuadratureSpec& quad);

// Probability-weighted lambda_kernel over the four gain-mixture entries.
double expected_lambda(double tau, double r, int j, const NetworkParams& params,
                       const QuadratureSpec& quad);
double expected_lambda(double tau, double r, int j, const NetworkParams& params,
                       const GainMixture& mix, const QuadratureSpec& quad);

}  // namespace mmnet
