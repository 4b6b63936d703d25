#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mmnet/params.hpp"
#include "mmnet/specfun.hpp"

namespace mmnet {

struct CoverageQuery {
  double tau = 1.0;  // linear SINR threshold, >= 0
  NetworkParams params;
};

enum class SweepAxis { Tau, Psi, K };

// Sample points of a coverage curve along one axis; failed points carry an
// error message instead of a value.
struct CoverageCurve {
  SweepAxis axis_kind = SweepAxis::Tau;
  std::vector<double> axis;
  std::vector<double> values;                          // NaN where failed
  std::vector<std::optional<std::string>> point_errors;
  NetworkParams meta;
  bool complete() const;
};

// Theorem-1 coverage probability C_psi(tau, k); clamped to [0, 1].
double coverage_probability(const CoverageQuery& q, const QuadratureSpec& quad);

// Nearest-LOS-AP distance law, r in km, defined on [0, R_B].
double nearest_distance_pdf(double r, const NetworkParams& p);
double nearest_distance_cdf(double r, const NetworkParams& p);

// fixed_tau applies when the axis is psi or k; a tau axis overrides it.
CoverageCurve coverage_sweep(SweepAxis axis_kind, const std::vector<double>& grid,
                             const NetworkParams& base, const QuadratureSpec& quad,
                             double fixed_tau = 1.0);

}  // namespace mmnet
