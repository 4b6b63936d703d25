#pragma once

#include <iosfwd>
#include <vector>

#include "mmnet/params.hpp"

namespace mmnet {

// Truncated PMF of the shared-resource user count Psi (support starts at 1:
// the tagged user always counts itself).
struct LoadPmf {
  struct Mass {
    int n;
    double p;
  };
  std::vector<Mass> masses;
  int truncation_n = 0;
  double tail_mass = 0.0;

  double total_mass() const;       // sum of listed masses
  double mean() const;             // E[Psi] over the listed masses
  double mean_inverse() const;     // E[1/Psi]
  double prob(int n) const;        // 0 outside the listed range
  void write_csv(std::ostream& os) const;  // columns: n, p
};

// Negative-binomial-type simplified PMF; requires psi >= 1.
LoadPmf load_pmf_simplified(const NetworkParams& params, double tail_tol = 1e-9);

// Full PMF with the regularized incomplete-gamma correction factors.
LoadPmf load_pmf_full(const NetworkParams& params, double tail_tol = 1e-9);

// Sector-area densities (y in km^2); zero above pi R_B^2 / k.
double sector_area_pdf(double y, const NetworkParams& params);
double biased_sector_area_pdf(double y, const NetworkParams& params);

// W-bar = B / (1 + xi pi R_B^2 lambda_U / (k psi)), Hz.
double mean_bandwidth(const NetworkParams& params);

// Total variation distance between two load PMFs.
double total_variation(const LoadPmf& a, const LoadPmf& b);

}  // namespace mmnet
