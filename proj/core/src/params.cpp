#include "mmnet/params.hpp"

#include <sstream>

namespace mmnet {

NetworkParams paper_defaults() {
  NetworkParams p;
  p.beam.main_gain_ap = db_to_linear(20.0);
  p.beam.side_gain_ap = db_to_linear(0.0);
  p.beam.main_gain_user = db_to_linear(0.0);
  p.beam.side_gain_user = db_to_linear(-10.0);
  p.beam.main_width_ap = deg_to_rad(30.0);
  p.beam.main_width_user = deg_to_rad(90.0);
  p.k = 1;
  p.psi = 4.0;
  p.lambda_user = 1e4;
  p.r_los = 0.2;
  p.alpha_los = 2.0;
  p.mu = 10;
  p.bandwidth_total = 2e9;
  p.bias_factor = 1.28;
  return p;
}

std::vector<std::string> validate(const NetworkParams& p) {
  std::vector<std::string> issues;
  const BeamPattern& b = p.beam;
  if (!(b.main_gain_ap > b.side_gain_ap && b.side_gain_ap > 0.0))
    issues.push_back("beam gains must satisfy main_gain_ap > side_gain_ap > 0");
  if (!(b.main_gain_user > b.side_gain_user && b.side_gain_user > 0.0))
    issues.push_back("beam gains must satisfy main_gain_user > side_gain_user > 0");
  if (!(b.main_width_ap > 0.0 && b.main_width_ap <= 2.0 * kPi))
    issues.push_back("main_width_ap out of (0, 2pi]");
  if (!(b.main_width_user > 0.0 && b.main_width_user <= 2.0 * kPi))
    issues.push_back("main_width_user out of (0, 2pi]");
  if (p.k < 1) issues.push_back("k must be a positive integer");
  if (p.k >= 1 && p.k * b.main_width_ap > 2.0 * kPi + 1e-12)
    issues.push_back("k*theta_A exceeds 2pi");
  if (!(p.alpha_los > 0.0 && p.alpha_los <= 2.0))
    issues.push_back("alpha_los out of range (0, 2]");
  if (p.mu < 1 || p.mu > kMaxMu) issues.push_back("mu out of range [1, 20]");
  if (!(p.psi >= 0.0)) issues.push_back("psi must be >= 0");
  if (!(p.lambda_user > 0.0)) issues.push_back("lambda_user must be > 0");
  if (!(p.r_los > 0.0)) issues.push_back("r_los must be > 0");
  if (!(p.bandwidth_total > 0.0)) issues.push_back("bandwidth_total must be > 0");
  if (!(p.bias_factor > 0.0)) issues.push_back("bias_factor must be > 0");
  return issues;
}

namespace {
std::string join_issues(const std::vector<std::string>& issues) {
  std::ostringstream os;
  os << "invalid network parameters:";
  for (const auto& s : issues) os << "\n  - " << s;
  return os.str();
}
}  // namespace

ValidationError::ValidationError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

NetworkParams validated(NetworkParams p) {
  auto issues = validate(p);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return p;
}

double derive_ap_intensity(const NetworkParams& p) {
  return p.psi / (kPi * p.r_los * p.r_los);
}

GainMixture gain_mixture(const NetworkParams& p) {
  if (p.k * p.beam.main_width_ap > 2.0 * kPi + 1e-12)
    throw ValidationError({"k*theta_A exceeds 2pi"});
  const double p_main_ap = p.k * p.beam.main_width_ap / (2.0 * kPi);
  const double p_main_user = p.beam.main_width_user / (2.0 * kPi);
  const BeamPattern& b = p.beam;
  const double full = b.main_gain_ap * b.main_gain_user;
  GainMixture m;
  m.entries = {{
      {b.main_gain_ap * b.main_gain_user, 1.0, p_main_ap * p_main_user},
      {b.main_gain_ap * b.side_gain_user,
       b.main_gain_ap * b.side_gain_user / full,
       p_main_ap * (1.0 - p_main_user)},
      {b.side_gain_ap * b.main_gain_user,
       b.side_gain_ap * b.main_gain_user / full,
       (1.0 - p_main_ap) * p_main_user},
      {b.side_gain_ap * b.side_gain_user,
       b.side_gain_ap * b.side_gain_user / full,
       (1.0 - p_main_ap) * (1.0 - p_main_user)},
  }};
  return m;
}

}  // namespace mmnet
