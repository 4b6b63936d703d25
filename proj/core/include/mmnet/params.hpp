#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmnet {

inline constexpr double kPi = 3.14159265358979323846;

// Gains are stored in linear power units; dB only at I/O boundaries.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// Sectorized beam model: main/side lobe gains and main lobe widths for the
// AP and the end-user.
struct BeamPattern {
  double main_gain_ap = 100.0;   // G_A, linear
  double side_gain_ap = 1.0;     // g_A, linear
  double main_gain_user = 1.0;   // G_U, linear
  double side_gain_user = 0.1;   // g_U, linear
  double main_width_ap = deg_to_rad(30.0);    // theta_A, rad
  double main_width_user = deg_to_rad(90.0);  // theta_U, rad
};

// Full scenario description. Distances in km, intensities in 1/km^2,
// bandwidth in Hz.
struct NetworkParams {
  BeamPattern beam;
  int k = 1;                    // spatial multiplexing gain (RF chains)
  double psi = 4.0;             // relative density, mean LOS AP count
  double lambda_user = 1e4;     // user intensity, 1/km^2
  double r_los = 0.2;           // LOS-ball radius, km
  double alpha_los = 2.0;       // LOS path-loss exponent, <= 2
  int mu = 10;                  // fading shape parameter
  double bandwidth_total = 2e9; // B, Hz
  double bias_factor = 1.28;    // xi, tagged-cell bias
};

// mu is capped: the alternating binomial sum degrades in double precision
// for larger shape parameters.
inline constexpr int kMaxMu = 20;

NetworkParams paper_defaults();

// Returns one message per violated invariant; empty means valid.
std::vector<std::string> validate(const NetworkParams& p);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

// Throws ValidationError listing every violated invariant.
NetworkParams validated(NetworkParams p);

// lambda_A = psi / (pi R_B^2)
double derive_ap_intensity(const NetworkParams& p);

// Joint distribution of the interferer precoding gain product G_A * G_U.
// Four entries: (main,main), (main,side), (side,main), (side,side).
struct GainMixture {
  struct Entry {
    double joint_gain;   // linear product of AP and user gains
    double gain_ratio;   // joint_gain / (G_A * G_U)
    double probability;
  };
  std::array<Entry, 4> entries;
};

GainMixture gain_mixture(const NetworkParams& p);

}  // namespace mmnet
