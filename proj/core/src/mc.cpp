#include "mmnet/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "mmnet/parallel.hpp"

namespace mmnet {
namespace {

constexpr std::int64_t kBatchSize = 4096;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 batch_engine(std::uint64_t seed, std::size_t batch) {
  std::uint64_t s = seed ^ (0xd1b54a32d192ed03ULL * (batch + 1));
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

struct TrialRecord {
  std::int64_t trial;
  std::int64_t n_aps;
  double sir_db;
  std::int64_t psi_count;
};

void write_records(const std::string& path,
                   const std::vector<std::vector<TrialRecord>>& per_batch) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open record file: " + path);
  out << "trial,n_aps,sir_db,psi_count\n";
  for (const auto& batch : per_batch) {
    for (const auto& r : batch) {
      out << r.trial << ',' << r.n_aps << ',' << r.sir_db << ','
          << r.psi_count << '\n';
    }
  }
}

struct Point {
  double x;
  double y;
};

double dist2(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Cumulative joint-gain sampler over the four beam alignment cases.
struct GainSampler {
  double cum[4];
  double gain[4];
  InterfererGains mode;
  double all_main;
  double all_side;

  GainSampler(const NetworkParams& p, InterfererGains m) : mode(m) {
    const GainMixture mix = gain_mixture(p);
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
      acc += mix.entries[i].probability;
      cum[i] = acc;
      gain[i] = mix.entries[i].joint_gain;
    }
    cum[3] = 1.0;
    all_main = p.beam.main_gain_ap * p.beam.main_gain_user;
    all_side = p.beam.side_gain_ap * p.beam.side_gain_user;
  }

  double operator()(std::mt19937_64& rng,
                    std::uniform_real_distribution<double>& unit) const {
    // Always consume one draw so forced modes see the same realizations as
    // the mixture for a given seed (pointwise sandwich ordering).
    const double u = unit(rng);
    if (mode == InterfererGains::AllMain) return all_main;
    if (mode == InterfererGains::AllSide) return all_side;
    for (int i = 0; i < 3; ++i) {
      if (u < cum[i]) return gain[i];
    }
    return gain[3];
  }
};

McConfig resolved_config(const McConfig& mc, const NetworkParams& p) {
  McConfig c = mc;
  if (c.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (c.window_radius == 0.0) c.window_radius = 5.0 * p.r_los;
  if (!(c.window_radius >= p.r_los)) {
    throw std::invalid_argument("window_radius must be >= r_los");
  }
  return c;
}

std::size_t batch_count(std::int64_t trials) {
  return static_cast<std::size_t>((trials + kBatchSize - 1) / kBatchSize);
}

std::int64_t batch_trials(std::int64_t trials, std::size_t batch) {
  const std::int64_t lo = static_cast<std::int64_t>(batch) * kBatchSize;
  return std::min<std::int64_t>(kBatchSize, trials - lo);
}

Point uniform_in_disk(std::mt19937_64& rng,
                      std::uniform_real_distribution<double>& unit,
                      double radius, Point center = {0.0, 0.0}) {
  const double r = radius * std::sqrt(unit(rng));
  const double phi = 2.0 * kPi * unit(rng);
  return {center.x + r * std::cos(phi), center.y + r * std::sin(phi)};
}

int sector_index(double angle, double rotation, int k) {
  double a = std::fmod(angle - rotation, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  int idx = static_cast<int>(a / (2.0 * kPi / k));
  if (idx >= k) idx = k - 1;
  return idx;
}

// Sector-load draw for the access point at x0 serving the tagged user at the
// origin. aps holds every AP; only those within 2*r_los of x0 can win a user
// inside disk(x0, r_los), so the rest are skipped.
std::int64_t draw_sector_load(const NetworkParams& p, Point x0,
                              const std::vector<Point>& aps,
                              std::size_t x0_index, std::mt19937_64& rng,
                              std::uniform_real_distribution<double>& unit) {
  const double rotation = 2.0 * kPi * unit(rng);
  const double tagged_angle = std::atan2(-x0.y, -x0.x);
  const int tagged_sector = sector_index(tagged_angle, rotation, p.k);

  std::vector<Point> cand;  // offsets from x0
  const double reach2 = 4.0 * p.r_los * p.r_los;
  for (std::size_t i = 0; i < aps.size(); ++i) {
    if (i == x0_index) continue;
    const double d2 = dist2(aps[i], x0);
    if (d2 <= reach2) cand.push_back({aps[i].x - x0.x, aps[i].y - x0.y});
  }
  std::sort(cand.begin(), cand.end(), [](Point a, Point b) {
    return a.x * a.x + a.y * a.y < b.x * b.x + b.y * b.y;
  });

  std::poisson_distribution<std::int64_t> n_users(p.lambda_user * kPi *
                                                  p.r_los * p.r_los);
  const std::int64_t m = n_users(rng);
  std::int64_t load = 1;  // the tagged user
  for (std::int64_t j = 0; j < m; ++j) {
    const Point u = uniform_in_disk(rng, unit, p.r_los);  // relative to x0
    const double du2 = u.x * u.x + u.y * u.y;
    if (sector_index(std::atan2(u.y, u.x), rotation, p.k) != tagged_sector) {
      continue;
    }
    bool ours = true;
    for (const Point& c : cand) {
      const double dx = u.x - c.x;
      const double dy = u.y - c.y;
      if (dx * dx + dy * dy < du2) {
        ours = false;
        break;
      }
    }
    if (ours) ++load;
  }
  return load;
}

// Exact area of {u in disk(x0, r_los) : sector(u) == tagged sector and x0 is
// the nearest AP}, by composite Simpson integration of R(phi)^2 / 2 over the
// tagged wedge, where R(phi) is the radial extent of the Voronoi cell
// clipped to the LOS ball.
double sector_serving_area(const NetworkParams& p, Point x0,
                           const std::vector<Point>& aps,
                           std::size_t x0_index, double rotation,
                           int tagged_sector) {
  struct HalfPlane {
    double angle;
    double half_dist;  // |c| / 2
  };
  std::vector<HalfPlane> cons;
  const double reach2 = 4.0 * p.r_los * p.r_los;
  for (std::size_t i = 0; i < aps.size(); ++i) {
    if (i == x0_index) continue;
    const double dx = aps[i].x - x0.x;
    const double dy = aps[i].y - x0.y;
    const double d2 = dx * dx + dy * dy;
    if (d2 <= reach2) {
      cons.push_back({std::atan2(dy, dx), 0.5 * std::sqrt(d2)});
    }
  }
  auto radial = [&](double phi) {
    double r = p.r_los;
    for (const HalfPlane& h : cons) {
      const double c = std::cos(phi - h.angle);
      if (c > 0.0) r = std::min(r, h.half_dist / c);
    }
    return r;
  };
  const double width = 2.0 * kPi / p.k;
  const double lo = rotation + tagged_sector * width;
  constexpr int kPanels = 512;  // even; Simpson rule
  const double h = width / kPanels;
  double sum = 0.0;
  for (int i = 0; i <= kPanels; ++i) {
    const double r = radial(lo + i * h);
    const double f = 0.5 * r * r;
    sum += (i == 0 || i == kPanels) ? f : (i % 2 == 1 ? 4.0 * f : 2.0 * f);
  }
  return sum * h / 3.0;
}

// Adds the conditional PMF of 1 + Poisson(lambda_U * area) to acc.
void accumulate_conditional_pmf(double poisson_mean, std::vector<double>& acc) {
  const double m = poisson_mean;
  const double spread = 10.0 * std::sqrt(m) + 20.0;
  const std::int64_t j0 =
      std::max<std::int64_t>(0, static_cast<std::int64_t>(m - spread));
  const std::int64_t j1 = static_cast<std::int64_t>(m + spread) + 1;
  if (static_cast<std::size_t>(j1) + 2 > acc.size()) {
    acc.resize(static_cast<std::size_t>(j1) + 2, 0.0);
  }
  double logp = -m + static_cast<double>(j0) * std::log(m > 0.0 ? m : 1.0) -
                std::lgamma(static_cast<double>(j0) + 1.0);
  double pj = std::exp(logp);
  for (std::int64_t j = j0; j <= j1; ++j) {
    acc[static_cast<std::size_t>(j) + 1] += pj;  // load n = j + 1
    pj *= m / static_cast<double>(j + 1);
  }
}

}  // namespace

McEstimate simulate_coverage(const CoverageQuery& q, const McConfig& mc_in) {
  const NetworkParams p = validated(q.params);
  if (!(q.tau >= 0.0) || !std::isfinite(q.tau)) {
    throw std::invalid_argument("tau must be finite and >= 0");
  }
  const McConfig mc = resolved_config(mc_in, p);
  const GainSampler gains(p, mc.interferers);
  const std::size_t nb = batch_count(mc.trials);
  std::vector<std::int64_t> covered(nb, 0);
  std::vector<std::vector<TrialRecord>> records(nb);
  const bool keep_records = !mc.record_path.empty();

  parallel_for(nb, [&](std::size_t b) {
    std::mt19937_64 rng = batch_engine(mc.seed, b);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::poisson_distribution<std::int64_t> n_aps(p.psi);
    std::gamma_distribution<double> fade(static_cast<double>(p.mu),
                                         1.0 / static_cast<double>(p.mu));
    const std::int64_t nt = batch_trials(mc.trials, b);
    std::int64_t hits = 0;
    for (std::int64_t t = 0; t < nt; ++t) {
      const std::int64_t n = n_aps(rng);
      double sir = -1.0;
      bool cov = false;
      if (n > 0) {
        // Only distances matter; angles are isotropic and integrate out.
        double d_serv = std::numeric_limits<double>::infinity();
        std::vector<double> d(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i) {
          d[static_cast<std::size_t>(i)] = p.r_los * std::sqrt(unit(rng));
          d_serv = std::min(d_serv, d[static_cast<std::size_t>(i)]);
        }
        const double h = mc.fading == FadingModel::GammaMu ? fade(rng) : 1.0;
        const double signal = p.beam.main_gain_ap * p.beam.main_gain_user * h *
                              std::pow(d_serv, -p.alpha_los);
        double interf = 0.0;
        bool skipped_serving = false;
        for (std::int64_t i = 0; i < n; ++i) {
          const double di = d[static_cast<std::size_t>(i)];
          if (!skipped_serving && di == d_serv) {
            skipped_serving = true;
            continue;
          }
          interf += gains(rng, unit) * std::pow(di, -p.alpha_los);
        }
        if (interf == 0.0) {
          cov = true;
          sir = std::numeric_limits<double>::infinity();
        } else {
          sir = signal / interf;
          cov = sir > q.tau;
        }
      }
      if (cov) ++hits;
      if (keep_records) {
        records[b].push_back({static_cast<std::int64_t>(b) * kBatchSize + t, n,
                              sir > 0.0 ? 10.0 * std::log10(sir)
                                        : -std::numeric_limits<double>::infinity(),
                              0});
      }
    }
    covered[b] = hits;
  });

  std::int64_t total = 0;
  for (std::int64_t c : covered) total += c;
  write_records(mc.record_path, records);
  McEstimate est;
  est.trials = mc.trials;
  const double phat = static_cast<double>(total) / static_cast<double>(mc.trials);
  est.mean = phat;
  est.half_width_95 =
      1.96 * std::sqrt(phat * (1.0 - phat) / static_cast<double>(mc.trials));
  return est;
}

LoadPmf simulate_load(const NetworkParams& params, const McConfig& mc_in,
                      std::int64_t* unserved_trials) {
  const NetworkParams p = validated(params);
  const McConfig mc = resolved_config(mc_in, p);
  const double lambda_ap = derive_ap_intensity(p);
  const std::size_t nb = batch_count(mc.trials);
  std::vector<std::vector<double>> hist(nb);
  std::vector<std::int64_t> unserved(nb, 0);
  std::vector<std::vector<TrialRecord>> records(nb);
  const bool keep_records = !mc.record_path.empty();

  parallel_for(nb, [&](std::size_t b) {
    std::mt19937_64 rng = batch_engine(mc.seed, b);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::poisson_distribution<std::int64_t> n_aps(
        lambda_ap * kPi * mc.window_radius * mc.window_radius);
    const std::int64_t nt = batch_trials(mc.trials, b);
    std::vector<Point> aps;
    for (std::int64_t t = 0; t < nt; ++t) {
      const std::int64_t n = n_aps(rng);
      aps.clear();
      aps.reserve(static_cast<std::size_t>(n));
      std::size_t nearest = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::int64_t i = 0; i < n; ++i) {
        const Point a = uniform_in_disk(rng, unit, mc.window_radius);
        const double d2 = a.x * a.x + a.y * a.y;
        if (d2 < best) {
          best = d2;
          nearest = static_cast<std::size_t>(i);
        }
        aps.push_back(a);
      }
      std::int64_t load = -1;
      if (n > 0 && best <= p.r_los * p.r_los) {
        auto& h = hist[b];
        if (mc.conditional_load) {
          const double rotation = 2.0 * kPi * unit(rng);
          const Point x0 = aps[nearest];
          const int tagged = sector_index(std::atan2(-x0.y, -x0.x), rotation, p.k);
          const double area =
              sector_serving_area(p, x0, aps, nearest, rotation, tagged);
          accumulate_conditional_pmf(p.lambda_user * area, h);
        } else {
          load = draw_sector_load(p, aps[nearest], aps, nearest, rng, unit);
          if (static_cast<std::size_t>(load) >= h.size()) {
            h.resize(static_cast<std::size_t>(load) + 1, 0.0);
          }
          h[static_cast<std::size_t>(load)] += 1.0;
        }
      } else {
        ++unserved[b];
      }
      if (keep_records) {
        records[b].push_back({static_cast<std::int64_t>(b) * kBatchSize + t, n,
                              std::numeric_limits<double>::quiet_NaN(), load});
      }
    }
  });

  std::vector<double> total;
  std::int64_t unserved_total = 0;
  for (std::size_t b = 0; b < nb; ++b) {
    if (hist[b].size() > total.size()) total.resize(hist[b].size(), 0.0);
    for (std::size_t i = 0; i < hist[b].size(); ++i) total[i] += hist[b][i];
    unserved_total += unserved[b];
  }
  write_records(mc.record_path, records);
  if (unserved_trials != nullptr) *unserved_trials = unserved_total;

  const std::int64_t served = mc.trials - unserved_total;
  LoadPmf pmf;
  pmf.truncation_n = total.empty() ? 0 : static_cast<int>(total.size()) - 1;
  pmf.tail_mass = 0.0;
  if (served <= 0) return pmf;
  // Contiguous support from n=1 (LoadPmf::prob indexes by offset).
  for (std::size_t nload = 1; nload < total.size(); ++nload) {
    pmf.masses.push_back(
        {static_cast<int>(nload), total[nload] / static_cast<double>(served)});
  }
  return pmf;
}

McEstimate simulate_fixed_rate_throughput(double rho,
                                          const NetworkParams& params,
                                          const McConfig& mc_in) {
  const NetworkParams p = validated(params);
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw std::invalid_argument("rate threshold must be finite and positive");
  }
  const McConfig mc = resolved_config(mc_in, p);
  const double lambda_ap = derive_ap_intensity(p);
  const GainSampler gains(p, mc.interferers);
  const std::size_t nb = batch_count(mc.trials);
  std::vector<std::int64_t> hits(nb, 0);
  std::vector<std::vector<TrialRecord>> records(nb);
  const bool keep_records = !mc.record_path.empty();

  parallel_for(nb, [&](std::size_t b) {
    std::mt19937_64 rng = batch_engine(mc.seed, b);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::poisson_distribution<std::int64_t> n_aps(
        lambda_ap * kPi * mc.window_radius * mc.window_radius);
    std::gamma_distribution<double> fade(static_cast<double>(p.mu),
                                         1.0 / static_cast<double>(p.mu));
    const std::int64_t nt = batch_trials(mc.trials, b);
    std::int64_t ok = 0;
    std::vector<Point> aps;
    for (std::int64_t t = 0; t < nt; ++t) {
      const std::int64_t n = n_aps(rng);
      aps.clear();
      aps.reserve(static_cast<std::size_t>(n));
      std::size_t nearest = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::int64_t i = 0; i < n; ++i) {
        const Point a = uniform_in_disk(rng, unit, mc.window_radius);
        const double d2 = a.x * a.x + a.y * a.y;
        if (d2 < best) {
          best = d2;
          nearest = static_cast<std::size_t>(i);
        }
        aps.push_back(a);
      }
      double sir = std::numeric_limits<double>::quiet_NaN();
      std::int64_t load = -1;
      bool success = false;
      if (n > 0 && best <= p.r_los * p.r_los) {
        const double h = mc.fading == FadingModel::GammaMu ? fade(rng) : 1.0;
        const double signal = p.beam.main_gain_ap * p.beam.main_gain_user * h *
                              std::pow(std::sqrt(best), -p.alpha_los);
        double interf = 0.0;
        const double los2 = p.r_los * p.r_los;
        for (std::size_t i = 0; i < aps.size(); ++i) {
          if (i == nearest) continue;
          const double d2 = aps[i].x * aps[i].x + aps[i].y * aps[i].y;
          if (d2 > los2) continue;
          interf += gains(rng, unit) * std::pow(std::sqrt(d2), -p.alpha_los);
        }
        load = draw_sector_load(p, aps[nearest], aps, nearest, rng, unit);
        if (interf == 0.0) {
          sir = std::numeric_limits<double>::infinity();
          success = true;
        } else {
          sir = signal / interf;
          success = (p.bandwidth_total / static_cast<double>(load)) *
                        std::log2(1.0 + sir) >
                    rho;
        }
      }
      if (success) ++ok;
      if (keep_records) {
        records[b].push_back({static_cast<std::int64_t>(b) * kBatchSize + t, n,
                              sir > 0.0 ? 10.0 * std::log10(sir)
                                        : -std::numeric_limits<double>::infinity(),
                              load});
      }
    }
    hits[b] = ok;
  });

  std::int64_t total = 0;
  for (std::int64_t c : hits) total += c;
  write_records(mc.record_path, records);
  McEstimate est;
  est.trials = mc.trials;
  const double phat = static_cast<double>(total) / static_cast<double>(mc.trials);
  est.mean = p.lambda_user * rho * phat;
  est.half_width_95 = p.lambda_user * rho * 1.96 *
                      std::sqrt(phat * (1.0 - phat) /
                                static_cast<double>(mc.trials));
  return est;
}

}  // namespace mmnet
