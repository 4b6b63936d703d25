// Command-line front end: evaluates coverage, load, and throughput metrics
// for the dense-mmWave downlink model and runs the Monte Carlo validator.
//
// Output is CSV. Scalar metrics share the stable header
//   axis,metric,value,psi,k,tau_db,rho_bps,seed
// while `load` emits (n,p) and `series` emits (l,c_l) tables.
//
// Exit codes: 0 success, 2 configuration/validation error, 3 numeric failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmnet/config_io.hpp"
#include "mmnet/coverage.hpp"
#include "mmnet/load.hpp"
#include "mmnet/mc.hpp"
#include "mmnet/params.hpp"
#include "mmnet/series.hpp"
#include "mmnet/specfun.hpp"
#include "mmnet/throughput.hpp"

namespace {

constexpr const char* kHeader = "axis,metric,value,psi,k,tau_db,rho_bps,seed";

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  os << v;
  return os.str();
}

struct Row {
  std::string axis;     // value of the swept variable ("" for point queries)
  std::string metric;
  double value = 0.0;
  double psi = 0.0;
  int k = 1;
  std::optional<double> tau_db;
  std::optional<double> rho_bps;
  std::optional<std::uint64_t> seed;

  std::string csv() const {
    std::ostringstream os;
    os << axis << ',' << metric << ',' << fmt(value) << ',' << fmt(psi) << ','
       << k << ',' << (tau_db ? fmt(*tau_db) : std::string()) << ','
       << (rho_bps ? fmt(*rho_bps) : std::string()) << ','
       << (seed ? std::to_string(*seed) : std::string());
    return os.str();
  }
};

// Writes to --out path or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) : path_(path) {
    if (!path_.empty()) {
      file_.open(path_);
      if (!file_) throw mmnet::ConfigError("cannot open output file: " + path_);
    }
  }
  std::ostream& os() { return path_.empty() ? std::cout : file_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream file_;
};

void emit_rows(Sink& sink, const std::vector<Row>& rows) {
  sink.os() << kHeader << '\n';
  for (const auto& r : rows) sink.os() << r.csv() << '\n';
}

void emit_gnuplot(const Sink& sink, const std::string& var,
                  const std::string& title) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!sink.path().empty()) {
    file.open(sink.path() + ".gp");
    out = &file;
  }
  const std::string data = sink.path().empty() ? "-" : sink.path();
  *out << "# gnuplot companion script\n"
       << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set xlabel '" << var << "'\n"
       << "set ylabel 'value'\n"
       << "set title '" << title << "'\n"
       << "plot '" << data << "' using 1:3 with linespoints\n";
}

// "1..12" or "a,b,c" or empty.
std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const double lo = std::stod(text.substr(0, dots));
    const double hi = std::stod(text.substr(dots + 2));
    for (double v = lo; v <= hi + 1e-9; v += 1.0) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  double psi = 0.0;
  int k = 0;
  bool have_psi = false, have_k = false;

  mmnet::NetworkParams resolve() const {
    mmnet::NetworkParams p = config_path.empty()
                                 ? mmnet::paper_defaults()
                                 : mmnet::load_params_file(config_path);
    if (have_psi) p.psi = psi;
    if (have_k) p.k = k;
    return mmnet::validated(p);
  }
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--config", c.config_path,
                  "JSON parameter file (flags override file values)");
  cmd->add_option("--out", c.out_path, "write CSV here instead of stdout");
  cmd->add_option("--psi", c.psi, "relative density (mean LOS APs per user)")
      ->check(CLI::PositiveNumber)
      ->each([&](const std::string&) { c.have_psi = true; });
  cmd->add_option("--k", c.k, "spatial multiplexing gain (sectors per AP)")
      ->check(CLI::PositiveNumber)
      ->each([&](const std::string&) { c.have_k = true; });
}

mmnet::LoadModel parse_load_model(const std::string& name) {
  if (name == "exact") return mmnet::LoadModel::ExactPmf;
  if (name == "mean-bandwidth") return mmnet::LoadModel::MeanBandwidth;
  throw mmnet::ConfigError("unknown load model: " + name +
                           " (expected exact|mean-bandwidth)");
}

int run(int argc, char** argv) {
  CLI::App app{
      "Closed-form and Monte Carlo performance metrics for dense downlink "
      "mmWave networks with sectorized (spatially multiplexed) access points"};
  app.require_subcommand(1);
  mmnet::QuadratureSpec quad;

  // ---- defaults ----
  auto* cmd_defaults = app.add_subcommand(
      "defaults", "print the default parameter set as JSON");
  std::string defaults_out;
  cmd_defaults->add_option("--out", defaults_out, "output path");

  // ---- coverage ----
  auto* cmd_cov = app.add_subcommand(
      "coverage", "coverage probability C(tau; psi, k) (Euclidean-disk model)");
  CommonOpts cov_c;
  add_common(cmd_cov, cov_c);
  double cov_tau_db = 10.0;
  cmd_cov->add_option("--tau-db", cov_tau_db, "SINR threshold in dB");

  // ---- series ----
  auto* cmd_series = app.add_subcommand(
      "series", "polynomial-in-k coverage coefficients c_l (CSV: l,c_l)");
  CommonOpts ser_c;
  add_common(cmd_series, ser_c);
  double ser_tau_db = 10.0;
  int ser_degree = -1;
  cmd_series->add_option("--tau-db", ser_tau_db, "SINR threshold in dB");
  cmd_series->add_option("--degree", ser_degree,
                         "truncation degree L (default: auto for 1e-8 error)");

  // ---- load ----
  auto* cmd_load = app.add_subcommand(
      "load", "PMF of the number of users sharing the tagged sector (CSV: n,p)");
  CommonOpts load_c;
  add_common(cmd_load, load_c);
  bool load_simplified = false;
  cmd_load->add_flag("--simplified", load_simplified,
                     "use the untruncated-cell approximation");

  // ---- throughput ----
  auto* cmd_tp = app.add_subcommand(
      "throughput", "area throughput of the fixed- or multi-rate scheme");
  CommonOpts tp_c;
  add_common(cmd_tp, tp_c);
  double tp_rho_mbps = 80.0;
  std::string tp_rates, tp_model = "exact";
  cmd_tp->add_option("--rho-mbps", tp_rho_mbps, "fixed rate threshold, Mbit/s");
  cmd_tp->add_option("--rates-mbps", tp_rates,
                     "comma list of multi-rate thresholds, Mbit/s");
  cmd_tp->add_option("--load-model", tp_model,
                     "exact|mean-bandwidth load treatment");

  // ---- upper-bound ----
  auto* cmd_ub = app.add_subcommand(
      "upper-bound", "Shannon-rate throughput upper bound");
  CommonOpts ub_c;
  add_common(cmd_ub, ub_c);
  double ub_cap = 1e6;
  cmd_ub->add_option("--tau-cap", ub_cap,
                     "upper integration limit in linear SINR");

  // ---- optimal-rate ----
  auto* cmd_opt = app.add_subcommand(
      "optimal-rate", "rate threshold maximizing fixed-rate throughput");
  CommonOpts opt_c;
  add_common(cmd_opt, opt_c);
  double opt_lo = 1.0, opt_hi = 1000.0;
  cmd_opt->add_option("--lo-mbps", opt_lo, "search bracket lower end, Mbit/s");
  cmd_opt->add_option("--hi-mbps", opt_hi, "search bracket upper end, Mbit/s");

  // ---- gain ----
  auto* cmd_gain = app.add_subcommand(
      "gain", "densification gain T(psi*rho0; psi, k) / T(rho0; 1, k)");
  CommonOpts gain_c;
  add_common(cmd_gain, gain_c);
  double gain_rho0 = 80.0;
  std::string gain_model = "exact";
  cmd_gain->add_option("--rho0-mbps", gain_rho0,
                       "baseline rate threshold at psi=1, Mbit/s");
  cmd_gain->add_option("--load-model", gain_model,
                       "exact|mean-bandwidth load treatment");

  // ---- threshold ----
  auto* cmd_thr = app.add_subcommand(
      "threshold", "coverage-maximizing relative density psi*");
  CommonOpts thr_c;
  add_common(cmd_thr, thr_c);
  double thr_tau_db = 10.0;
  cmd_thr->add_option("--tau-db", thr_tau_db, "SINR threshold in dB");

  // ---- simulate ----
  auto* cmd_sim = app.add_subcommand(
      "simulate", "Monte Carlo estimate (independent of the analytic path)");
  CommonOpts sim_c;
  add_common(cmd_sim, sim_c);
  std::string sim_what = "coverage";
  double sim_tau_db = 10.0, sim_rho_mbps = 80.0;
  std::uint64_t sim_trials = 100000, sim_seed = 1;
  std::string sim_record;
  cmd_sim->add_option("--what", sim_what, "coverage|load|throughput");
  cmd_sim->add_option("--tau-db", sim_tau_db, "SINR threshold in dB");
  cmd_sim->add_option("--rho-mbps", sim_rho_mbps, "rate threshold, Mbit/s");
  cmd_sim->add_option("--trials", sim_trials, "number of Monte Carlo trials");
  cmd_sim->add_option("--seed", sim_seed, "PRNG seed");
  cmd_sim->add_option("--record", sim_record,
                      "write per-trial records to this CSV path");

  // ---- sweep ----
  auto* cmd_swp = app.add_subcommand(
      "sweep", "evaluate metrics along one axis (tau|psi|k|rho)");
  CommonOpts swp_c;
  add_common(cmd_swp, swp_c);
  std::string swp_var = "psi", swp_values, swp_metrics = "coverage";
  double swp_from = 0.5, swp_to = 10.0, swp_tau_db = 10.0, swp_rho_mbps = 80.0;
  int swp_steps = 20;
  std::string swp_rates;
  bool swp_gnuplot = false;
  cmd_swp->add_option("--var", swp_var, "swept variable: tau|psi|k|rho");
  cmd_swp->add_option("--from", swp_from, "sweep start (dB for tau, Mbit/s for rho)");
  cmd_swp->add_option("--to", swp_to, "sweep end");
  cmd_swp->add_option("--steps", swp_steps, "number of grid points");
  cmd_swp->add_option("--values", swp_values,
                      "explicit list: a,b,c or lo..hi (integer step)");
  cmd_swp->add_option("--metric", swp_metrics,
                      "comma list: coverage,fixed,fixed-optimal,multi-rate,"
                      "upper-bound,gain");
  cmd_swp->add_option("--tau-db", swp_tau_db, "fixed SINR threshold in dB");
  cmd_swp->add_option("--rho-mbps", swp_rho_mbps, "fixed rate threshold, Mbit/s");
  cmd_swp->add_option("--rates-mbps", swp_rates,
                      "multi-rate thresholds for the multi-rate metric, Mbit/s");
  cmd_swp->add_flag("--gnuplot", swp_gnuplot, "emit a companion gnuplot script");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    if (*cmd_defaults) {
      Sink sink(defaults_out);
      sink.os() << mmnet::params_to_json(mmnet::paper_defaults()) << '\n';
      return 0;
    }

    if (*cmd_cov) {
      auto p = cov_c.resolve();
      mmnet::CoverageQuery q{mmnet::db_to_linear(cov_tau_db), p};
      const double v = mmnet::coverage_probability(q, quad);
      Sink sink(cov_c.out_path);
      emit_rows(sink, {Row{"", "coverage", v, p.psi, p.k, cov_tau_db,
                           std::nullopt, std::nullopt}});
      return 0;
    }

    if (*cmd_series) {
      auto p = ser_c.resolve();
      const int degree = ser_degree > 0
                             ? ser_degree
                             : mmnet::choose_degree(p.psi, p.mu, 1e-8);
      auto table = mmnet::compute_coefficients(
          mmnet::db_to_linear(ser_tau_db), p, degree, quad);
      Sink sink(ser_c.out_path);
      table.write_csv(sink.os());
      return 0;
    }

    if (*cmd_load) {
      auto p = load_c.resolve();
      auto pmf = load_simplified ? mmnet::load_pmf_simplified(p)
                                 : mmnet::load_pmf_full(p);
      Sink sink(load_c.out_path);
      pmf.write_csv(sink.os());
      return 0;
    }

    if (*cmd_tp) {
      auto p = tp_c.resolve();
      const auto model = parse_load_model(tp_model);
      Sink sink(tp_c.out_path);
      if (!tp_rates.empty()) {
        mmnet::RateSchedule sched;
        for (double m : parse_values(tp_rates)) sched.thresholds.push_back(m * 1e6);
        auto rep = mmnet::multi_rate_throughput(sched, p, quad, model);
        emit_rows(sink, {Row{"", "multi-rate", rep.value, p.psi, p.k,
                             std::nullopt, sched.thresholds.back(),
                             std::nullopt}});
      } else {
        auto rep = mmnet::fixed_rate_throughput(tp_rho_mbps * 1e6, p, quad, model);
        emit_rows(sink, {Row{"", "fixed", rep.value, p.psi, p.k, std::nullopt,
                             rep.rho, std::nullopt}});
      }
      return 0;
    }

    if (*cmd_ub) {
      auto p = ub_c.resolve();
      mmnet::UpperBoundOptions opts;
      opts.tau_cap = ub_cap;
      auto rep = mmnet::throughput_upper_bound(p, quad, opts);
      Sink sink(ub_c.out_path);
      emit_rows(sink, {Row{"", "upper-bound", rep.value, p.psi, p.k,
                           std::nullopt, std::nullopt, std::nullopt}});
      return 0;
    }

    if (*cmd_opt) {
      auto p = opt_c.resolve();
      auto res = mmnet::optimal_rate_threshold(p, opt_lo * 1e6, opt_hi * 1e6, quad);
      Sink sink(opt_c.out_path);
      emit_rows(sink,
                {Row{"", "optimal-rate", res.argmax, p.psi, p.k, std::nullopt,
                     res.argmax, std::nullopt},
                 Row{"", "optimal-throughput", res.value, p.psi, p.k,
                     std::nullopt, res.argmax, std::nullopt}});
      if (res.boundary_maximum)
        std::cerr << "warning: maximum at bracket boundary\n";
      return 0;
    }

    if (*cmd_gain) {
      auto p = gain_c.resolve();
      const auto model = parse_load_model(gain_model);
      const double v = mmnet::densification_gain(p.psi, p, gain_rho0 * 1e6,
                                                 quad, model);
      Sink sink(gain_c.out_path);
      emit_rows(sink, {Row{"", "gain", v, p.psi, p.k, std::nullopt,
                           gain_rho0 * 1e6, std::nullopt}});
      return 0;
    }

    if (*cmd_thr) {
      auto p = thr_c.resolve();
      std::vector<double> grid;
      for (double s = 0.25; s <= 12.0; s += 0.25) grid.push_back(s);
      auto res = mmnet::density_threshold(mmnet::db_to_linear(thr_tau_db), p.k,
                                          p, grid, quad);
      Sink sink(thr_c.out_path);
      emit_rows(sink,
                {Row{"", "density-threshold", res.argmax, res.argmax, p.k,
                     thr_tau_db, std::nullopt, std::nullopt}});
      if (res.boundary_maximum)
        std::cerr << "warning: maximum at grid boundary\n";
      return 0;
    }

    if (*cmd_sim) {
      auto p = sim_c.resolve();
      mmnet::McConfig mc;
      mc.trials = sim_trials;
      mc.seed = sim_seed;
      mc.record_path = sim_record;
      Sink sink(sim_c.out_path);
      if (sim_what == "coverage") {
        mmnet::CoverageQuery q{mmnet::db_to_linear(sim_tau_db), p};
        auto est = mmnet::simulate_coverage(q, mc);
        emit_rows(sink,
                  {Row{"", "mc-coverage", est.mean, p.psi, p.k, sim_tau_db,
                       std::nullopt, sim_seed},
                   Row{"", "mc-coverage-halfwidth", est.half_width_95, p.psi,
                       p.k, sim_tau_db, std::nullopt, sim_seed}});
      } else if (sim_what == "load") {
        auto pmf = mmnet::simulate_load(p, mc);
        pmf.write_csv(sink.os());
      } else if (sim_what == "throughput") {
        auto est = mmnet::simulate_fixed_rate_throughput(sim_rho_mbps * 1e6, p, mc);
        emit_rows(sink,
                  {Row{"", "mc-throughput", est.mean, p.psi, p.k, std::nullopt,
                       sim_rho_mbps * 1e6, sim_seed},
                   Row{"", "mc-throughput-halfwidth", est.half_width_95, p.psi,
                       p.k, std::nullopt, sim_rho_mbps * 1e6, sim_seed}});
      } else {
        throw mmnet::ConfigError("unknown --what: " + sim_what);
      }
      return 0;
    }

    if (*cmd_swp) {
      auto base = swp_c.resolve();
      std::vector<double> grid = parse_values(swp_values);
      if (grid.empty()) {
        if (swp_steps < 2) throw mmnet::ConfigError("--steps must be >= 2");
        for (int i = 0; i < swp_steps; ++i)
          grid.push_back(swp_from +
                         (swp_to - swp_from) * i / (swp_steps - 1));
      }
      const auto metrics = split_list(swp_metrics);
      if (metrics.empty()) throw mmnet::ConfigError("no metric given");

      mmnet::RateSchedule sched;
      if (!swp_rates.empty())
        for (double m : parse_values(swp_rates)) sched.thresholds.push_back(m * 1e6);

      std::vector<Row> rows;
      std::optional<mmnet::CoverageTable> cached;  // reusable when psi,k fixed
      for (double x : grid) {
        mmnet::NetworkParams p = base;
        double tau_db = swp_tau_db, rho = swp_rho_mbps * 1e6;
        if (swp_var == "psi") p.psi = x;
        else if (swp_var == "k") p.k = static_cast<int>(std::lround(x));
        else if (swp_var == "tau") tau_db = x;
        else if (swp_var == "rho") rho = x * 1e6;
        else throw mmnet::ConfigError("unknown --var: " + swp_var);
        p = mmnet::validated(p);

        const bool table_reusable = (swp_var == "tau" || swp_var == "rho");
        const mmnet::CoverageTable* table = nullptr;
        std::optional<mmnet::CoverageTable> local;
        auto need_table = [&]() -> const mmnet::CoverageTable* {
          if (table) return table;
          if (table_reusable) {
            if (!cached) cached.emplace(p, quad);
            table = &*cached;
          } else {
            local.emplace(p, quad);
            table = &*local;
          }
          return table;
        };

        for (const auto& m : metrics) {
          Row row{fmt(x), m, 0.0, p.psi, p.k, std::nullopt, std::nullopt,
                  std::nullopt};
          if (m == "coverage") {
            mmnet::CoverageQuery q{mmnet::db_to_linear(tau_db), p};
            row.value = mmnet::coverage_probability(q, quad);
            row.tau_db = tau_db;
          } else if (m == "fixed") {
            row.value = mmnet::fixed_rate_throughput(
                            rho, p, quad, mmnet::LoadModel::ExactPmf,
                            need_table())
                            .value;
            row.rho_bps = rho;
          } else if (m == "fixed-optimal") {
            auto res = mmnet::optimal_rate_threshold(
                p, 1e6, 1e9, quad, mmnet::LoadModel::ExactPmf, need_table());
            row.value = res.value;
            row.rho_bps = res.argmax;
          } else if (m == "multi-rate") {
            if (sched.thresholds.empty())
              throw mmnet::ConfigError("multi-rate metric needs --rates-mbps");
            row.value = mmnet::multi_rate_throughput(
                            sched, p, quad, mmnet::LoadModel::ExactPmf,
                            need_table())
                            .value;
            row.rho_bps = sched.thresholds.back();
          } else if (m == "upper-bound") {
            row.value = mmnet::throughput_upper_bound(p, quad, {}, need_table())
                            .value;
          } else if (m == "gain") {
            mmnet::NetworkParams b1 = base;
            row.value = mmnet::densification_gain(p.psi, b1, rho, quad);
            row.rho_bps = rho;
          } else {
            throw mmnet::ConfigError("unknown metric: " + m);
          }
          rows.push_back(row);
        }
      }
      Sink sink(swp_c.out_path);
      emit_rows(sink, rows);
      if (swp_gnuplot) emit_gnuplot(sink, swp_var, "sweep over " + swp_var);
      return 0;
    }
  } catch (const mmnet::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const mmnet::ValidationError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const mmnet::QuadratureError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
