#include "mmnet/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <list>

namespace mmnet {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule, abscissae >= 0.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct Panel {
  double a, b;
  double value;
  double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double resk = kWgk[7] * f(c);
  double resg = kWg[3] * f(c);
  for (int i = 0; i < 7; ++i) {
    const double x = h * kXgk[i];
    const double fsum = f(c - x) + f(c + x);
    resk += kWgk[i] * fsum;
    if (i % 2 == 1) resg += kWg[i / 2] * fsum;
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = resk * h;
  p.error = std::abs((resk - resg) * h);
  return p;
}

}  // namespace

double alzer_eta(int mu) {
  if (mu < 1 || mu > kMaxMu)
    throw std::invalid_argument("alzer_eta: mu out of range [1, 20]");
  return mu * std::exp(-std::lgamma(mu + 1.0) / mu);
}

std::int64_t binomial(int n, int j) {
  if (n < 0 || j < 0 || j > n || n > 62)
    throw std::invalid_argument("binomial: arguments out of range");
  std::int64_t c = 1;
  j = std::min(j, n - j);
  for (int i = 1; i <= j; ++i) c = c * (n - j + i) / i;
  return c;
}

double signed_binomial_sum(int mu, const std::function<double(int)>& term) {
  if (mu < 1 || mu > kMaxMu)
    throw std::invalid_argument("signed_binomial_sum: mu out of range [1, 20]");
  double acc = 0.0;
  for (int j = 1; j <= mu; ++j) {
    const double t = static_cast<double>(binomial(mu, j)) * term(j);
    acc += (j % 2 == 1) ? t : -t;
  }
  return acc;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureSpec& quad) {
  QuadratureResult res;
  if (a == b) return res;
  std::list<Panel> panels{gk15(f, a, b)};
  for (int iter = 0; iter < quad.max_subdivisions; ++iter) {
    double total = 0.0, err = 0.0;
    auto worst = panels.begin();
    for (auto it = panels.begin(); it != panels.end(); ++it) {
      total += it->value;
      err += it->error;
      if (it->error > worst->error) worst = it;
    }
    res.value = total;
    res.error_estimate = err;
    res.subdivisions = static_cast<int>(panels.size());
    if (err <= std::max(quad.abs_tol, quad.rel_tol * std::abs(total))) {
      res.converged = true;
      return res;
    }
    const double mid = 0.5 * (worst->a + worst->b);
    const Panel left = gk15(f, worst->a, mid);
    const Panel right = gk15(f, mid, worst->b);
    *worst = left;
    panels.insert(std::next(worst), right);
  }
  res.converged = false;
  return res;
}

double integrate_unit_interval(const std::function<double(double)>& f,
                               const QuadratureSpec& quad) {
  QuadratureResult r = integrate_adaptive(f, 0.0, 1.0, quad);
  if (!r.converged)
    throw QuadratureError("quadrature on (0,1) did not converge",
                          r.error_estimate);
  return r.value;
}

double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureSpec& quad,
                               const std::function<double(double)>& tail_bound) {
  double T = 1.0;
  while (tail_bound(T) >= 0.5 * quad.abs_tol) {
    T *= 10.0;
    if (T > 1e18)
      throw QuadratureError(
          "semi-infinite quadrature: tail bound does not reach tolerance",
          tail_bound(1e18));
  }
  // Decade-wise panels keep the adaptive rule on comfortable scales.
  double total = 0.0;
  double lo = 0.0, hi = 1.0;
  while (lo < T) {
    hi = std::min(hi, T);
    QuadratureResult r = integrate_adaptive(f, lo, hi, quad);
    if (!r.converged)
      throw QuadratureError("semi-infinite quadrature did not converge",
                            r.error_estimate);
    total += r.value;
    lo = hi;
    hi *= 10.0;
  }
  return total;
}

std::vector<double> integrate_unit_interval_vec(
    const std::function<void(double, std::vector<double>&)>& f, int dim,
    const QuadratureSpec& quad) {
  struct VPanel {
    double a, b;
    std::vector<double> value;
    double error;
  };
  auto eval_panel = [&](double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::vector<double> resk(dim, 0.0), resg(dim, 0.0), buf(dim, 0.0);
    f(c, buf);
    for (int d = 0; d < dim; ++d) {
      resk[d] = kWgk[7] * buf[d];
      resg[d] = kWg[3] * buf[d];
    }
    std::vector<double> fsum(dim, 0.0);
    for (int i = 0; i < 7; ++i) {
      const double x = h * kXgk[i];
      f(c - x, fsum);
      f(c + x, buf);
      for (int d = 0; d < dim; ++d) fsum[d] += buf[d];
      for (int d = 0; d < dim; ++d) {
        resk[d] += kWgk[i] * fsum[d];
        if (i % 2 == 1) resg[d] += kWg[i / 2] * fsum[d];
      }
    }
    VPanel p;
    p.a = a;
    p.b = b;
    p.value.resize(dim);
    p.error = 0.0;
    for (int d = 0; d < dim; ++d) {
      p.value[d] = resk[d] * h;
      p.error = std::max(p.error, std::abs((resk[d] - resg[d]) * h));
    }
    return p;
  };

  std::list<VPanel> panels{eval_panel(0.0, 1.0)};
  for (int iter = 0; iter < quad.max_subdivisions; ++iter) {
    std::vector<double> total(dim, 0.0);
    double err = 0.0, scale = 0.0;
    auto worst = panels.begin();
    for (auto it = panels.begin(); it != panels.end(); ++it) {
      for (int d = 0; d < dim; ++d) total[d] += it->value[d];
      err += it->error;
      if (it->error > worst->error) worst = it;
    }
    for (int d = 0; d < dim; ++d) scale = std::max(scale, std::abs(total[d]));
    if (err <= std::max(quad.abs_tol, quad.rel_tol * scale)) return total;
    const double mid = 0.5 * (worst->a + worst->b);
    VPanel left = eval_panel(worst->a, mid);
    VPanel right = eval_panel(mid, worst->b);
    *worst = std::move(left);
    panels.insert(std::next(worst), std::move(right));
  }
  throw QuadratureError("vector quadrature on (0,1) did not converge", -1.0);
}

double lambda_kernel(double tau, double r, double gain_ratio, int j,
                     const NetworkParams& params, const QuadratureSpec& quad) {
  if (!(tau >= 0.0)) throw std::invalid_argument("lambda_kernel: tau < 0");
  if (!(r > 0.0 && r <= 1.0))
    throw std::invalid_argument("lambda_kernel: r out of (0, 1]");
  if (gain_ratio < 0.0)
    throw std::invalid_argument("lambda_kernel: negative gain ratio");
  if (j < 1) throw std::invalid_argument("lambda_kernel: j < 1");
  if (r == 1.0) return 0.0;
  // tau->0 and G->0 are removable: the integrand limit gives exactly 1-r.
  if (tau == 0.0 || gain_ratio == 0.0) return 1.0 - r;

  const double alpha = params.alpha_los;
  const double eta = alzer_eta(params.mu);
  const double b = j * eta * tau * gain_ratio;
  const double a = b * std::pow(r, alpha / 2.0);
  // Lambda <= e^{-a}(1-r); below tolerance it is numerically zero.
  if (a > 45.0) return 0.0;

  // Substituting t = e^s spreads wide intervals evenly over decades.
  const double q = 2.0 / alpha;
  const double ln_a = std::log(a), ln_b = std::log(b);
  auto integrand = [&](double s) { return std::exp(q * (ln_b - s) - std::exp(s)); };
  QuadratureResult res = integrate_adaptive(integrand, ln_a, ln_b, quad);
  if (!res.converged)
    throw QuadratureError("lambda_kernel quadrature did not converge",
                          res.error_estimate);
  const double value = (2.0 * r / alpha) * res.value;
  return std::clamp(value, 0.0, 1.0 - r);
}

double expected_lambda(double tau, double r, int j, const NetworkParams& params,
                       const GainMixture& mix, const QuadratureSpec& quad) {
  double acc = 0.0;
  for (const auto& e : mix.entries) {
    if (e.probability == 0.0) continue;
    acc += e.probability * lambda_kernel(tau, r, e.gain_ratio, j, params, quad);
  }
  return acc;
}

double expected_lambda(double tau, double r, int j, const NetworkParams& params,
                       const QuadratureSpec& quad) {
  return expected_lambda(tau, r, j, params, gain_mixture(params), quad);
}

}  // namespace mmnet
