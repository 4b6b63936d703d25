#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "mmnet/params.hpp"
#include "mmnet/specfun.hpp"

using namespace mmnet;

namespace {
const QuadratureSpec kQuad;

// Plain composite-Simpson reference integrator (independent of the adaptive
// quadrature under test).
double simpson(const std::function<double(double)>& f, double a, double b,
               int panels) {
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i)
    acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}
}  // namespace

TEST_SUITE("specfun") {

TEST_CASE("fading correction factor matches mu (mu!)^(-1/mu)") {
  // Independent oracle: direct evaluation via lgamma.
  for (int mu : {1, 2, 5, 10, 20}) {
    const double expected =
        mu * std::exp(-std::lgamma(mu + 1.0) / mu);
    CHECK(alzer_eta(mu) == doctest::Approx(expected).epsilon(1e-14));
  }
  CHECK(alzer_eta(1) == doctest::Approx(1.0));
}

TEST_CASE("alternating binomial sum reproduces 1-(1-x)^mu") {
  for (double x : {0.1, 0.5, 0.9}) {
    for (int mu : {3, 10}) {
      const double got =
          signed_binomial_sum(mu, [&](int j) { return std::pow(x, j); });
      CHECK(got == doctest::Approx(1.0 - std::pow(1.0 - x, mu)).epsilon(1e-12));
    }
  }
  // Constant term: the sum telescopes to exactly 1.
  CHECK(signed_binomial_sum(10, [](int) { return 1.0; }) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("adaptive quadrature on known integrals") {
  auto sq = [](double x) { return x * x; };
  CHECK(integrate_unit_interval(sq, kQuad) == doctest::Approx(1.0 / 3.0));
  auto bump = [](double x) { return std::exp(-x); };
  CHECK(integrate_adaptive(bump, 0.0, 50.0, kQuad).value ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("vector quadrature agrees with scalar quadrature per component") {
  auto fill = [](double x, std::vector<double>& out) {
    out[0] = x;
    out[1] = std::sin(x);
  };
  const auto v = integrate_unit_interval_vec(fill, 2, kQuad);
  CHECK(v[0] == doctest::Approx(0.5));
  CHECK(v[1] == doctest::Approx(1.0 - std::cos(1.0)));
}

TEST_CASE("interference exponent kernel: limits and bounds") {
  const NetworkParams p = paper_defaults();
  // tau -> 0 is removable with value exactly 1 - r.
  CHECK(lambda_kernel(0.0, 0.3, 1.0, 1, p, kQuad) == doctest::Approx(0.7));
  // r = 1 pins the kernel at zero (no interferer ring).
  CHECK(lambda_kernel(5.0, 1.0, 1.0, 2, p, kQuad) == doctest::Approx(0.0));
  // 0 <= Lambda <= 1 - r everywhere on a grid.
  for (double tau : {0.01, 1.0, 100.0}) {
    for (double r : {0.05, 0.5, 0.95}) {
      for (int j : {1, 3, 10}) {
        const double v = lambda_kernel(tau, r, 0.01, j, p, kQuad);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 - r + 1e-12);
      }
    }
  }
}

TEST_CASE("interference exponent kernel vs brute-force Simpson oracle") {
  const NetworkParams p = paper_defaults();  // alpha = 2 -> q = 1
  const double eta = alzer_eta(p.mu);
  for (double tau : {0.5, 10.0}) {
    for (double r : {0.2, 0.7}) {
      for (int j : {1, 4}) {
        for (double g : {1.0, 0.1}) {
          const double b = j * eta * tau * g;
          const double a = b * std::pow(r, p.alpha_los / 2.0);
          // Lambda = (2r/alpha) * b^{2/alpha} int_a^b t^{-2/alpha - 1} e^{-t} dt
          const double q = 2.0 / p.alpha_los;
          auto f = [&](double t) {
            return std::pow(b / t, q) * std::exp(-t) / t;
          };
          const double oracle = (2.0 * r / p.alpha_los) * simpson(f, a, b, 20000);
          const double got = lambda_kernel(tau, r, g, j, p, kQuad);
          CHECK(got == doctest::Approx(oracle).epsilon(1e-6));
        }
      }
    }
  }
}

TEST_CASE("gain-averaged kernel is the mixture-weighted combination") {
  const NetworkParams p = paper_defaults();
  const GainMixture mix = gain_mixture(p);
  const double tau = 3.0, r = 0.4;
  double manual = 0.0;
  for (const auto& e : mix.entries)
    manual += e.probability * lambda_kernel(tau, r, e.gain_ratio, 2, p, kQuad);
  CHECK(expected_lambda(tau, r, 2, p, kQuad) == doctest::Approx(manual));
}

TEST_CASE("kernel argument validation") {
  const NetworkParams p = paper_defaults();
  CHECK_THROWS(lambda_kernel(-1.0, 0.5, 1.0, 1, p, kQuad));
  CHECK_THROWS(lambda_kernel(1.0, 0.0, 1.0, 1, p, kQuad));
  CHECK_THROWS(lambda_kernel(1.0, 1.5, 1.0, 1, p, kQuad));
  CHECK_THROWS(lambda_kernel(1.0, 0.5, 1.0, 0, p, kQuad));
}

}  // TEST_SUITE
