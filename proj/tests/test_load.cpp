#include <doctest.h>

#include <cmath>

#include "mmnet/load.hpp"
#include "mmnet/params.hpp"
#include "mmnet/specfun.hpp"

using namespace mmnet;

namespace {
const QuadratureSpec kQuad;

NetworkParams at(double psi, int k) {
  NetworkParams p = paper_defaults();
  p.psi = psi;
  p.k = k;
  return p;
}
}  // namespace

TEST_SUITE("load") {

TEST_CASE("simplified PMF is normalized with tiny tail") {
  for (double psi : {1.0, 4.0, 10.0}) {
    for (int k : {1, 4, 12}) {
      const LoadPmf pmf = load_pmf_simplified(at(psi, k));
      CHECK(pmf.total_mass() + pmf.tail_mass == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(pmf.tail_mass < 1e-9);
      CHECK(pmf.masses.front().n == 1);
      for (const auto& m : pmf.masses) CHECK(m.p >= 0.0);
    }
  }
}

TEST_CASE("simplified PMF rejects psi below its validity condition") {
  CHECK_THROWS(load_pmf_simplified(at(0.5, 1)));
  CHECK_NOTHROW(load_pmf_full(at(0.5, 1)));
}

TEST_CASE("full PMF is normalized and close to simplified at moderate psi") {
  const LoadPmf full = load_pmf_full(at(4.0, 1));
  CHECK(full.total_mass() + full.tail_mass == doctest::Approx(1.0).epsilon(1e-9));
  const LoadPmf simp = load_pmf_simplified(at(4.0, 1));
  CHECK(total_variation(full, simp) < 1e-3);
}

TEST_CASE("full and simplified PMFs converge as psi grows") {
  double prev = 1.0;
  for (double psi : {1.0, 2.0, 4.0, 10.0}) {
    const double tv =
        total_variation(load_pmf_full(at(psi, 1)), load_pmf_simplified(at(psi, 1)));
    CHECK(tv <= prev + 1e-12);
    prev = tv;
  }
}

TEST_CASE("vanishing user density concentrates the load at one") {
  NetworkParams p = at(4.0, 1);
  p.lambda_user = 1e-6;
  CHECK(load_pmf_simplified(p).prob(1) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(load_pmf_full(p).prob(1) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("simplified mean agrees with the bias-factor mean within 10%") {
  for (double psi : {1.0, 4.0, 10.0}) {
    for (int k : {1, 4}) {
      const NetworkParams p = at(psi, k);
      const LoadPmf pmf = load_pmf_simplified(p);
      const double xi_mean =
          1.0 + p.bias_factor * kPi * p.r_los * p.r_los * p.lambda_user / (k * psi);
      CHECK(pmf.mean() == doctest::Approx(xi_mean).epsilon(0.10));
    }
  }
}

TEST_CASE("mean bandwidth closed form and limits") {
  const NetworkParams p = at(4.0, 1);
  const double expect = 2e9 / (1.0 + 1.28 * kPi * 0.04 * 1e4 / 4.0);
  CHECK(mean_bandwidth(p) == doctest::Approx(expect).epsilon(1e-12));

  NetworkParams empty = p;
  empty.lambda_user = 1e-9;  // the no-other-users limit
  CHECK(mean_bandwidth(empty) == doctest::Approx(p.bandwidth_total));

  CHECK(mean_bandwidth(at(4.0, 2)) > mean_bandwidth(at(4.0, 1)));
}

TEST_CASE("load mean decreases in k and the inverse mean obeys Jensen") {
  double prev_mean = 1e300;
  for (int k : {1, 2, 4, 8, 12}) {
    const LoadPmf pmf = load_pmf_simplified(at(4.0, k));
    CHECK(pmf.mean() < prev_mean);
    prev_mean = pmf.mean();
    CHECK(pmf.mean_inverse() >= 1.0 / pmf.mean());
  }
}

TEST_CASE("sector-area densities normalize and size bias raises the mean") {
  const NetworkParams p = at(4.0, 4);
  const double ymax = kPi * p.r_los * p.r_los / p.k;
  auto mass = [&](auto&& pdf) {
    return integrate_adaptive([&](double y) { return pdf(y, p); }, 0.0, ymax,
                              kQuad)
        .value;
  };
  auto first_moment = [&](auto&& pdf) {
    return integrate_adaptive([&](double y) { return y * pdf(y, p); }, 0.0,
                              ymax, kQuad)
        .value;
  };
  CHECK(mass(sector_area_pdf) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(mass(biased_sector_area_pdf) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(first_moment(biased_sector_area_pdf) > first_moment(sector_area_pdf));
  // Truncation: zero beyond the largest possible sector area.
  CHECK(sector_area_pdf(ymax * 1.01, p) == doctest::Approx(0.0));
}

TEST_CASE("total variation is a metric-like distance") {
  const LoadPmf a = load_pmf_simplified(at(4.0, 1));
  const LoadPmf b = load_pmf_simplified(at(4.0, 4));
  CHECK(total_variation(a, a) == doctest::Approx(0.0));
  const double d = total_variation(a, b);
  CHECK(d > 0.0);
  CHECK(d <= 1.0);
  CHECK(total_variation(b, a) == doctest::Approx(d));
}

}  // TEST_SUITE
