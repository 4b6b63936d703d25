#include <doctest.h>

#include <cmath>

#include "mmnet/params.hpp"

using namespace mmnet;

TEST_SUITE("params") {

TEST_CASE("defaults carry the documented scenario constants") {
  const NetworkParams p = paper_defaults();
  CHECK(p.beam.main_gain_ap == doctest::Approx(db_to_linear(20.0)));
  CHECK(p.beam.side_gain_ap == doctest::Approx(1.0));
  CHECK(p.beam.main_gain_user == doctest::Approx(1.0));
  CHECK(p.beam.side_gain_user == doctest::Approx(db_to_linear(-10.0)));
  CHECK(p.beam.main_width_ap == doctest::Approx(deg_to_rad(30.0)));
  CHECK(p.beam.main_width_user == doctest::Approx(deg_to_rad(90.0)));
  CHECK(p.r_los == doctest::Approx(0.2));
  CHECK(p.alpha_los == doctest::Approx(2.0));
  CHECK(p.lambda_user == doctest::Approx(1e4));
  CHECK(p.bandwidth_total == doctest::Approx(2e9));
  CHECK(p.mu == 10);
  CHECK(p.bias_factor == doctest::Approx(1.28));
  CHECK(validate(p).empty());
}

TEST_CASE("unit conversions round-trip") {
  CHECK(db_to_linear(20.0) == doctest::Approx(100.0));
  CHECK(linear_to_db(db_to_linear(-7.3)) == doctest::Approx(-7.3));
  CHECK(rad_to_deg(deg_to_rad(57.1)) == doctest::Approx(57.1));
}

TEST_CASE("validation rejects each broken invariant separately") {
  NetworkParams p = paper_defaults();
  p.k = 0;
  p.psi = -1.0;
  p.r_los = 0.0;
  const auto issues = validate(p);
  CHECK(issues.size() >= 3);
  CHECK_THROWS_AS(validated(p), ValidationError);

  NetworkParams q = paper_defaults();
  q.mu = kMaxMu + 1;
  CHECK_FALSE(validate(q).empty());

  NetworkParams a = paper_defaults();
  a.alpha_los = 2.5;  // model requires alpha <= 2
  CHECK_FALSE(validate(a).empty());
}

TEST_CASE("derived AP intensity matches psi / (pi R^2)") {
  NetworkParams p = paper_defaults();
  p.psi = 4.0;
  CHECK(derive_ap_intensity(p) ==
        doctest::Approx(4.0 / (kPi * 0.2 * 0.2)));
}

TEST_CASE("gain mixture is a probability distribution over the four lobes") {
  for (int k : {1, 4, 12}) {
    NetworkParams p = paper_defaults();
    p.k = k;
    const GainMixture mix = gain_mixture(p);
    double total = 0.0;
    for (const auto& e : mix.entries) {
      CHECK(e.probability >= 0.0);
      CHECK(e.probability <= 1.0);
      CHECK(e.joint_gain > 0.0);
      CHECK(e.gain_ratio ==
            doctest::Approx(e.joint_gain /
                            (p.beam.main_gain_ap * p.beam.main_gain_user)));
      total += e.probability;
    }
    CHECK(total == doctest::Approx(1.0));
  }
}

TEST_CASE("main-lobe probability grows with the multiplexing gain") {
  NetworkParams p1 = paper_defaults();
  p1.k = 1;
  NetworkParams p4 = paper_defaults();
  p4.k = 4;
  // Entry 0 is the (main, main) product by construction.
  CHECK(gain_mixture(p4).entries[0].probability >
        gain_mixture(p1).entries[0].probability);
}

}  // TEST_SUITE
