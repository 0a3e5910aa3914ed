// SPDX-License-Identifier: Apache-2.0
//
// Bare matter-mode dispersions against values evaluated independently at
// high precision from the defining formulas with CODATA 2018 constants.

#include <doctest.h>

#include <cmath>

#include "landau/dispersion.hpp"
#include "test_common.hpp"

using namespace landau;
using testutil::paper_sample;

TEST_CASE("plasmon dispersion at the slot momenta") {
  const SampleParams s = paper_sample();
  const double k1 = slot_momentum(1, s.slot_width);
  const double k3 = slot_momentum(3, s.slot_width);

  CHECK(k1 == doctest::Approx(7.853981633974484e5).epsilon(1e-12));
  CHECK(k3 == doctest::Approx(2.356194490192345e6).epsilon(1e-12));

  CHECK(plasmon_frequency(0.0, s).thz == 0.0);
  CHECK(plasmon_frequency(k1, s).thz ==
        doctest::Approx(0.46350918901736576).epsilon(1e-10));
  CHECK(plasmon_frequency(k3, s).thz ==
        doctest::Approx(0.8028214651531239).epsilon(1e-10));
  // forced by the sqrt(k) scaling law as well
  CHECK(plasmon_frequency(k3, s).thz ==
        doctest::Approx(std::sqrt(3.0) * plasmon_frequency(k1, s).thz)
            .epsilon(1e-12));

  CHECK_THROWS_AS(plasmon_frequency(-1.0, s), domain_error);
  CHECK_THROWS_AS(
      plasmon_frequency(std::numeric_limits<double>::quiet_NaN(), s),
      domain_error);
}

TEST_CASE("cyclotron frequency is linear in B") {
  const SampleParams s = paper_sample();
  CHECK(cyclotron_frequency(0.0, s).thz == 0.0);
  CHECK(cyclotron_frequency(2.51, s).thz ==
        doctest::Approx(0.9244888102573146).epsilon(1e-10));
  CHECK(cyclotron_frequency(1.255, s).thz ==
        doctest::Approx(0.5 * cyclotron_frequency(2.51, s).thz)
            .epsilon(1e-14));
  // CR zero-detuning field sits where nu_c crosses the 0.925 THz cavity
  CHECK(cyclotron_frequency(2.51, s).thz == doctest::Approx(0.925).epsilon(1e-3));
  CHECK_THROWS_AS(cyclotron_frequency(-0.1, s), domain_error);
}

TEST_CASE("magnetoplasmon reduces to the pure modes") {
  const SampleParams s = paper_sample();
  const double k1 = slot_momentum(1, s.slot_width);
  CHECK(magnetoplasmon_frequency(k1, 0.0, s).thz ==
        doctest::Approx(plasmon_frequency(k1, s).thz).epsilon(1e-14));
  CHECK(magnetoplasmon_frequency(0.0, 3.3, s).thz ==
        doctest::Approx(cyclotron_frequency(3.3, s).thz).epsilon(1e-14));
  // zero-detuning of MP1: within 0.5% of the cavity at 2.18 T
  CHECK(magnetoplasmon_frequency(k1, 2.18, s).thz ==
        doctest::Approx(0.925).epsilon(5e-3));
}

TEST_CASE("slot momentum selection rule") {
  CHECK(slot_momentum(1, 4e-6) == doctest::Approx(7.853981633974484e5));
  CHECK(slot_momentum(3, 4e-6) == doctest::Approx(2.356194490192345e6));
  CHECK_THROWS_AS(slot_momentum(2, 4e-6), domain_error);
  CHECK_THROWS_AS(slot_momentum(0, 4e-6), domain_error);
  CHECK_THROWS_AS(slot_momentum(-3, 4e-6), domain_error);
  CHECK_THROWS_AS(slot_momentum(1, 0.0), domain_error);
}

TEST_CASE("zero-detuning fields of the measured device") {
  const SampleParams s = paper_sample();
  const Frequency target{0.925};
  CHECK(zero_detuning_field(target, 0.0, s) ==
        doctest::Approx(2.511387887273382).epsilon(1e-10));
  CHECK(zero_detuning_field(target, slot_momentum(1, s.slot_width), s) ==
        doctest::Approx(2.173341488325629).epsilon(1e-10));
  CHECK(zero_detuning_field(target, slot_momentum(3, s.slot_width), s) ==
        doctest::Approx(1.247437947933867).epsilon(1e-10));

  // below the plasmon floor there is no field; payload carries the floor
  const double k3 = slot_momentum(3, s.slot_width);
  try {
    zero_detuning_field(Frequency{0.5}, k3, s);
    FAIL("expected no_solution_error");
  } catch (const no_solution_error& e) {
    CHECK(e.min_frequency_thz() ==
          doctest::Approx(plasmon_frequency(k3, s).thz).epsilon(1e-14));
  }
}

TEST_CASE("dispersion properties over random draws") {
  const SampleParams s = paper_sample();
  testutil::Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    const double k = rng.uniform(1e4, 5e6);
    const double c = rng.uniform(0.01, 100.0);
    const double b = rng.uniform(0.0, 9.0);

    // sqrt(k) scaling
    CHECK(plasmon_frequency(c * k, s).thz ==
          doctest::Approx(std::sqrt(c) * plasmon_frequency(k, s).thz)
              .epsilon(1e-12));

    // Pythagorean closure
    const double mp = magnetoplasmon_frequency(k, b, s).thz;
    const double p = plasmon_frequency(k, s).thz;
    const double cy = cyclotron_frequency(b, s).thz;
    CHECK(mp * mp == doctest::Approx(p * p + cy * cy).epsilon(1e-14));

    // round trip through the inversion
    const double target = mp + rng.uniform(0.0, 1.0);
    const double field = zero_detuning_field(Frequency{target}, k, s);
    CHECK(magnetoplasmon_frequency(k, field, s).thz ==
          doctest::Approx(target).epsilon(1e-10));

    // strict monotonicity in both arguments
    CHECK(magnetoplasmon_frequency(k * 1.01, b + 1e-12, s).thz > mp);
    CHECK(magnetoplasmon_frequency(k, b + 0.01, s).thz > mp);
  }
}
