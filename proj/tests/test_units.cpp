#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pairwire/errors.hpp"
#include "pairwire/units.hpp"

using namespace pairwire::units;

TEST_CASE("constants table") {
  CHECK(kCodata2018.hbar == 1.054571817e-34);
  CHECK(kCodata2018.electron_mass == 9.1093837015e-31);
  CHECK(kCodata2018.electron_volt == 1.602176634e-19);
}

TEST_CASE("energy unit and its inverse") {
  const auto& c = kCodata2018;
  const double unit = c.hbar * c.hbar / (2.0 * c.electron_mass);
  CHECK(energy_unit(1.0) == doctest::Approx(unit).epsilon(1e-15));
  CHECK(energy_unit(1e-8) == doctest::Approx(unit * 1e16).epsilon(1e-15));
  // hbar^2 pi^2 / m_e evaluated with mpmath at 30 digits.
  CHECK(to_physical(oracle::kThreshold, 1.0).joules == doctest::Approx(1.204933478970942557e-37).epsilon(1e-15));
  CHECK(to_physical(0.0, 1e-6).joules == 0.0);
  for (double eps : {0.1, 19.7, 1e4}) {
    for (double d : {1e-9, 3e-8, 1.0}) {
      const double j = to_physical(eps, d).joules;
      CHECK(to_physical(eps, d).ev == doctest::Approx(j / c.electron_volt).epsilon(1e-15));
      CHECK(to_dimensionless(j, d) == doctest::Approx(eps).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(energy_unit(0.0), pairwire::DomainError);
  CHECK_THROWS_AS(to_physical(1.0, -1.0), pairwire::DomainError);
}

TEST_CASE("gap and extension conversions") {
  CHECK(gap_from_d(1.0, 1.0) == doctest::Approx(1.204933478970942557e-37 / 1.602176634e-19).epsilon(1e-14));
  CHECK(gap_from_d(1e-6, 0.0) == 0.0);
  CHECK(gap_from_d(1e-6, 1.0) == doctest::Approx(7.520603243118714e-07).epsilon(1e-14));
  CHECK(d_from_gap(1e-3, 1.0) == doctest::Approx(2.742371828020175e-08).epsilon(1e-14));
  CHECK(d_from_gap(2e-3, 1.0) == doctest::Approx(d_from_gap(1e-3, 1.0) / std::sqrt(2.0)).epsilon(1e-14));

  double prev = 1e300;
  for (double delta : {1e-6, 1e-4, 1e-3, 0.1, 10.0}) {
    for (double ratio : {0.07, 0.5, 1.0}) {
      const double d = d_from_gap(delta, ratio);
      CHECK(gap_from_d(d, ratio) == doctest::Approx(delta).epsilon(1e-14));
    }
    const double d = d_from_gap(delta, 1.0);
    CHECK(d < prev);
    prev = d;
  }
  CHECK_THROWS_AS(d_from_gap(0.0, 1.0), pairwire::DomainError);
  CHECK_THROWS_AS(d_from_gap(1e-3, 0.0), pairwire::DomainError);
  CHECK_THROWS_AS(d_from_gap(1e-3, 1.5), pairwire::DomainError);
  CHECK_THROWS_AS(gap_from_d(0.0, 1.0), pairwire::DomainError);
  CHECK_THROWS_AS(gap_from_d(1e-6, -0.1), pairwire::DomainError);
}
