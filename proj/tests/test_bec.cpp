#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pairwire/bec.hpp"
#include "pairwire/errors.hpp"
#include "pairwire/spectral.hpp"

using namespace pairwire;
using namespace pairwire::bec;

namespace {

// Plain double loop over the rectangle levels, cut far beyond any weight.
double brute_force_density(double beta, double mu, double length, double e0) {
  double sum = 1.0 / std::expm1(beta * (e0 - mu));
  for (int k = 1; k <= 6; ++k) {
    for (int l = 0; l < 200000; ++l) {
      const double e = 2.0 * oracle::kPi * oracle::kPi * k * k +
                       oracle::kPi * oracle::kPi * (2.0 * l + 1) * (2.0 * l + 1) / (8.0 * length * length);
      const double occ = 1.0 / std::expm1(beta * (e - mu));
      sum += occ;
      if (occ < 1e-20) break;
    }
  }
  return sum / length;
}

// Representative ground level; the tests do not depend on its exact value.
constexpr double kE0 = 18.35;

}  // namespace

TEST_CASE("rectangle levels") {
  CHECK(rectangle_eigenvalue(1, 0, 10.0) == doctest::Approx(19.7515458).epsilon(1e-9));
  CHECK(rectangle_eigenvalue(2, 0, 10.0) == doctest::Approx(78.9691722).epsilon(1e-9));
  double prev = 1e300;
  for (double length : {10.0, 100.0, 1e4, 1e6}) {
    const double e = rectangle_eigenvalue(1, 3, length);
    CHECK(e > oracle::kThreshold);
    CHECK(e < prev);
    prev = e;
  }
  CHECK(prev - oracle::kThreshold < 1e-9);
  CHECK_THROWS_AS(rectangle_eigenvalue(0, 0, 10.0), DomainError);
  CHECK_THROWS_AS(rectangle_eigenvalue(1, -1, 10.0), DomainError);
}

TEST_CASE("single-level closed forms") {
  const auto one = SpectrumModel::explicit_levels({1.0});
  const double mu = 1.0 - std::log(2.0);
  const auto occ = occupation_sum(1.0, 1.0 - mu, 1.0, one);
  CHECK(occ.ground == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(occ.excited == 0.0);
  CHECK(total_density(1.0, mu, 1.0, one) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(solve_mu(1.0, 1.0, 1.0, one) == doctest::Approx(0.30685281944005469).epsilon(1e-11));
  CHECK(total_density(1.0, -1e6, 1.0, one) == 0.0);
  CHECK_THROWS_AS(total_density(1.0, 1.0, 1.0, one), DomainError);
}

TEST_CASE("bound-model density against plain enumeration") {
  for (double length : {5.0, 40.0}) {
    for (double beta : {0.5, 1.0, 2.0}) {
      for (double mu : {kE0 - 2.0, kE0 - 0.05}) {
        const double got = total_density(beta, mu, length, SpectrumModel::bound(kE0));
        CHECK(got == doctest::Approx(brute_force_density(beta, mu, length, kE0)).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("occupations are non-negative and mu stays below the lowest level") {
  for (const auto& model : {SpectrumModel::bound(kE0), SpectrumModel::no_bound(),
                            SpectrumModel::explicit_levels({18.0, 20.0, 21.5, 25.0})}) {
    for (double rho : {1e-3, 0.2, 5.0}) {
      const auto g = condensate_stats(1.0, rho, 50.0, model, 1e-12);
      CHECK(g.mu < g.min_level);
      CHECK(g.mu_offset > 0.0);
      CHECK(g.n0 >= 0.0);
      CHECK(g.rho_ex >= 0.0);
      // Constraint closure.
      CHECK(g.n0_per_length + g.rho_ex == doctest::Approx(rho).epsilon(1e-11));
      CHECK(total_density(1.0, g.mu, 50.0, model) == doctest::Approx(rho).epsilon(1e-11));
    }
  }
}

TEST_CASE("sub-critical density keeps mu away from the ground level") {
  const double rho_c = critical_density(1.0, kE0);
  double prev_offset = 0.0;
  for (double length : {1e3, 1e4, 1e5}) {
    const auto g = condensate_stats(1.0, 0.5 * rho_c, length, SpectrumModel::bound(kE0), 1e-12);
    if (prev_offset > 0.0) CHECK(g.mu_offset == doctest::Approx(prev_offset).epsilon(0.05));
    CHECK(g.mu_offset > 0.1);
    prev_offset = g.mu_offset;
  }
}

TEST_CASE("series for the infinite-wire excited density matches quadrature") {
  const std::pair<double, double> points[] = {
      {1.0, 0.0}, {1.0, kE0}, {0.5, 10.0}, {2.0, 19.5}, {0.1, -5.0}, {0.25, 19.7}};
  for (const auto& [beta, mu] : points) {
    const double series = rho_ex_infinity(beta, mu);
    const double quad = oracle::rho_ex_quadrature(beta, mu);
    CHECK(series == doctest::Approx(quad).epsilon(1e-8));
  }
  CHECK(rho_ex_infinity(1.0, -1e6) < 1e-300);
}

TEST_CASE("infinite-wire density divergence") {
  CHECK_THROWS_AS(rho_ex_infinity(1.0, oracle::kThreshold), DivergenceError);
  CHECK_THROWS_AS(rho_ex_infinity(1.0, 25.0), DivergenceError);
  // Grows without bound as mu approaches the threshold.
  CHECK(rho_ex_infinity(0.25, oracle::kThreshold - 1e-6) > 1e3);
  double prev = 0.0;
  for (double gap : {1.0, 1e-2, 1e-4, 1e-6}) {
    const double v = rho_ex_infinity(1.0, oracle::kThreshold - gap);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("critical density") {
  const double a = critical_density(1.0, kE0);
  const double b = critical_density(2.0, kE0);
  CHECK(a > 0.0);
  CHECK(b < a);
  CHECK(a == rho_ex_infinity(1.0, kE0));
  CHECK_THROWS_AS(critical_density(1.0, oracle::kThreshold), DomainError);
}

TEST_CASE("condensation with a bound level, none without") {
  const double rho_c = critical_density(1.0, kE0);
  const double rho = 2.0 * rho_c;
  const auto bound = thermo_sweep(1.0, rho, {1e3, 1e4, 1e5}, SpectrumModel::bound(kE0), 1e-12);
  for (const auto& g : bound) CHECK(g.n0_per_length >= 0.9 * (rho - rho_c));
  CHECK(std::abs(bound.back().n0_per_length - (rho - rho_c)) <= 0.01 * (rho - rho_c));

  const auto free = thermo_sweep(1.0, rho, {1e3, 1e4, 1e5}, SpectrumModel::no_bound(), 1e-12);
  for (std::size_t i = 1; i < free.size(); ++i) CHECK(free[i].n0_per_length < free[i - 1].n0_per_length);
  CHECK(free.back().n0_per_length <= 0.05 * rho);
}

TEST_CASE("explicit levels from the eigensolver agree with the bound model at short length") {
  const double length = 4.0;
  const auto r = pencil_spectrum(length, 16, SigmaProfile::zero(), {.k = 40, .keep_vectors = false});
  const auto explicit_model = SpectrumModel::explicit_levels(r.eigenvalues);
  const auto bound_model = SpectrumModel::bound(r.eigenvalues[0]);
  for (double mu : {r.eigenvalues[0] - 1.0, r.eigenvalues[0] - 3.0}) {
    const double a = total_density(1.0, mu, length, explicit_model);
    const double b = total_density(1.0, mu, length, bound_model);
    CHECK(a == doctest::Approx(b).epsilon(0.10));
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(SpectrumModel::bound(oracle::kThreshold), ValidationError);
  CHECK_THROWS_AS(SpectrumModel::explicit_levels({}), ValidationError);
  CHECK_THROWS_AS(SpectrumModel::explicit_levels({2.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(solve_mu(1.0, 0.0, 10.0, SpectrumModel::bound(kE0)), ValidationError);
  CHECK_THROWS_AS(solve_mu(0.0, 1.0, 10.0, SpectrumModel::bound(kE0)), ValidationError);
  CHECK_THROWS_AS(thermo_sweep(1.0, 1.0, {10.0, 10.0}, SpectrumModel::bound(kE0)), ValidationError);
}
