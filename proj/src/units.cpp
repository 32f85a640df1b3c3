#include "pairwire/units.hpp"

#include <cmath>
#include <numbers>

#include "pairwire/errors.hpp"

namespace pairwire::units {

namespace {

void require_length(double d_meters) {
  if (!(d_meters > 0.0) || !std::isfinite(d_meters)) {
    throw DomainError("pair extension must be positive and finite");
  }
}

// hbar^2 pi^2 / m_e in J m^2.
double gap_scale(const PhysicalConstants& c) {
  return c.hbar * c.hbar * std::numbers::pi * std::numbers::pi / c.electron_mass;
}

}  // namespace

double energy_unit(double d_meters, const PhysicalConstants& c) {
  require_length(d_meters);
  return c.hbar * c.hbar / (2.0 * c.electron_mass * d_meters * d_meters);
}

PhysicalEnergy to_physical(double eps, double d_meters, const PhysicalConstants& c) {
  const double joules = eps * energy_unit(d_meters, c);
  return {joules, joules / c.electron_volt};
}

double to_dimensionless(double joules, double d_meters, const PhysicalConstants& c) {
  return joules / energy_unit(d_meters, c);
}

double gap_from_d(double d_meters, double gap_ratio, const PhysicalConstants& c) {
  require_length(d_meters);
  if (!(gap_ratio >= 0.0 && gap_ratio <= 1.0)) throw DomainError("gap ratio must lie in [0, 1]");
  return gap_ratio * gap_scale(c) / (d_meters * d_meters) / c.electron_volt;
}

double d_from_gap(double delta_ev, double gap_ratio, const PhysicalConstants& c) {
  if (!(delta_ev > 0.0) || !std::isfinite(delta_ev)) throw DomainError("gap must be positive");
  if (!(gap_ratio > 0.0 && gap_ratio <= 1.0)) throw DomainError("gap ratio must lie in (0, 1]");
  return std::sqrt(gap_ratio * gap_scale(c) / (delta_ev * c.electron_volt));
}

}  // namespace pairwire::units
