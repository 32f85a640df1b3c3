#pragma once

namespace pairwire::units {

/// CODATA 2018 values. Every conversion in the project reads this table.
struct PhysicalConstants {
  double hbar;           // J s
  double electron_mass;  // kg
  double electron_volt;  // J
};

inline constexpr PhysicalConstants kCodata2018{
    1.054571817e-34,
    9.1093837015e-31,
    1.602176634e-19,
};

/// Order of magnitude of the pair extension, in meters, that the literature
/// associates with a 1e-3 eV superconducting gap. Informational only.
inline constexpr double kQuotedExtensionOrder = 1e-6;
inline constexpr double kQuotedGapEv = 1e-3;

struct PhysicalEnergy {
  double joules = 0.0;
  double ev = 0.0;
};

/// Energy unit hbar^2 / (2 m_e d^2) in joules. Throws DomainError for d <= 0.
double energy_unit(double d_meters, const PhysicalConstants& c = kCodata2018);

/// E = eps * hbar^2 / (2 m_e d^2).
PhysicalEnergy to_physical(double eps, double d_meters, const PhysicalConstants& c = kCodata2018);

/// Inverse of to_physical.
double to_dimensionless(double joules, double d_meters, const PhysicalConstants& c = kCodata2018);

/// Gap in eV: gap_ratio * hbar^2 pi^2 / (m_e d^2), gap_ratio in [0, 1] being
/// the dimensionless gap divided by the threshold 2 pi^2.
double gap_from_d(double d_meters, double gap_ratio, const PhysicalConstants& c = kCodata2018);

/// Pair extension in meters giving the gap delta_ev; exact inverse of
/// gap_from_d. Throws DomainError for delta_ev <= 0 or gap_ratio outside (0, 1].
double d_from_gap(double delta_ev, double gap_ratio, const PhysicalConstants& c = kCodata2018);

}  // namespace pairwire::units
