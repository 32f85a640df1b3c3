#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace pairwire::bec {

// Energies in units of hbar^2 / (2 m_e d^2), lengths in units of d,
// inverse temperature beta scaled by the same energy unit.

/// Absolute truncation budget applied to every enumerated density sum.
inline constexpr double kTailTol = 1e-13;

/// Level (k, l) of the antisymmetric strip truncated at L with a Neumann
/// end: 2 pi^2 k^2 + pi^2 (2l + 1)^2 / (8 L^2). Requires k >= 1, l >= 0, L > 0.
double rectangle_eigenvalue(int k, int l, double length);

/// Single-pair level enumeration fed to the grand-canonical gas.
class SpectrumModel {
public:
  enum class Kind { Bound, NoBound, Explicit };

  /// Ground level e0 < 2 pi^2 (independent of L) plus the rectangle levels.
  static SpectrumModel bound(double e0);
  /// Rectangle levels only; nothing below the threshold.
  static SpectrumModel no_bound();
  /// A finite ascending list of levels, e.g. from the eigensolver.
  static SpectrumModel explicit_levels(std::vector<double> levels);

  Kind kind() const noexcept { return kind_; }
  double e0() const noexcept { return e0_; }
  const std::vector<double>& levels() const noexcept { return levels_; }
  double min_level(double length) const;
  std::string name() const;

private:
  SpectrumModel() = default;

  Kind kind_ = Kind::NoBound;
  double e0_ = 0.0;
  std::vector<double> levels_;
};

/// Bose occupation sums at chemical potential min_level - offset.
struct OccupationSum {
  double ground = 0.0;   // occupation of the lowest level
  double excited = 0.0;  // all other levels
  /// Rigorous bound on the omitted tail of ground + excited. Explicit models
  /// report the occupation of their highest level as an indicator instead.
  double truncation_bound = 0.0;
  std::size_t terms = 0;

  double total() const noexcept { return ground + excited; }
};

/// Occupation sums with mu = min_level(L) - offset, offset > 0. Working in
/// the offset keeps the near-degenerate ground term accurate.
OccupationSum occupation_sum(double beta, double offset, double length, const SpectrumModel& model,
                             double tail_tol = kTailTol);

/// (1/L) sum_n 1 / (exp(beta (E_n - mu)) - 1). Throws DomainError if mu is
/// not strictly below the lowest level.
double total_density(double beta, double mu, double length, const SpectrumModel& model,
                     double tail_tol = kTailTol);

struct GasSolution {
  double beta = 0.0;
  double rho = 0.0;
  double length = 0.0;
  double mu = 0.0;
  double mu_offset = 0.0;  // min_level - mu, > 0
  double min_level = 0.0;
  double n0 = 0.0;
  double n0_per_length = 0.0;
  double rho_ex = 0.0;  // excited occupation per unit length
  double truncation_bound = 0.0;
};

/// Chemical potential enforcing total density rho, |density - rho| <= tol rho.
/// Bisection on log(min_level - mu). Throws ValidationError for rho <= 0 and
/// IterationError if the tolerance is not reached.
double solve_mu(double beta, double rho, double length, const SpectrumModel& model,
                double tol = 1e-12);

GasSolution condensate_stats(double beta, double rho, double length, const SpectrumModel& model,
                             double tol = 1e-12);

/// Excited-pair density of the infinite wire at chemical potential mu,
/// (1 / sqrt(2 pi beta)) sum_{n>=1} sum_{j>=1} exp(j beta (mu - 2 pi^2 n^2)) / sqrt(j),
/// truncated with a rigorous tail bound below tol (absolute).
/// Throws DivergenceError for mu >= 2 pi^2.
double rho_ex_infinity(double beta, double mu, double tol = 1e-15);

/// Density above which the ground level condenses: rho_ex_infinity(beta, e0).
/// Throws DomainError if e0 >= 2 pi^2 (no gap, no finite critical density).
double critical_density(double beta, double e0, double tol = 1e-15);

/// One GasSolution per entry of the strictly ascending length list.
std::vector<GasSolution> thermo_sweep(double beta, double rho, const std::vector<double>& lengths,
                                      const SpectrumModel& model, double tol = 1e-12);

}  // namespace pairwire::bec
