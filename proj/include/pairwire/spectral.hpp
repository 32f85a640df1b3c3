#pragma once

#include <numbers>
#include <optional>
#include <vector>

#include "pairwire/discretize.hpp"
#include "pairwire/eigensolve.hpp"

namespace pairwire {

// Energies below are in units of hbar^2 / (2 m_e d^2).

/// Bottom of the essential spectrum, 2 pi^2.
constexpr double threshold_dimless() { return 2.0 * std::numbers::pi * std::numbers::pi; }

/// Bound-state counting uses this fraction of the threshold so that O(h^2)
/// discretization error of near-threshold levels cannot flip a count.
inline constexpr double kCountSafety = 0.995;

/// Ground-state bracket as fractions of the threshold.
inline constexpr double kGroundLowerRatio = 0.25;
inline constexpr double kGroundUpperRatio = 0.93;

/// Accepted range of the observed h-convergence ratio (E_m - E_2m)/(E_2m - E_4m).
inline constexpr double kOrderRatioLow = 3.5;
inline constexpr double kOrderRatioHigh = 4.5;

/// Energy gap 2 pi^2 - E0. Throws DomainError if E0 lies outside [0, 2 pi^2].
double gap(double e0);

/// Number of eigenvalues strictly below bound.
int count_below(const SpectrumResult& result, double bound);

/// Spectrum of the half pencil domain truncated at L, resolution m.
SpectrumResult pencil_spectrum(double length, int m, const SigmaProfile& sigma,
                               const SolverOptions& options = {});

struct ConvergenceRow {
  double length = 0.0;
  int m = 0;
  double e0 = 0.0;
  double e1 = 0.0;
  int count = 0;  // below kCountSafety * threshold
  double ratio_to_threshold = 0.0;  // e0 / 2 pi^2
};

struct Extrapolation {
  double length = 0.0;
  int m_coarse = 0;
  int m_fine = 0;
  double value = 0.0;           // Richardson limit assuming an h^2 leading term
  double error_estimate = 0.0;  // |value - E0(m_fine)|
  double ratio_to_threshold = 0.0;
  /// Same extrapolation one grid level coarser, when three grids exist.
  std::optional<double> coarser_value;
  /// (E_m1 - E_m2) / (E_m2 - E_m3) over the three finest grids.
  std::optional<double> order_ratio;
  /// Set when order_ratio falls outside [kOrderRatioLow, kOrderRatioHigh].
  bool flagged = false;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;  // L-major, m ascending within each L
  Extrapolation extrapolated_e0;
};

/// Solves every (L, m) pair and extrapolates E0 in h at the largest L using
/// the two finest resolutions. Lists must be non-empty and strictly
/// ascending; m_list needs at least two entries.
ConvergenceTable convergence_study(const std::vector<double>& lengths, const std::vector<int>& ms,
                                   const SigmaProfile& sigma, const SolverOptions& options = {});

struct GammaEvaluation {
  double sigma = 0.0;
  double e0 = 0.0;
};

struct GammaResult {
  double length = 0.0;
  int m = 0;
  double tol = 0.0;
  double target = 0.0;  // (1 - tol) 2 pi^2
  double sigma_star = 0.0;  // == upper
  double lower = 0.0;   // E0(lower) < target
  double upper = 0.0;   // E0(upper) >= target
  double e0_lower = 0.0;
  double e0_upper = 0.0;
  std::vector<GammaEvaluation> evaluations;
};

/// Upper cap for the constant interaction strength searched by find_gamma.
inline constexpr double kGammaSigmaCap = 1e6;

/// Smallest constant wire-end interaction strength for which the discrete
/// ground state reaches (1 - tol) of the threshold, by bisection. The bracket
/// width on return is at most tol * sigma_star.
///
/// Throws ConfigError for tol outside (0, 1), DomainError if the
/// interaction-free operator has no level below the target, CapError if the
/// crossing lies beyond kGammaSigmaCap.
GammaResult find_gamma(double length, int m, double tol, const SolverOptions& options = {});

}  // namespace pairwire
