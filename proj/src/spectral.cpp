#include "pairwire/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "pairwire/errors.hpp"

namespace pairwire {

namespace {

std::string where(double length, int m) {
  std::ostringstream out;
  out << "(L=" << length << ", m=" << m << "): ";
  return out.str();
}

// Runs one solve, re-raising failures with the grid they came from.
SpectrumResult annotated_solve(double length, int m, const SigmaProfile& sigma,
                               const SolverOptions& options) {
  try {
    return pencil_spectrum(length, m, sigma, options);
  } catch (const IterationError& e) {
    throw IterationError(where(length, m) + e.what(), e.iterations(), e.best_values(),
                         e.best_residuals());
  } catch (const ConfigError& e) {
    throw ConfigError(where(length, m) + e.what());
  }
}

double ground_energy(double length, int m, double sigma, const SolverOptions& base) {
  SolverOptions options = base;
  options.k = 1;
  options.keep_vectors = false;
  return annotated_solve(length, m, SigmaProfile::constant(sigma), options).eigenvalues.front();
}

}  // namespace

double gap(double e0) {
  if (!(e0 >= 0.0) || e0 > threshold_dimless()) {
    std::ostringstream msg;
    msg << "no bound state below the threshold for E0 = " << e0 << "; the gap is undefined";
    throw DomainError(msg.str());
  }
  return threshold_dimless() - e0;
}

int count_below(const SpectrumResult& result, double bound) {
  return static_cast<int>(std::count_if(result.eigenvalues.begin(), result.eigenvalues.end(),
                                        [bound](double e) { return e < bound; }));
}

SpectrumResult pencil_spectrum(double length, int m, const SigmaProfile& sigma,
                               const SolverOptions& options) {
  const Grid grid = build_grid(DomainSpec(length), m);
  return lowest_eigenpairs(assemble_operator(grid, sigma), options);
}

ConvergenceTable convergence_study(const std::vector<double>& lengths, const std::vector<int>& ms,
                                   const SigmaProfile& sigma, const SolverOptions& options) {
  if (lengths.empty() || ms.empty()) throw ConfigError("convergence study needs non-empty L and m lists");
  if (ms.size() < 2) throw ConfigError("extrapolation in h needs at least two resolutions");
  if (!std::is_sorted(lengths.begin(), lengths.end(), std::less_equal<>()) ||
      std::adjacent_find(lengths.begin(), lengths.end()) != lengths.end()) {
    throw ConfigError("L list must be strictly ascending");
  }
  if (std::adjacent_find(ms.begin(), ms.end(), std::greater_equal<>()) != ms.end()) {
    throw ConfigError("m list must be strictly ascending");
  }

  SolverOptions solve = options;
  solve.k = std::max(solve.k, 2);
  solve.keep_vectors = false;

  ConvergenceTable table;
  const double bound = kCountSafety * threshold_dimless();
  for (double length : lengths) {
    for (int m : ms) {
      const SpectrumResult r = annotated_solve(length, m, sigma, solve);
      table.rows.push_back({length, m, r.eigenvalues[0], r.eigenvalues[1], count_below(r, bound),
                            r.eigenvalues[0] / threshold_dimless()});
    }
  }

  // Rows of the largest L are the last ms.size() rows.
  const auto finest = table.rows.end() - static_cast<std::ptrdiff_t>(ms.size());
  const std::vector<ConvergenceRow> last(finest, table.rows.end());
  const auto richardson = [](const ConvergenceRow& coarse, const ConvergenceRow& fine) {
    const double r = static_cast<double>(fine.m) / coarse.m;
    return fine.e0 + (fine.e0 - coarse.e0) / (r * r - 1.0);
  };

  Extrapolation& ex = table.extrapolated_e0;
  const ConvergenceRow& fine = last[last.size() - 1];
  const ConvergenceRow& coarse = last[last.size() - 2];
  ex.length = fine.length;
  ex.m_coarse = coarse.m;
  ex.m_fine = fine.m;
  ex.value = richardson(coarse, fine);
  ex.error_estimate = std::abs(ex.value - fine.e0);
  ex.ratio_to_threshold = ex.value / threshold_dimless();
  if (last.size() >= 3) {
    const ConvergenceRow& coarsest = last[last.size() - 3];
    ex.coarser_value = richardson(coarsest, coarse);
    const double denom = coarse.e0 - fine.e0;
    ex.order_ratio = denom != 0.0 ? (coarsest.e0 - coarse.e0) / denom
                                  : std::numeric_limits<double>::infinity();
    ex.flagged = !(*ex.order_ratio >= kOrderRatioLow && *ex.order_ratio <= kOrderRatioHigh);
  }
  return table;
}

GammaResult find_gamma(double length, int m, double tol, const SolverOptions& options) {
  if (!(tol > 0.0) || !(tol < 1.0)) throw ConfigError("find_gamma tolerance must lie in (0, 1)");

  GammaResult out;
  out.length = length;
  out.m = m;
  out.tol = tol;
  out.target = (1.0 - tol) * threshold_dimless();

  const auto evaluate = [&](double sigma) {
    const double e0 = ground_energy(length, m, sigma, options);
    out.evaluations.push_back({sigma, e0});
    return e0;
  };

  double lo = 0.0;
  double e_lo = evaluate(lo);
  if (e_lo >= out.target) {
    throw DomainError(where(length, m) +
                      "interaction-free ground state already lies at the threshold");
  }

  double hi = 1.0;
  double e_hi = evaluate(hi);
  while (e_hi < out.target) {
    if (hi >= kGammaSigmaCap) {
      std::ostringstream msg;
      msg << where(length, m) << "ground state still below the threshold at sigma = " << hi;
      throw CapError(msg.str(), hi);
    }
    lo = hi;
    e_lo = e_hi;
    hi = std::min(2.0 * hi, kGammaSigmaCap);
    e_hi = evaluate(hi);
  }

  while (hi - lo > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    const double e_mid = evaluate(mid);
    if (e_mid >= out.target) {
      hi = mid;
      e_hi = e_mid;
    } else {
      lo = mid;
      e_lo = e_mid;
    }
  }

  out.lower = lo;
  out.upper = hi;
  out.sigma_star = hi;
  out.e0_lower = e_lo;
  out.e0_upper = e_hi;
  return out;
}

}  // namespace pairwire
