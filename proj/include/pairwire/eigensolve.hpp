#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pairwire/discretize.hpp"

namespace pairwire {

/// Seed of the pseudo-random starting block. Part of every run digest.
inline constexpr std::uint64_t kDefaultSolverSeed = 0x5eed2016ULL;

/// Dense solves are used automatically below this many unknowns and are
/// refused above it by dense_reference.
inline constexpr Eigen::Index kDenseLimit = 2000;

enum class SolverMethod { Auto, Lobpcg, Dense };

enum class Preconditioner {
  Jacobi,    // inverse diagonal of S
  Cholesky,  // sparse Cholesky factor of S
};

struct SolverOptions {
  int k = 3;
  double tol = 1e-9;
  int maxiter = 5000;
  std::uint64_t seed = kDefaultSolverSeed;
  SolverMethod method = SolverMethod::Auto;
  Preconditioner preconditioner = Preconditioner::Cholesky;
  /// Extra block columns beyond k; negative selects max(k, 4).
  int guard = -1;
  bool keep_vectors = true;
};

struct SolverDiagnostics {
  std::string method;
  int iterations = 0;
  int block_size = 0;
};

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  /// ||S x - lambda W x|| / ||W x|| per pair.
  std::vector<double> residuals;
  /// Columns are W-orthonormal eigenvectors, one per eigenvalue.
  std::optional<Eigen::MatrixXd> vectors;
  SolverDiagnostics diagnostics;
};

/// The k smallest eigenpairs of S x = lambda W x.
///
/// Locally optimal block preconditioned conjugate gradient iteration on the
/// Rayleigh quotient, started from a seeded random block. Small systems go
/// through the dense solver unless the method is forced. Throws
/// IterationError if the k lowest residuals do not reach tol within maxiter.
SpectrumResult lowest_eigenpairs(const SparseOperator& op, const SolverOptions& options = {});

/// Full ascending spectrum by a dense solve of W^-1/2 S W^-1/2.
/// Throws SizeError above kDenseLimit unknowns.
std::vector<double> dense_reference(const SparseOperator& op);

/// Recomputes max_i ||S x_i - lambda_i W x_i|| / ||W x_i||.
/// Throws UsageError if the result carries no eigenvectors.
double residual_check(const SparseOperator& op, const SpectrumResult& result);

}  // namespace pairwire
