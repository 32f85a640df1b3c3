#include "pairwire/eigensolve.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/OrderingMethods>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "pairwire/errors.hpp"

namespace pairwire {

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

Mat weighted_gram(const Mat& a, const Vec& w, const Mat& b) {
  return a.transpose() * (w.asDiagonal() * b);
}

// W-orthonormal basis of span(m). Near-dependent directions are dropped, so
// the result may have fewer columns than m.
Mat w_orthonormalize(const Mat& m, const Vec& w) {
  if (m.cols() == 0) return m;
  Mat a = m;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    const double norm = std::sqrt(a.col(c).dot(w.asDiagonal() * a.col(c)));
    if (norm > 0.0 && std::isfinite(norm)) {
      a.col(c) /= norm;
    } else {
      a.col(c).setZero();
    }
  }
  const Eigen::SelfAdjointEigenSolver<Mat> es(weighted_gram(a, w, a));
  const Vec& ev = es.eigenvalues();
  const double top = ev.maxCoeff();
  if (!(top > 0.0)) return Mat(m.rows(), 0);

  std::vector<Eigen::Index> keep;
  for (Eigen::Index c = 0; c < ev.size(); ++c) {
    if (ev[c] > 1e-10 * top) keep.push_back(c);
  }
  Mat basis(a.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    basis.col(static_cast<Eigen::Index>(c)) =
        a * es.eigenvectors().col(keep[c]) / std::sqrt(ev[keep[c]]);
  }
  // One Cholesky-QR pass restores orthonormality to working precision.
  const Eigen::LLT<Mat> llt(weighted_gram(basis, w, basis));
  if (llt.info() == Eigen::Success) {
    basis = llt.matrixL().solve(basis.transpose()).transpose();
  }
  return basis;
}

std::vector<double> residual_norms(const SparseMatrix& s, const Vec& w, const Mat& x,
                                   const Vec& lambda, Eigen::Index count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (Eigen::Index c = 0; c < count; ++c) {
    const Vec wx = w.asDiagonal() * x.col(c);
    const Vec r = s * x.col(c) - lambda[c] * wx;
    out[static_cast<std::size_t>(c)] = r.norm() / wx.norm();
  }
  return out;
}

class BlockPreconditioner {
public:
  BlockPreconditioner(const SparseOperator& op, Preconditioner kind) : kind_(kind) {
    if (kind_ == Preconditioner::Cholesky) {
      llt_.compute(op.stiffness());
      if (llt_.info() != Eigen::Success) kind_ = Preconditioner::Jacobi;
    }
    inv_diag_ = op.stiffness().diagonal().cwiseInverse();
  }

  Mat apply(const Mat& r) const {
    if (kind_ == Preconditioner::Cholesky) return llt_.solve(r);
    return inv_diag_.asDiagonal() * r;
  }

private:
  Preconditioner kind_;
  Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<std::ptrdiff_t>> llt_;
  Vec inv_diag_;
};

SpectrumResult dense_pairs(const SparseOperator& op, int k, bool keep_vectors) {
  const Vec w_isqrt = op.mass().cwiseSqrt().cwiseInverse();
  const Mat a = w_isqrt.asDiagonal() * Mat(op.stiffness()) * w_isqrt.asDiagonal();
  const Eigen::SelfAdjointEigenSolver<Mat> es(a);
  if (es.info() != Eigen::Success) throw IterationError("dense eigensolver failed", 0);

  const Mat x = w_isqrt.asDiagonal() * es.eigenvectors().leftCols(k);
  const Vec lambda = es.eigenvalues().head(k);

  SpectrumResult out;
  out.eigenvalues.assign(lambda.data(), lambda.data() + k);
  out.residuals = residual_norms(op.stiffness(), op.mass(), x, lambda, k);
  if (keep_vectors) out.vectors = x;
  out.diagnostics = {"dense", 1, static_cast<int>(op.size())};
  return out;
}

}  // namespace

SpectrumResult lowest_eigenpairs(const SparseOperator& op, const SolverOptions& options) {
  const Eigen::Index n = op.size();
  if (options.k < 1 || options.k > n) {
    std::ostringstream msg;
    msg << "requested " << options.k << " eigenpairs of a system with " << n << " unknowns";
    throw ConfigError(msg.str());
  }
  if (!(options.tol > 0.0)) throw ConfigError("eigensolver tolerance must be positive");
  if (options.maxiter < 1) throw ConfigError("eigensolver maxiter must be positive");

  const int k = options.k;
  const int guard = options.guard >= 0 ? options.guard : std::max(k, 4);
  const auto nb = static_cast<Eigen::Index>(std::min<Eigen::Index>(k + guard, n));

  const bool too_small = 4 * nb > n;
  if (options.method == SolverMethod::Dense ||
      (options.method == SolverMethod::Auto && n <= kDenseLimit) || too_small) {
    if (n > kDenseLimit) throw SizeError("dense eigensolve refused above the size cap");
    return dense_pairs(op, k, options.keep_vectors);
  }

  const SparseMatrix& s = op.stiffness();
  const Vec& w = op.mass();
  const BlockPreconditioner precond(op, options.preconditioner);

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  Mat x(n, nb);
  for (Eigen::Index c = 0; c < nb; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) x(r, c) = normal(rng);
  }
  x = w_orthonormalize(x, w);

  // Initial Rayleigh-Ritz on the random block.
  Mat ax = s * x;
  Vec lambda;
  {
    Mat h = x.transpose() * ax;
    h = 0.5 * (h + h.transpose()).eval();
    const Eigen::SelfAdjointEigenSolver<Mat> es(h);
    x = x * es.eigenvectors();
    ax = s * x;
    lambda = es.eigenvalues();
  }

  Mat p(n, 0);
  std::vector<double> best_values;
  std::vector<double> best_residuals;
  double best_worst = std::numeric_limits<double>::infinity();

  for (int it = 1; it <= options.maxiter; ++it) {
    const Mat r = ax - (w.asDiagonal() * x) * lambda.asDiagonal();
    const std::vector<double> res = residual_norms(s, w, x, lambda, k);
    const double worst = *std::max_element(res.begin(), res.end());
    if (worst < best_worst) {
      best_worst = worst;
      best_values.assign(lambda.data(), lambda.data() + k);
      best_residuals = res;
    }
    if (worst <= options.tol) {
      SpectrumResult out;
      out.eigenvalues.assign(lambda.data(), lambda.data() + k);
      out.residuals = res;
      if (options.keep_vectors) out.vectors = x.leftCols(k);
      out.diagnostics = {"lobpcg", it, static_cast<int>(nb)};
      return out;
    }

    Mat q(n, nb + p.cols());
    q << precond.apply(r), p;
    for (int pass = 0; pass < 2; ++pass) q -= x * weighted_gram(x, w, q);
    q = w_orthonormalize(q, w);

    Mat v(n, nb + q.cols());
    v << x, q;
    Mat av(n, v.cols());
    av << ax, s * q;
    Mat h = v.transpose() * av;
    h = 0.5 * (h + h.transpose()).eval();
    const Eigen::SelfAdjointEigenSolver<Mat> es(h);
    if (es.info() != Eigen::Success) {
      throw IterationError("Rayleigh-Ritz step failed", it, best_values, best_residuals);
    }
    const Mat c = es.eigenvectors().leftCols(nb);
    p = q * c.bottomRows(q.cols());
    x = v * c;
    ax = s * x;
    lambda = es.eigenvalues().head(nb);
  }

  std::ostringstream msg;
  msg << "eigensolver did not reach tol " << options.tol << " within " << options.maxiter
      << " iterations (best max residual " << best_worst << ")";
  throw IterationError(msg.str(), options.maxiter, best_values, best_residuals);
}

std::vector<double> dense_reference(const SparseOperator& op) {
  if (op.size() > kDenseLimit) {
    std::ostringstream msg;
    msg << "dense reference refused for " << op.size() << " unknowns (cap " << kDenseLimit << ")";
    throw SizeError(msg.str());
  }
  const Vec w_isqrt = op.mass().cwiseSqrt().cwiseInverse();
  const Mat a = w_isqrt.asDiagonal() * Mat(op.stiffness()) * w_isqrt.asDiagonal();
  const Eigen::SelfAdjointEigenSolver<Mat> es(a, Eigen::EigenvaluesOnly);
  const Vec& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double residual_check(const SparseOperator& op, const SpectrumResult& result) {
  if (!result.vectors) throw UsageError("spectrum result carries no eigenvectors");
  const Mat& x = *result.vectors;
  const auto count = static_cast<Eigen::Index>(result.eigenvalues.size());
  if (x.cols() != count || x.rows() != op.size()) {
    throw UsageError("eigenvector block does not match the operator");
  }
  const Vec lambda = Eigen::Map<const Vec>(result.eigenvalues.data(), count);
  const std::vector<double> res = residual_norms(op.stiffness(), op.mass(), x, lambda, count);
  return res.empty() ? 0.0 : *std::max_element(res.begin(), res.end());
}

}  // namespace pairwire
