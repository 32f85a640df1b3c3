#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pairwire/geometry.hpp"

namespace pairwire {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, std::ptrdiff_t>;

struct LatticeNode {
  int i = 0;  // x = i h
  int j = 0;  // y = j h
};

/// Uniform lattice of spacing h = d/m on the truncated domain, keeping only
/// the unknowns: interior nodes and wire-end (Robin) nodes. Dirichlet nodes
/// are eliminated, i.e. their value is pinned to zero.
///
/// Both 45-degree lines |y - x| = d pass through lattice nodes because h
/// divides d, and the truncation line y = L is a lattice row because h
/// divides L.
class Grid {
public:
  const DomainSpec& domain() const noexcept { return domain_; }
  int resolution() const noexcept { return m_; }
  double spacing() const noexcept { return h_; }
  /// Lattice index of the truncation line, L / h.
  int rows() const noexcept { return n_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  /// Unknown index of lattice node (i, j), or -1 for eliminated or absent nodes.
  std::ptrdiff_t dof_index(int i, int j) const noexcept;
  LatticeNode node(std::size_t k) const { return nodes_.at(k); }
  BoundaryTag tag(std::size_t k) const { return tags_.at(k); }
  const std::vector<LatticeNode>& nodes() const noexcept { return nodes_; }

  Point position(int i, int j) const noexcept { return {i * h_, j * h_}; }
  /// True if the lattice node lies in the closed domain.
  bool in_domain(int i, int j) const noexcept;
  /// Tag of any lattice node of the closed domain, unknown or not.
  BoundaryTag lattice_tag(int i, int j) const;

private:
  friend Grid build_grid(const DomainSpec& spec, int m);
  Grid(const DomainSpec& spec, int m);

  DomainSpec domain_;
  int m_;
  double h_;
  int n_;
  std::vector<int> row_first_;
  std::vector<int> row_count_;
  std::vector<std::size_t> row_offset_;
  std::vector<LatticeNode> nodes_;
  std::vector<BoundaryTag> tags_;
};

/// Requires m >= 3 and L m / d integral.
Grid build_grid(const DomainSpec& spec, int m);

/// Interaction strength sigma(y) = v(0, y) on the wire-end edge, y in units
/// of d on [0, 1]. Always non-negative and bounded.
class SigmaProfile {
public:
  enum class Kind { Zero, Constant, Step, Table };

  static SigmaProfile zero();
  static SigmaProfile constant(double c);
  /// sigma = c for y < y0, zero beyond.
  static SigmaProfile step(double c, double y0);
  /// Piecewise-constant interpolation of equally spaced samples on [0, 1],
  /// each sample owning the nearest points.
  static SigmaProfile table(std::vector<double> samples);

  double operator()(double y) const;
  double sup_norm() const noexcept { return sup_; }
  Kind kind() const noexcept { return kind_; }
  double strength() const noexcept { return c_; }
  double step_end() const noexcept { return y0_; }
  const std::vector<double>& samples() const noexcept { return samples_; }
  std::string describe() const;

private:
  SigmaProfile() = default;

  Kind kind_ = Kind::Zero;
  double c_ = 0.0;
  double y0_ = 0.0;
  std::vector<double> samples_;
  double sup_ = 0.0;
};

/// Generalized symmetric eigenproblem S x = lambda W x with W diagonal.
///
/// S is the matrix of the discrete quadratic form: sum over lattice edges of
/// (edge weight) * (difference)^2 plus the wire-end term sigma(y_j) h phi_j^2.
/// Edge weights are 1, except 1/2 for edges lying on the wire end. W holds
/// the control-volume areas: h^2 inside, h^2/2 on the wire end. Hence W^-1 S
/// is the familiar 5-point stencil 4/h^2, -1/h^2 on interior rows.
class SparseOperator {
public:
  SparseOperator(SparseMatrix stiffness, Eigen::VectorXd mass);

  const SparseMatrix& stiffness() const noexcept { return stiffness_; }
  const Eigen::VectorXd& mass() const noexcept { return mass_; }
  Eigen::Index size() const noexcept { return mass_.size(); }

  /// Present when the operator came from assemble_operator.
  const Grid* grid() const noexcept { return grid_.get(); }
  const std::optional<SigmaProfile>& sigma() const noexcept { return sigma_; }

private:
  friend SparseOperator assemble_operator(const Grid& grid, const SigmaProfile& sigma);

  SparseMatrix stiffness_;
  Eigen::VectorXd mass_;
  std::shared_ptr<const Grid> grid_;
  std::optional<SigmaProfile> sigma_;
};

SparseOperator assemble_operator(const Grid& grid, const SigmaProfile& sigma);

}  // namespace pairwire
