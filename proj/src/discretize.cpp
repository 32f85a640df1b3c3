#include "pairwire/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pairwire/errors.hpp"

namespace pairwire {

namespace {

// Integer n with |x - n| tiny relative to x, if any.
std::optional<long long> near_integer(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<long long>(r);
  return std::nullopt;
}

}  // namespace

Grid build_grid(const DomainSpec& spec, int m) { return Grid(spec, m); }

Grid::Grid(const DomainSpec& spec, int m) : domain_(spec), m_(m) {
  if (m < 3) {
    std::ostringstream msg;
    msg << "grid resolution m = " << m << " is below the minimum of 3 nodes per pair extension";
    throw ConfigError(msg.str());
  }
  const double d = spec.extension();
  const auto n = near_integer(spec.length() * m / d);
  if (!n) {
    std::ostringstream msg;
    msg << "L * m = " << spec.length() * m / d << " is not an integer; the truncation line must be a lattice row";
    throw ConfigError(msg.str());
  }
  h_ = d / m;
  n_ = static_cast<int>(*n);

  const bool half = spec.reduction() == Reduction::HalfDomain;
  row_first_.assign(n_, 0);
  row_count_.assign(n_, 0);
  row_offset_.assign(n_ + 1, 0);
  for (int j = 0; j < n_; ++j) {
    const int first = std::max(0, j - m_ + 1);
    const int last = half ? j - 1 : std::min(n_ - 1, j + m_ - 1);
    row_first_[j] = first;
    row_count_[j] = std::max(0, last - first + 1);
    row_offset_[j + 1] = row_offset_[j] + row_count_[j];
  }

  nodes_.reserve(row_offset_[n_]);
  tags_.reserve(row_offset_[n_]);
  const double tol = 1e-9 * h_;
  for (int j = 0; j < n_; ++j) {
    for (int c = 0; c < row_count_[j]; ++c) {
      const int i = row_first_[j] + c;
      nodes_.push_back({i, j});
      const BoundaryTag tag = classify_boundary(position(i, j), domain_, tol);
      if (is_dirichlet(tag)) throw Error("internal: Dirichlet node kept as unknown");
      tags_.push_back(tag);
    }
  }
}

std::ptrdiff_t Grid::dof_index(int i, int j) const noexcept {
  if (j < 0 || j >= n_) return -1;
  const int c = i - row_first_[j];
  if (c < 0 || c >= row_count_[j]) return -1;
  return static_cast<std::ptrdiff_t>(row_offset_[j]) + c;
}

bool Grid::in_domain(int i, int j) const noexcept {
  if (i < 0 || j < 0 || i > n_ || j > n_) return false;
  if (std::abs(i - j) > m_) return false;
  return domain_.reduction() == Reduction::FullDomain || i <= j;
}

BoundaryTag Grid::lattice_tag(int i, int j) const {
  if (!in_domain(i, j)) throw DomainError("lattice node outside the domain");
  return classify_boundary(position(i, j), domain_, 1e-9 * h_);
}

SigmaProfile SigmaProfile::zero() { return SigmaProfile{}; }

SigmaProfile SigmaProfile::constant(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw ValidationError("interaction strength must be finite and non-negative");
  }
  SigmaProfile p;
  p.kind_ = c == 0.0 ? Kind::Zero : Kind::Constant;
  p.c_ = c;
  p.sup_ = c;
  return p;
}

SigmaProfile SigmaProfile::step(double c, double y0) {
  if (!(c >= 0.0) || !std::isfinite(c) || !(y0 >= 0.0) || !std::isfinite(y0)) {
    throw ValidationError("step profile parameters must be finite and non-negative");
  }
  SigmaProfile p;
  p.kind_ = Kind::Step;
  p.c_ = c;
  p.y0_ = y0;
  p.sup_ = y0 > 0.0 ? c : 0.0;
  return p;
}

SigmaProfile SigmaProfile::table(std::vector<double> samples) {
  if (samples.size() < 2) throw ValidationError("table profile needs at least two samples");
  for (double s : samples) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw ValidationError("table profile samples must be finite and non-negative");
    }
  }
  SigmaProfile p;
  p.kind_ = Kind::Table;
  p.sup_ = *std::max_element(samples.begin(), samples.end());
  p.samples_ = std::move(samples);
  return p;
}

double SigmaProfile::operator()(double y) const {
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Constant: return c_;
    case Kind::Step: return y < y0_ ? c_ : 0.0;
    case Kind::Table: {
      const auto last = static_cast<double>(samples_.size() - 1);
      const double pos = std::clamp(y, 0.0, 1.0) * last;
      return samples_[static_cast<std::size_t>(std::lround(pos))];
    }
  }
  return 0.0;
}

std::string SigmaProfile::describe() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind_) {
    case Kind::Zero: out << "zero"; break;
    case Kind::Constant: out << "const:" << c_; break;
    case Kind::Step: out << "step:" << c_ << ":" << y0_; break;
    case Kind::Table:
      out << "table:";
      for (std::size_t k = 0; k < samples_.size(); ++k) out << (k ? "," : "") << samples_[k];
      break;
  }
  return out.str();
}

SparseOperator::SparseOperator(SparseMatrix stiffness, Eigen::VectorXd mass)
    : stiffness_(std::move(stiffness)), mass_(std::move(mass)) {
  if (stiffness_.rows() != stiffness_.cols() || stiffness_.rows() != mass_.size()) {
    throw ConfigError("stiffness must be square and match the mass vector");
  }
  if (mass_.size() == 0) throw ConfigError("operator has no unknowns");
  if (!(mass_.array() > 0.0).all()) throw ConfigError("mass weights must be positive");
  stiffness_.makeCompressed();
}

SparseOperator assemble_operator(const Grid& grid, const SigmaProfile& sigma) {
  const double h = grid.spacing();
  const double d = grid.domain().extension();
  const bool full = grid.domain().reduction() == Reduction::FullDomain;
  const auto n = static_cast<Eigen::Index>(grid.size());

  std::vector<Eigen::Triplet<double, std::ptrdiff_t>> triplets;
  triplets.reserve(5 * grid.size());
  Eigen::VectorXd mass(n);

  constexpr int di[4] = {1, -1, 0, 0};
  constexpr int dj[4] = {0, 0, 1, -1};

  for (Eigen::Index k = 0; k < n; ++k) {
    const auto [i, j] = grid.node(static_cast<std::size_t>(k));
    // Half-width control volumes on the wire-end edges.
    const double wx = i == 0 ? 0.5 : 1.0;
    const double wy = (full && j == 0) ? 0.5 : 1.0;
    mass[k] = h * h * wx * wy;

    double diag = 0.0;
    for (int dir = 0; dir < 4; ++dir) {
      const int ni = i + di[dir];
      const int nj = j + dj[dir];
      if (!grid.in_domain(ni, nj)) continue;
      // Horizontal edges on row j lie on the boundary only when j == 0 (full
      // domain); vertical edges on column i only when i == 0.
      const double w = dj[dir] == 0 ? wy : wx;
      diag += w;
      const std::ptrdiff_t q = grid.dof_index(ni, nj);
      if (q >= 0) triplets.emplace_back(k, q, -w);
    }

    // Boundary form term: integral of sigma |phi|^2 along the wire ends.
    if (i == 0) {
      const double s = sigma(j * h / d);
      if (s < 0.0) throw ValidationError("interaction profile must be non-negative");
      diag += s * h * wy;
    }
    if (full && j == 0) {
      const double s = sigma(i * h / d);
      if (s < 0.0) throw ValidationError("interaction profile must be non-negative");
      diag += s * h * wx;
    }
    triplets.emplace_back(k, k, diag);
  }

  SparseMatrix stiffness(n, n);
  stiffness.setFromTriplets(triplets.begin(), triplets.end());
  SparseOperator op(std::move(stiffness), std::move(mass));
  op.grid_ = std::make_shared<const Grid>(grid);
  op.sigma_ = sigma;
  return op;
}

}  // namespace pairwire
