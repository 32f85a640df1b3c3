#pragma once

#include <optional>
#include <string_view>

namespace pairwire {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Which part of the truncated two-electron configuration space is
/// represented. The half domain {x <= y} carries the antisymmetric sector
/// through a Dirichlet condition on y = x; the full domain exists so the
/// antisymmetry reduction can be cross-checked.
enum class Reduction { HalfDomain, FullDomain };

enum class BoundaryTag {
  Interior,
  DirichletPair,        // |y - x| = d
  DirichletDiagonal,    // y = x (half domain only)
  DirichletTruncation,  // x = L or y = L
  RobinWireEnd,         // x = 0 (or y = 0 on the full domain), away from corners
};

std::string_view to_string(BoundaryTag tag);

constexpr bool is_dirichlet(BoundaryTag tag) {
  return tag == BoundaryTag::DirichletPair || tag == BoundaryTag::DirichletDiagonal ||
         tag == BoundaryTag::DirichletTruncation;
}

/// Pair configuration domain truncated at wire length L.
///
/// Lengths are measured in the same unit as the pair extension d. The
/// computational pipeline always uses d = 1; other values exist so the exact
/// scaling law can be tested. The physical pair extension in meters is
/// optional metadata consumed only by unit conversion.
class DomainSpec {
public:
  explicit DomainSpec(double length, Reduction reduction = Reduction::HalfDomain,
                      double extension = 1.0);

  double length() const noexcept { return length_; }
  double extension() const noexcept { return extension_; }
  Reduction reduction() const noexcept { return reduction_; }

  std::optional<double> physical_extension_m;

private:
  double length_;
  double extension_;
  Reduction reduction_;
};

bool contains(Point p, const DomainSpec& spec);

/// Membership with the defining inequalities relaxed by `tol`.
bool contains_within(Point p, const DomainSpec& spec, double tol);

/// Boundary segment a point of the closed domain lies on. Dirichlet segments
/// take precedence over the wire-end Robin segment at shared corners.
/// Throws DomainError if p is outside the domain by more than tol.
BoundaryTag classify_boundary(Point p, const DomainSpec& spec, double tol = 1e-12);

}  // namespace pairwire
