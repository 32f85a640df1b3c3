#include "pairwire/geometry.hpp"

#include <cmath>
#include <sstream>

#include "pairwire/errors.hpp"

namespace pairwire {

std::string_view to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::Interior: return "Interior";
    case BoundaryTag::DirichletPair: return "DirichletPair";
    case BoundaryTag::DirichletDiagonal: return "DirichletDiagonal";
    case BoundaryTag::DirichletTruncation: return "DirichletTruncation";
    case BoundaryTag::RobinWireEnd: return "RobinWireEnd";
  }
  return "?";
}

DomainSpec::DomainSpec(double length, Reduction reduction, double extension)
    : length_(length), extension_(extension), reduction_(reduction) {
  if (!(extension > 0.0) || !std::isfinite(extension)) {
    throw ConfigError("pair extension must be positive and finite");
  }
  if (!(length > extension) || !std::isfinite(length)) {
    std::ostringstream msg;
    msg << "wire length L = " << length << " must exceed the pair extension " << extension;
    throw ConfigError(msg.str());
  }
}

bool contains_within(Point p, const DomainSpec& spec, double tol) {
  const double d = spec.extension();
  const double L = spec.length();
  if (spec.reduction() == Reduction::HalfDomain) {
    return p.x >= -tol && p.x <= p.y + tol && p.y - p.x <= d + tol && p.y <= L + tol;
  }
  return p.x >= -tol && p.y >= -tol && std::abs(p.x - p.y) <= d + tol && p.x <= L + tol &&
         p.y <= L + tol;
}

bool contains(Point p, const DomainSpec& spec) { return contains_within(p, spec, 0.0); }

BoundaryTag classify_boundary(Point p, const DomainSpec& spec, double tol) {
  if (!(tol >= 0.0)) throw ValidationError("classification tolerance must be non-negative");
  if (!contains_within(p, spec, tol)) {
    std::ostringstream msg;
    msg << "point (" << p.x << ", " << p.y << ") lies outside the domain";
    throw DomainError(msg.str());
  }
  const double d = spec.extension();
  const double L = spec.length();
  const auto near = [tol](double a, double b) { return std::abs(a - b) <= tol; };

  if (near(std::abs(p.y - p.x), d)) return BoundaryTag::DirichletPair;
  if (spec.reduction() == Reduction::HalfDomain && near(p.x, p.y)) {
    return BoundaryTag::DirichletDiagonal;
  }
  if (near(p.x, L) || near(p.y, L)) return BoundaryTag::DirichletTruncation;
  if (near(p.x, 0.0)) return BoundaryTag::RobinWireEnd;
  if (spec.reduction() == Reduction::FullDomain && near(p.y, 0.0)) {
    return BoundaryTag::RobinWireEnd;
  }
  return BoundaryTag::Interior;
}

}  // namespace pairwire
