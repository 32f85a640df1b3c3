#include "pairwire/bec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pairwire/errors.hpp"

namespace pairwire::bec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kThreshold = 2.0 * kPi * kPi;
constexpr std::size_t kMaxSeriesTerms = 2'000'000'000;

// Compensated (Neumaier) accumulator; sums run over up to ~1e8 terms.
class Accumulator {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Upper bound on log(erfc(x)) for x >= 0; erfc(x) <= exp(-x^2) / (x sqrt(pi)).
double log_erfc_upper(double x) {
  if (x < 1.0) return std::log(std::erfc(x));
  return -x * x - std::log(x * std::sqrt(kPi));
}

// Upper bound on sum_{n >= n0} exp(shift - alpha n^2) for a decreasing summand:
// first term plus the integral from n0 to infinity.
double gaussian_tail(double shift, double alpha, double n0) {
  return std::exp(shift - alpha * n0 * n0) +
         std::sqrt(kPi) / (2.0 * std::sqrt(alpha)) *
             std::exp(shift + log_erfc_upper(std::sqrt(alpha) * n0));
}

double bose(double a) { return 1.0 / std::expm1(a); }

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ValidationError("inverse temperature must be positive and finite");
  }
}

void require_length(double length) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ValidationError("wire length must be positive and finite");
  }
}

// Rectangle levels (k >= 1, l >= 0) at mu = rect_min - base, base > 0 unless
// the lowest rectangle level is itself the ground level (then base = offset).
// The (1, 0) term goes to `ground` when ground_is_rect is set.
void rectangle_sums(double beta, double base, double length, double tail_tol, bool ground_is_rect,
                    OccupationSum& out) {
  const double c = kPi * kPi / (8.0 * length * length);
  const double bc = beta * c;
  const double budget = tail_tol * length;

  Accumulator ground;
  Accumulator excited;
  for (int k = 1;; ++k) {
    const double k2m1 = static_cast<double>(k) * k - 1.0;
    // exp(-A_k) factor with a_{k,l} = A_k + beta c (2l + 1)^2.
    const double a_k = beta * (base + kThreshold * k2m1 - c);

    if (k > 1) {
      // Every level with k' >= k: sum over l of exp(-beta c (2l+1)^2) <= 1 + sqrt(pi)/(4 sqrt(bc)).
      const double a_min = beta * (base + kThreshold * k2m1);
      const double shift = -beta * (base - kThreshold - c);
      const double k_tail = gaussian_tail(shift, beta * kThreshold, k) *
                            (1.0 + std::sqrt(kPi) / (4.0 * std::sqrt(bc))) / (-std::expm1(-a_min));
      if (k_tail <= 0.5 * budget) {
        out.truncation_bound += k_tail;
        break;
      }
    }

    const double level_budget = std::ldexp(budget, -(k + 1));
    for (long long l = 0;; ++l) {
      const double odd = 2.0 * static_cast<double>(l) + 1.0;
      const double a = beta * (base + kThreshold * k2m1 + c * (odd * odd - 1.0));
      const double term = bose(a);
      if (ground_is_rect && k == 1 && l == 0) {
        ground.add(term);
      } else {
        excited.add(term);
      }
      ++out.terms;
      if (out.terms > kMaxSeriesTerms) throw IterationError("level enumeration did not converge", 0);
      if (term > level_budget) continue;

      const double next = odd + 2.0;
      const double a_next = a_k + bc * next * next;
      const double l_tail = (std::exp(-a_next) + std::sqrt(kPi) / (4.0 * std::sqrt(bc)) *
                                                     std::exp(-a_k + log_erfc_upper(std::sqrt(bc) * next))) /
                            (-std::expm1(-a_next));
      if (l_tail <= level_budget) {
        out.truncation_bound += l_tail;
        break;
      }
    }
  }
  out.ground += ground.value();
  out.excited += excited.value();
}

// sum_{j>=1} exp(-j g) / sqrt(j), truncated once the geometric tail bound
// exp(-(J+1) g) / (sqrt(J+1) (1 - exp(-g))) drops below tol.
double li_half_of_exp(double g, double tol) {
  const double q = std::exp(-g);
  if (q == 0.0) return 0.0;
  const double one_minus_q = -std::expm1(-g);
  Accumulator sum;
  double zj = q;
  for (std::size_t j = 1; j <= kMaxSeriesTerms; ++j) {
    const double dj = static_cast<double>(j);
    sum.add(zj / std::sqrt(dj));
    const double tail = zj * q / (std::sqrt(dj + 1.0) * one_minus_q);
    if (tail <= tol) return sum.value();
    // Re-derive the power periodically so the running product cannot drift.
    zj = (j % 256 == 0) ? std::exp(-(dj + 1.0) * g) : zj * q;
  }
  throw IterationError("excited-density series did not reach its tolerance", 0);
}

}  // namespace

double rectangle_eigenvalue(int k, int l, double length) {
  if (k < 1) throw DomainError("rectangle level index k must be at least 1");
  if (l < 0) throw DomainError("rectangle level index l must be non-negative");
  if (!(length > 0.0)) throw DomainError("rectangle length must be positive");
  const double odd = 2.0 * l + 1.0;
  return kThreshold * k * k + kPi * kPi * odd * odd / (8.0 * length * length);
}

SpectrumModel SpectrumModel::bound(double e0) {
  if (!(e0 >= 0.0) || !(e0 < kThreshold)) {
    throw ValidationError("bound model needs 0 <= E0 < 2 pi^2");
  }
  SpectrumModel m;
  m.kind_ = Kind::Bound;
  m.e0_ = e0;
  return m;
}

SpectrumModel SpectrumModel::no_bound() {
  SpectrumModel m;
  m.kind_ = Kind::NoBound;
  return m;
}

SpectrumModel SpectrumModel::explicit_levels(std::vector<double> levels) {
  if (levels.empty()) throw ValidationError("explicit model needs at least one level");
  if (!std::is_sorted(levels.begin(), levels.end())) {
    throw ValidationError("explicit levels must be ascending");
  }
  if (!(levels.front() >= 0.0) || !std::isfinite(levels.back())) {
    throw ValidationError("explicit levels must be finite and non-negative");
  }
  SpectrumModel m;
  m.kind_ = Kind::Explicit;
  m.levels_ = std::move(levels);
  m.e0_ = m.levels_.front();
  return m;
}

double SpectrumModel::min_level(double length) const {
  switch (kind_) {
    case Kind::Bound: return e0_;
    case Kind::NoBound: return rectangle_eigenvalue(1, 0, length);
    case Kind::Explicit: return levels_.front();
  }
  return 0.0;
}

std::string SpectrumModel::name() const {
  switch (kind_) {
    case Kind::Bound: return "bound";
    case Kind::NoBound: return "nobound";
    case Kind::Explicit: return "explicit";
  }
  return "?";
}

OccupationSum occupation_sum(double beta, double offset, double length, const SpectrumModel& model,
                             double tail_tol) {
  require_beta(beta);
  require_length(length);
  if (!(offset > 0.0)) {
    throw DomainError("chemical potential must lie strictly below the lowest level");
  }
  if (!(tail_tol > 0.0)) throw ValidationError("tail tolerance must be positive");

  OccupationSum out;
  switch (model.kind()) {
    case SpectrumModel::Kind::Bound: {
      out.ground = bose(beta * offset);
      out.terms = 1;
      const double rect_gap = rectangle_eigenvalue(1, 0, length) - model.e0();
      rectangle_sums(beta, rect_gap + offset, length, tail_tol, false, out);
      break;
    }
    case SpectrumModel::Kind::NoBound:
      rectangle_sums(beta, offset, length, tail_tol, true, out);
      break;
    case SpectrumModel::Kind::Explicit: {
      const auto& levels = model.levels();
      const double e_min = levels.front();
      out.ground = bose(beta * offset);
      Accumulator excited;
      for (std::size_t n = 1; n < levels.size(); ++n) excited.add(bose(beta * (levels[n] - e_min + offset)));
      out.excited = excited.value();
      out.terms = levels.size();
      out.truncation_bound = bose(beta * (levels.back() - e_min + offset));
      break;
    }
  }
  return out;
}

double total_density(double beta, double mu, double length, const SpectrumModel& model,
                     double tail_tol) {
  require_length(length);
  const double offset = model.min_level(length) - mu;
  if (!(offset > 0.0)) {
    std::ostringstream msg;
    msg << "chemical potential " << mu << " is not below the lowest level "
        << model.min_level(length);
    throw DomainError(msg.str());
  }
  return occupation_sum(beta, offset, length, model, tail_tol).total() / length;
}

namespace {

struct MuSolve {
  double offset;
  OccupationSum sums;
};

MuSolve solve_offset(double beta, double rho, double length, const SpectrumModel& model,
                     double tol) {
  require_beta(beta);
  require_length(length);
  if (!(rho > 0.0) || !std::isfinite(rho)) throw ValidationError("pair density must be positive");
  if (!(tol > 0.0) || !(tol < 1.0)) throw ValidationError("density tolerance must lie in (0, 1)");

  const double tail_tol = std::min(kTailTol, 0.01 * tol * rho);
  const auto density = [&](double offset) {
    OccupationSum s = occupation_sum(beta, offset, length, model, tail_tol);
    return MuSolve{offset, s};
  };
  const auto rho_of = [&](const MuSolve& s) { return s.sums.total() / length; };

  // Far end: double min_level - mu until the gas is thinner than rho.
  double far = std::max(10.0 / beta, 10.0);
  MuSolve far_s = density(far);
  for (int i = 0; rho_of(far_s) >= rho; ++i) {
    if (i > 2000) throw IterationError("could not bracket the chemical potential", i);
    far *= 2.0;
    far_s = density(far);
  }
  const double min_level = model.min_level(length);
  double near = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(min_level));
  MuSolve near_s = density(near);
  if (rho_of(near_s) < rho) {
    throw IterationError("pair density unreachable below the lowest level", 0);
  }

  for (int it = 0; it < 1000; ++it) {
    if (std::abs(rho_of(near_s) - rho) <= tol * rho) return near_s;
    if (std::abs(rho_of(far_s) - rho) <= tol * rho) return far_s;
    const double mid = std::sqrt(near * far);
    if (!(mid > near && mid < far)) break;
    MuSolve mid_s = density(mid);
    if (rho_of(mid_s) >= rho) {
      near = mid;
      near_s = mid_s;
    } else {
      far = mid;
      far_s = mid_s;
    }
  }
  std::ostringstream msg;
  msg << "chemical potential bisection stalled at relative density error "
      << std::abs(rho_of(near_s) - rho) / rho;
  throw IterationError(msg.str(), 1000);
}

}  // namespace

double solve_mu(double beta, double rho, double length, const SpectrumModel& model, double tol) {
  return model.min_level(length) - solve_offset(beta, rho, length, model, tol).offset;
}

GasSolution condensate_stats(double beta, double rho, double length, const SpectrumModel& model,
                             double tol) {
  const MuSolve s = solve_offset(beta, rho, length, model, tol);
  GasSolution g;
  g.beta = beta;
  g.rho = rho;
  g.length = length;
  g.min_level = model.min_level(length);
  g.mu_offset = s.offset;
  g.mu = g.min_level - s.offset;
  g.n0 = s.sums.ground;
  g.n0_per_length = s.sums.ground / length;
  g.rho_ex = s.sums.excited / length;
  g.truncation_bound = s.sums.truncation_bound / length;
  return g;
}

double rho_ex_infinity(double beta, double mu, double tol) {
  require_beta(beta);
  if (!(tol > 0.0)) throw ValidationError("series tolerance must be positive");
  if (!(mu < kThreshold)) {
    std::ostringstream msg;
    msg << "excited density diverges for mu = " << mu << " >= 2 pi^2";
    throw DivergenceError(msg.str());
  }

  const double prefactor = 1.0 / std::sqrt(2.0 * kPi * beta);
  const double budget = tol / prefactor;
  Accumulator sum;
  for (int n = 1;; ++n) {
    const double g = beta * (kThreshold * n * n - mu);
    if (n > 1) {
      // sum_{n' >= n} Li_{1/2}(e^-g_n') <= sum e^-g_n' / (1 - e^-g_n).
      const double tail = gaussian_tail(beta * mu, beta * kThreshold, n) / (-std::expm1(-g));
      if (tail <= 0.5 * budget) break;
    }
    sum.add(li_half_of_exp(g, std::ldexp(budget, -(n + 1))));
  }
  return prefactor * sum.value();
}

double critical_density(double beta, double e0, double tol) {
  if (!(e0 < kThreshold)) {
    throw DomainError("no gap below the threshold; the critical density is infinite");
  }
  return rho_ex_infinity(beta, e0, tol);
}

std::vector<GasSolution> thermo_sweep(double beta, double rho, const std::vector<double>& lengths,
                                      const SpectrumModel& model, double tol) {
  if (lengths.empty()) throw ValidationError("length sequence is empty");
  if (std::adjacent_find(lengths.begin(), lengths.end(), std::greater_equal<>()) != lengths.end()) {
    throw ValidationError("length sequence must be strictly ascending");
  }
  std::vector<GasSolution> out;
  out.reserve(lengths.size());
  for (double length : lengths) out.push_back(condensate_stats(beta, rho, length, model, tol));
  return out;
}

}  // namespace pairwire::bec
