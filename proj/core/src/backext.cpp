#include "cpdshift/backext.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace cpdshift {

namespace {

constexpr double kSigmaDegenerate = 1e-12;
constexpr double kMassClampTolerance = 1e-10;

void require_nonnegative_support(const DiscreteMeasure& nu, const char* who) {
  if (!nu.supported_in_nonnegatives()) {
    throw DomainError(std::string(who) + ": measure has negative-support atoms");
  }
}

// Atom list of (prod * x^{-k}) nu plus an optional atom at 0. The caller
// guarantees nu has no atom at 0 and a nonnegative mass up to rounding.
DiscreteMeasure extended_measure(const DiscreteMeasure& nu, int k, double prod,
                                 double mass_at_zero, const char* who) {
  if (mass_at_zero < -kMassClampTolerance) {
    throw DomainError(std::string(who) + ": extension mass at 0 is negative");
  }
  std::vector<DiscreteMeasure::Atom> atoms;
  atoms.reserve(nu.size() + 1);
  if (mass_at_zero > 0.0) atoms.push_back({0.0, mass_at_zero});
  for (const DiscreteMeasure::Atom& a : nu.atoms()) {
    atoms.push_back({a.x, prod * a.w * std::pow(a.x, static_cast<double>(-k))});
  }
  return DiscreteMeasure(std::move(atoms));
}

}  // namespace

const char* to_string(InfiniteStepVerdict v) {
  switch (v) {
    case InfiniteStepVerdict::extendable: return "extendable";
    case InfiniteStepVerdict::not_extendable: return "not-extendable";
    case InfiniteStepVerdict::indeterminate: return "indeterminate";
  }
  return "?";
}

OneStepSequenceExtension extend_sequence_1(const RepresentingTriplet& triplet,
                                           const CpdSequence& gamma, double theta) {
  require_nonnegative_support(triplet.nu, "extend_sequence_1");
  OneStepSequenceExtension out;
  out.inverse_moment = triplet.nu.moment(-1);
  out.bound = theta + gamma[1] - 2.0 * (gamma[0] + triplet.c);
  out.slack = out.bound - out.inverse_moment;
  out.new_gamma0 = theta;
  out.feasible = out.inverse_moment <= out.bound;
  if (out.feasible) {
    const double slack = out.slack <= 0.0 ? 0.0 : out.slack;
    out.triplet = RepresentingTriplet(
        gamma[0] - theta - triplet.c, triplet.c,
        extended_measure(triplet.nu, 1, 1.0, slack, "extend_sequence_1"));
  }
  return out;
}

OneStepShiftExtension extend_shift_1(const RepresentingTriplet& triplet, double t) {
  require_nonnegative_support(triplet.nu, "extend_shift_1");
  if (!(t > 0.0)) {
    throw DomainError("extend_shift_1: t must be positive");
  }
  OneStepShiftExtension out;
  out.sigma1 = triplet.nu.moment(-1) + 1.0 + triplet.c - triplet.b;
  out.t_upper = out.sigma1 > 0.0 ? 1.0 / std::sqrt(out.sigma1)
                                 : std::numeric_limits<double>::infinity();
  const double t2 = t * t;
  out.mass_at_zero = 1.0 - t2 * out.sigma1;
  out.feasible = 1.0 / t2 >= out.sigma1;
  if (out.feasible) {
    double mass = out.mass_at_zero;
    if (mass < 0.0 && mass >= -kMassClampTolerance) mass = 0.0;
    out.triplet = RepresentingTriplet(
        t2 * (1.0 - triplet.c) - 1.0, t2 * triplet.c,
        extended_measure(triplet.nu, 1, t2, mass, "extend_shift_1"));
  }
  return out;
}

SigmaTrace sigma_trace(const RepresentingTriplet& triplet, std::size_t m) {
  require_nonnegative_support(triplet.nu, "sigma_trace");
  SigmaTrace out;
  out.sigma.reserve(m);
  out.n_lambda = triplet.nu.has_atom_at_zero() ? std::optional<std::size_t>(0) : std::nullopt;

  double prod = 1.0;
  double prev = 0.0;
  bool dead = false;
  for (std::size_t k = 1; k <= m; ++k) {
    if (dead) {
      out.sigma.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    const double inv_moment = triplet.nu.moment(-static_cast<int>(k));
    double s;
    if (k == 1) {
      s = inv_moment + 1.0 + triplet.c - triplet.b;
    } else {
      s = (inv_moment + 2.0 * triplet.c) / prod + 2.0 - 1.0 / prev;
    }
    out.sigma.push_back(s);
    if (!std::isfinite(s) || std::abs(s) <= kSigmaDegenerate) {
      if (std::isfinite(s) && !out.degenerate_at) out.degenerate_at = k;
      dead = true;
      continue;
    }
    prod *= s;
    prev = s;
    if (!std::isfinite(prod)) dead = true;
  }
  return out;
}

ExtensionResult extend_shift_n(const RepresentingTriplet& triplet, std::size_t n) {
  require_nonnegative_support(triplet.nu, "extend_shift_n");
  if (n == 0) {
    throw DomainError("extend_shift_n: n must be positive");
  }
  const double t0_sq = 1.0 + triplet.b + triplet.c;  // = lambda_0^2
  if (!(t0_sq > 0.0)) {
    throw DomainError("extend_shift_n: 1 + b + c must be positive for a shift triplet");
  }

  ExtensionResult result;
  result.feasible = false;
  result.failed_step = 0;

  double prod = 1.0;     // prod of t_j^2 over resolved steps
  double prev_sq = t0_sq;
  for (std::size_t k = 1; k <= n; ++k) {
    const double inv_moment = triplet.nu.moment(-static_cast<int>(k));
    if (!std::isfinite(inv_moment)) {
      result.failed_step = k;
      result.failure_reason = "inverse moment of order " + std::to_string(k) +
                              " is infinite (atom at 0)";
      return result;
    }
    const double rhs = prod * (inv_moment + 2.0 * triplet.c) + 2.0 - prev_sq;
    const bool last = (k == n);
    if (!last) {
      // Forced equality 1/t_k^2 = rhs needs rhs > 0.
      if (rhs <= kSigmaDegenerate) {
        result.failed_step = k;
        result.failure_reason = std::abs(rhs) <= kSigmaDegenerate
                                    ? "degenerate step: forced 1/t^2 vanishes"
                                    : "forced 1/t^2 is negative";
        return result;
      }
      const double t_sq = 1.0 / rhs;
      prod *= t_sq;
      const double mass = 1.0 - prod * (inv_moment + 2.0 * triplet.c) +
                          t_sq * (prev_sq - 2.0);
      double clamped = mass;
      if (clamped < 0.0 && clamped >= -kMassClampTolerance) clamped = 0.0;
      ExtensionStep step;
      step.forced = true;
      step.t = std::sqrt(t_sq);
      step.t_upper = step.t;
      step.mass_at_zero = clamped;
      step.triplet = RepresentingTriplet(
          t_sq - triplet.c * prod - 1.0, triplet.c * prod,
          extended_measure(triplet.nu, static_cast<int>(k), prod, clamped,
                           "extend_shift_n"));
      result.steps.push_back(std::move(step));
      prev_sq = t_sq;
    } else {
      // Final inequality 1/t_n^2 >= rhs.
      ExtensionStep step;
      step.forced = false;
      step.t_upper = rhs > 0.0 ? 1.0 / std::sqrt(rhs)
                               : std::numeric_limits<double>::infinity();
      step.t = rhs > 0.0 ? step.t_upper : 1.0;
      const double t_sq = step.t * step.t;
      const double final_prod = prod * t_sq;
      const double mass = 1.0 - final_prod * (inv_moment + 2.0 * triplet.c) +
                          t_sq * (prev_sq - 2.0);
      double clamped = mass;
      if (clamped < 0.0 && clamped >= -kMassClampTolerance) clamped = 0.0;
      step.mass_at_zero = clamped;
      step.triplet = RepresentingTriplet(
          t_sq - triplet.c * final_prod - 1.0, triplet.c * final_prod,
          extended_measure(triplet.nu, static_cast<int>(k), final_prod, clamped,
                           "extend_shift_n"));
      result.steps.push_back(std::move(step));
      result.feasible = true;
    }
  }
  return result;
}

InfiniteStepVerdict infinite_step_check(const RepresentingTriplet& triplet, std::size_t cap) {
  require_nonnegative_support(triplet.nu, "infinite_step_check");
  if (triplet.nu.has_atom_at_zero()) {
    return InfiniteStepVerdict::not_extendable;
  }
  if (triplet.b <= triplet.c) {
    return InfiniteStepVerdict::extendable;
  }
  const SigmaTrace trace = sigma_trace(triplet, cap);
  for (std::size_t k = 0; k < trace.sigma.size(); ++k) {
    const double s = trace.sigma[k];
    if (std::isnan(s) || std::abs(s) <= kSigmaDegenerate) {
      return InfiniteStepVerdict::indeterminate;
    }
    if (s >= 1.0) {
      return InfiniteStepVerdict::extendable;
    }
    if (s < 0.0) {
      // No (k+2)-step extension: the forced weight at step k+1 would need a
      // negative square.
      return InfiniteStepVerdict::not_extendable;
    }
  }
  return InfiniteStepVerdict::indeterminate;
}

}  // namespace cpdshift
