#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cpdshift/measure.hpp"
#include "cpdshift/sequences.hpp"

namespace cpdshift {

// Prepend gamma_{-1} = theta to a CPD sequence. Feasible if and only if
// integral of 1/x d(nu) <= theta + gamma_1 - 2(gamma_0 + c); the extended
// triplet is (gamma_0 - theta - c, c, (1/x) nu + slack delta_0).
struct OneStepSequenceExtension {
  bool feasible;
  double inverse_moment;  // integral of 1/x d(nu); +inf with an atom at 0
  double bound;           // theta + gamma_1 - 2(gamma_0 + c)
  double slack;           // nu_beta({0}) = bound - inverse_moment
  std::optional<RepresentingTriplet> triplet;
  double new_gamma0;  // = theta
};

OneStepSequenceExtension extend_sequence_1(const RepresentingTriplet& triplet,
                                           const CpdSequence& gamma, double theta);

// Prepend weight t to a CPD shift. Feasible iff 1/t^2 >= sigma_1 where
// sigma_1 = integral of 1/x d(nu) + 1 + c - b; the extended scalar triplet
// is (t^2(1-c) - 1, t^2 c, t^2 (1/x) nu + mass delta_0).
struct OneStepShiftExtension {
  bool feasible;
  double sigma1;
  double t_upper;  // sup of admissible t; +inf when sigma_1 <= 0
  std::optional<RepresentingTriplet> triplet;
  double mass_at_zero;  // nu_t({0}) for the probed t
};

OneStepShiftExtension extend_shift_1(const RepresentingTriplet& triplet, double t);

// sigma_1 = m_{-1} + 1 + c - b,
// sigma_{k+1} = (m_{-(k+1)} + 2c) / prod_{j<=k} sigma_j + 2 - 1/sigma_k,
// where m_{-k} = integral of x^{-k} d(nu). Entries may be +inf; once some
// sigma_k vanishes (within 1e-12) the tail is undefined and marked NaN.
struct SigmaTrace {
  std::vector<double> sigma;                 // sigma_1 .. sigma_m
  std::optional<std::size_t> n_lambda;       // nullopt = infinity; 0 = none finite
  std::optional<std::size_t> degenerate_at;  // first k with |sigma_k| <= 1e-12
};

SigmaTrace sigma_trace(const RepresentingTriplet& triplet, std::size_t m);

struct ExtensionStep {
  bool forced;     // equality-determined (every step except the last)
  double t;        // forced value, or the representative used at the final step
  double t_upper;  // == t for forced steps; admissible sup at the final step
  RepresentingTriplet triplet;
  double mass_at_zero;  // nu({0}) of the step's triplet
};

struct ExtensionResult {
  bool feasible;
  std::vector<ExtensionStep> steps;  // all n steps when feasible, fewer otherwise
  std::size_t failed_step;           // 0 when feasible
  std::string failure_reason;
};

// n-step backward extension: t_1..t_{n-1} are forced by the equality chain
// 1/t_k^2 = (prod_{j<k} t_j^2)(m_{-k} + 2c) + 2 - t_{k-1}^2 with
// t_0^2 = 1 + b + c, and t_n ranges over (0, t_upper] (or all of (0, inf)
// when the final right-hand side is nonpositive).
ExtensionResult extend_shift_n(const RepresentingTriplet& triplet, std::size_t n);

enum class InfiniteStepVerdict { extendable, not_extendable, indeterminate };

const char* to_string(InfiniteStepVerdict v);

// Infinity-step criterion: definite no when nu charges 0 or some sigma_k is
// strictly negative after positive predecessors; yes when b <= c, or when
// sigma_1..sigma_{p-1} > 0 and sigma_p >= 1 for some p <= cap. The
// criterion is sufficient, not necessary, so the scan may end indeterminate.
InfiniteStepVerdict infinite_step_check(const RepresentingTriplet& triplet,
                                        std::size_t cap = 64);

}  // namespace cpdshift
