#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cpdshift/measure.hpp"
#include "cpdshift/sequences.hpp"

namespace cpdshift {

// Entry k of the diagonal representing triplet of W_lambda:
// b_k = (hat_{k+1} - hat_k - c) / hat_k, c_k = c / hat_k,
// nu_k = x^k nu / hat_k.
struct DiagonalEntry {
  double b_k;
  double c_k;
  DiscreteMeasure nu_k;
};

struct DiagonalTriplet {
  std::vector<DiagonalEntry> entries;  // k = 0 .. horizon-1
};

DiagonalTriplet diagonal_triplet(const RepresentingTriplet& triplet, std::size_t horizon);

enum class OperatorPart { B, C, F_total };
enum class Compactness { compact, not_compact, inconclusive };

const char* to_string(OperatorPart p);
const char* to_string(Compactness c);

// Rule-based verdict for one diagonal component of the representing triplet.
// Compactness of a diagonal operator has no finite test; the verdict states
// which hypothesis fired and reports the numerical tail as corroboration.
struct CompactnessVerdict {
  OperatorPart part;
  Compactness verdict;
  std::string rule;          // which result decided it; empty when inconclusive
  std::vector<double> tail;  // last 8 diagonal values
  double tail_liminf;        // min of the diagonal over the last quarter of the horizon
};

std::vector<CompactnessVerdict> compactness_diagnostics(const RepresentingTriplet& triplet,
                                                        std::size_t horizon);

// Candidate Berger measure mu = sum w_i/(x_i-1)^2 delta_{x_i} + r delta_1,
// r chosen so that the total mass is 1. The atom at 1 is carried as a
// separate scalar since DiscreteMeasure keeps 1 uncharged.
struct BergerMeasure {
  DiscreteMeasure off_one;  // part away from 1
  double mass_at_one = 0.0;
  bool valid = false;  // mass_at_one >= -1e-10

  double moment(int k) const { return off_one.moment(k) + mass_at_one; }
  double total_mass() const { return off_one.total_mass() + mass_at_one; }
};

// Requires c = 0 (subnormal shifts have no quadratic part).
BergerMeasure berger_from_triplet(const RepresentingTriplet& triplet);

// Forward map: b = integral of (x-1), c = 0, nu = (x-1)^2 mu.
RepresentingTriplet triplet_from_berger(const BergerMeasure& mu);

// c = 0, the hat sequence passes the Stieltjes window test, and the Berger
// remainder at 1 is not significantly negative.
bool subnormality_check(const RepresentingTriplet& triplet,
                        std::size_t window = kDefaultWindow,
                        double floor_tol = kDefaultEigFloor);

enum class FlatnessKind {
  flat_from_one,                       // lambda_0 <= lambda_1 = lambda_n for n >= 1
  flat_ones,                           // lambda_0 <= 1 = lambda_n for n >= 1
  scalar_multiple_of_unilateral_shift, // all weights equal, != 1
  unilateral_shift,                    // all weights equal 1
  inconclusive,
};

const char* to_string(FlatnessKind k);

struct FlatnessVerdict {
  FlatnessKind kind;
  std::optional<BergerMeasure> berger;  // present for every conclusive kind
  std::size_t run_start;   // matched run, or the longest equal run when inconclusive
  std::size_t run_length;
  std::string note;  // non-empty when a post-hoc consistency check failed
};

// Scans for the four flatness hypotheses on a CPD-certified weight sequence:
// four consecutive equal weights != 1 (from index >= 1), two consecutive
// weights = 1 (from index >= 1), the first four equal != 1, or the first two
// equal 1. Refuses uncertified input: the theorems assume CPD.
FlatnessVerdict flatness_analyze(const WeightSequence& weights, bool cpd_certified,
                                 double equality_rtol = 1e-10);

}  // namespace cpdshift
