#include "cpdshift/shift_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cpdshift {

const char* to_string(OperatorPart p) {
  switch (p) {
    case OperatorPart::B: return "B";
    case OperatorPart::C: return "C";
    case OperatorPart::F_total: return "F_total";
  }
  return "?";
}

const char* to_string(Compactness c) {
  switch (c) {
    case Compactness::compact: return "compact";
    case Compactness::not_compact: return "not-compact";
    case Compactness::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(FlatnessKind k) {
  switch (k) {
    case FlatnessKind::flat_from_one: return "flat-from-1";
    case FlatnessKind::flat_ones: return "flat-ones";
    case FlatnessKind::scalar_multiple_of_unilateral_shift:
      return "scalar-multiple-of-unilateral-shift";
    case FlatnessKind::unilateral_shift: return "unilateral-shift";
    case FlatnessKind::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

void require_shift_measure(const DiscreteMeasure& nu, const char* who) {
  if (!nu.supported_in_nonnegatives()) {
    throw DomainError(std::string(who) + ": a shift triplet requires supp(nu) in [0, inf)");
  }
}

std::vector<double> hat_sequence(const RepresentingTriplet& triplet, std::size_t horizon,
                                 const char* who) {
  const CpdSequence hat = synthesize(triplet, 1.0, horizon);
  for (std::size_t k = 0; k <= horizon; ++k) {
    if (!(hat[k] > 0.0)) {
      throw DomainError(std::string(who) + ": hat sequence is not positive at index " +
                        std::to_string(k));
    }
  }
  return std::vector<double>(hat.values().begin(), hat.values().end());
}

std::vector<double> last_values(const std::vector<double>& v, std::size_t count) {
  const std::size_t n = std::min(count, v.size());
  return std::vector<double>(v.end() - static_cast<std::ptrdiff_t>(n), v.end());
}

double tail_min(const std::vector<double>& v) {
  const std::size_t quarter = std::max<std::size_t>(1, v.size() / 4);
  return *std::min_element(v.end() - static_cast<std::ptrdiff_t>(quarter), v.end());
}

}  // namespace

DiagonalTriplet diagonal_triplet(const RepresentingTriplet& triplet, std::size_t horizon) {
  require_shift_measure(triplet.nu, "diagonal_triplet");
  const std::vector<double> hat = hat_sequence(triplet, horizon, "diagonal_triplet");
  DiagonalTriplet out;
  out.entries.reserve(horizon);
  for (std::size_t k = 0; k < horizon; ++k) {
    DiagonalEntry e;
    e.b_k = (hat[k + 1] - hat[k] - triplet.c) / hat[k];
    e.c_k = triplet.c / hat[k];
    e.nu_k = triplet.nu.power_scaled(static_cast<int>(k)).scaled(1.0 / hat[k]);
    out.entries.push_back(std::move(e));
  }
  return out;
}

std::vector<CompactnessVerdict> compactness_diagnostics(const RepresentingTriplet& triplet,
                                                        std::size_t horizon) {
  require_shift_measure(triplet.nu, "compactness_diagnostics");
  const DiagonalTriplet diag = diagonal_triplet(triplet, horizon);

  std::vector<double> b_diag, c_diag, f_diag;
  b_diag.reserve(diag.entries.size());
  for (const DiagonalEntry& e : diag.entries) {
    b_diag.push_back(e.b_k);
    c_diag.push_back(e.c_k);
    f_diag.push_back(e.nu_k.total_mass());
  }

  const GammaCoefficients coeffs = gamma_coeffs(triplet.nu);
  std::vector<CompactnessVerdict> verdicts;

  // C is compact for every CPD shift.
  verdicts.push_back({OperatorPart::C, Compactness::compact,
                      "C diagonal c/hat tends to 0 for every CPD shift",
                      last_values(c_diag, 8), tail_min(c_diag)});

  CompactnessVerdict b{OperatorPart::B, Compactness::inconclusive, "", last_values(b_diag, 8),
                       tail_min(b_diag)};
  const bool case4 = coeffs.theta_sup <= 1.0 && triplet.c == 0.0 &&
                     coeffs.gamma1.is_finite() &&
                     std::abs(triplet.b + coeffs.gamma1) > 1e-10;
  if (case4) {
    b.verdict = Compactness::compact;
    b.rule = "theta <= 1, c = 0, Gamma1 finite, b + Gamma1 != 0: hat ratios tend to 1";
  } else if (coeffs.theta_sup > 1.0) {
    // For an atomic measure the gap hypothesis nu((1, theta)) = 0 always
    // holds with theta = the smallest atom above 1, and the [0,1) part of
    // the 1/(x-1)^2 integral is a finite sum.
    b.verdict = Compactness::not_compact;
    b.rule = "theta > 1 with a spectral gap above 1: hat growth keeps b_k bounded away "
             "from 0";
  }
  verdicts.push_back(std::move(b));

  CompactnessVerdict f{OperatorPart::F_total, Compactness::inconclusive, "",
                       last_values(f_diag, 8), tail_min(f_diag)};
  if (coeffs.theta_sup > 1.0) {
    // 1 is never in the support of an admissible atomic measure.
    f.verdict = Compactness::not_compact;
    f.rule = "theta > 1 and 1 not in supp(nu): nu_k(R+) stays bounded below";
  }
  verdicts.push_back(std::move(f));
  return verdicts;
}

BergerMeasure berger_from_triplet(const RepresentingTriplet& triplet) {
  if (triplet.c != 0.0) {
    throw DomainError("berger_from_triplet: requires c = 0");
  }
  require_shift_measure(triplet.nu, "berger_from_triplet");
  BergerMeasure out;
  std::vector<DiscreteMeasure::Atom> atoms;
  double spread_mass = 0.0;
  for (const DiscreteMeasure::Atom& a : triplet.nu.atoms()) {
    const double d = a.x - 1.0;
    const double w = a.w / (d * d);
    spread_mass += w;
    atoms.push_back({a.x, w});
  }
  out.off_one = DiscreteMeasure(std::move(atoms));
  out.mass_at_one = 1.0 - spread_mass;  // gamma_0 = 1 for a scalar triplet
  out.valid = out.mass_at_one >= -1e-10;
  return out;
}

RepresentingTriplet triplet_from_berger(const BergerMeasure& mu) {
  double b = 0.0;
  std::vector<DiscreteMeasure::Atom> atoms;
  for (const DiscreteMeasure::Atom& a : mu.off_one.atoms()) {
    const double d = a.x - 1.0;
    b += a.w * d;
    atoms.push_back({a.x, a.w * d * d});
  }
  // The delta_1 part contributes nothing to b or nu.
  return RepresentingTriplet(b, 0.0, DiscreteMeasure(std::move(atoms)));
}

bool subnormality_check(const RepresentingTriplet& triplet, std::size_t window,
                        double floor_tol) {
  if (triplet.c != 0.0) return false;
  require_shift_measure(triplet.nu, "subnormality_check");
  const std::size_t horizon = std::max<std::size_t>(2 * window + 2, 2);
  const CpdSequence hat = synthesize(triplet, 1.0, horizon);
  for (std::size_t k = 0; k <= horizon; ++k) {
    if (!(hat[k] > 0.0)) return false;
  }
  if (!is_stieltjes_window(hat, window, floor_tol)) return false;
  return berger_from_triplet(triplet).mass_at_one >= -floor_tol;
}

namespace {

bool close_rel(double a, double b, double rtol) {
  return std::abs(a - b) <= rtol * std::max({std::abs(a), std::abs(b), 1.0});
}

// Longest run of consecutive equal weights starting at or after `from`.
std::pair<std::size_t, std::size_t> longest_equal_run(std::span<const double> w, double rtol) {
  std::size_t best_start = 0, best_len = w.empty() ? 0 : 1;
  std::size_t start = 0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (!close_rel(w[i], w[start], rtol)) {
      start = i;
    }
    if (i - start + 1 > best_len) {
      best_len = i - start + 1;
      best_start = start;
    }
  }
  return {best_start, best_len};
}

BergerMeasure two_atom_berger(double z, double position) {
  BergerMeasure mu;
  std::vector<DiscreteMeasure::Atom> atoms;
  if (1.0 - z > 0.0) atoms.push_back({0.0, 1.0 - z});
  if (std::abs(position - 1.0) <= DiscreteMeasure::kMergeTolerance) {
    mu.off_one = DiscreteMeasure(std::move(atoms));
    mu.mass_at_one = z;
  } else {
    atoms.push_back({position, z});
    mu.off_one = DiscreteMeasure(std::move(atoms));
    mu.mass_at_one = 0.0;
  }
  mu.valid = true;
  return mu;
}

}  // namespace

FlatnessVerdict flatness_analyze(const WeightSequence& weights, bool cpd_certified,
                                 double equality_rtol) {
  if (!cpd_certified) {
    throw DomainError("flatness_analyze: input must be certified CPD; the flatness "
                      "theorems assume it");
  }
  const std::span<const double> w = weights.weights();
  const auto equals_one = [&](double v) { return std::abs(v - 1.0) <= equality_rtol; };
  const auto run_at = [&](std::size_t start, std::size_t len) {
    if (start + len > w.size()) return false;
    for (std::size_t i = 1; i < len; ++i) {
      if (!close_rel(w[start + i], w[start], equality_rtol)) return false;
    }
    return true;
  };

  FlatnessVerdict verdict{FlatnessKind::inconclusive, std::nullopt, 0, 0, ""};

  // First two weights equal to 1: the unilateral shift.
  if (run_at(0, 2) && equals_one(w[0])) {
    verdict.kind = FlatnessKind::unilateral_shift;
    verdict.run_start = 0;
    verdict.run_length = 2;
    verdict.berger = two_atom_berger(1.0, 1.0);  // delta_1
    return verdict;
  }
  // First four equal, not 1: a scalar multiple of the unilateral shift.
  if (run_at(0, 4) && !equals_one(w[0])) {
    verdict.kind = FlatnessKind::scalar_multiple_of_unilateral_shift;
    verdict.run_start = 0;
    verdict.run_length = 4;
    verdict.berger = two_atom_berger(1.0, w[0] * w[0]);  // delta_{lambda_0^2}
    return verdict;
  }
  // The matched theorems conclude lambda_n = lambda_1 for every n >= 1; a
  // data point violating that means the tolerance matched a convergent tail
  // rather than an exact equality run (or the input was not CPD).
  const auto stabilization_note = [&](std::string& note) {
    for (std::size_t i = 2; i < w.size(); ++i) {
      if (!close_rel(w[i], w[1], equality_rtol)) {
        note += std::string(note.empty() ? "" : "; ") +
                "weight at index " + std::to_string(i) +
                " deviates from lambda_1: the exact-equality hypothesis cannot hold";
        return;
      }
    }
  };

  // Two consecutive ones from index >= 1.
  for (std::size_t k = 1; k + 2 <= w.size(); ++k) {
    if (run_at(k, 2) && equals_one(w[k])) {
      verdict.kind = FlatnessKind::flat_ones;
      verdict.run_start = k;
      verdict.run_length = 2;
      verdict.berger = two_atom_berger(w[0] * w[0], 1.0);
      if (w[0] > 1.0 + equality_rtol) {
        verdict.note = "lambda_0 > 1 contradicts the conclusion lambda_0 <= 1: the input "
                       "cannot be CPD";
      }
      stabilization_note(verdict.note);
      return verdict;
    }
  }
  // Four consecutive equal weights != 1 from index >= 1.
  for (std::size_t k = 1; k + 4 <= w.size(); ++k) {
    if (run_at(k, 4) && !equals_one(w[k])) {
      verdict.kind = FlatnessKind::flat_from_one;
      verdict.run_start = k;
      verdict.run_length = 4;
      const double lambda1 = w[1];
      const double z = (w[0] / lambda1) * (w[0] / lambda1);
      verdict.berger = two_atom_berger(z, lambda1 * lambda1);
      if (w[0] > w[1] * (1.0 + equality_rtol)) {
        verdict.note = "lambda_0 > lambda_1 contradicts the conclusion lambda_0 <= "
                       "lambda_1: the input cannot be CPD";
      }
      stabilization_note(verdict.note);
      return verdict;
    }
  }

  const auto [start, len] = longest_equal_run(w, equality_rtol);
  verdict.run_start = start;
  verdict.run_length = len;
  return verdict;
}

}  // namespace cpdshift
