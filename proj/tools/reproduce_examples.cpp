#include "reproduce_examples.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "cpdshift/backext.hpp"
#include "cpdshift/qpoly.hpp"
#include "cpdshift/sequences.hpp"
#include "cpdshift/shift_analysis.hpp"

namespace cpdshift::tools {

namespace {

class Checker {
public:
  Checker(const std::string& fixture, std::ostream& out) : fixture_(fixture), out_(out) {}

  void expect(const std::string& what, bool ok, const std::string& detail = "") {
    out_ << (ok ? "[PASS] " : "[FAIL] ") << fixture_ << ": " << what;
    if (!detail.empty()) out_ << " (" << detail << ")";
    out_ << "\n";
    if (!ok) ++failures_;
  }

  void expect_close(const std::string& what, double got, double want, double rel_tol) {
    const bool ok =
        std::abs(got - want) <= rel_tol * std::max({std::abs(got), std::abs(want), 1.0});
    std::ostringstream detail;
    detail << std::setprecision(15) << "got " << got << ", want " << want;
    expect(what, ok, detail.str());
  }

  int failures() const { return failures_; }

private:
  std::string fixture_;
  std::ostream& out_;
  int failures_ = 0;
};

const CompactnessVerdict& verdict_for(const std::vector<CompactnessVerdict>& all,
                                      OperatorPart part) {
  for (const CompactnessVerdict& v : all) {
    if (v.part == part) return v;
  }
  throw DomainError("missing compactness verdict");
}

}  // namespace

int reproduce_single_atom(double theta, const ReproduceOptions& opts, std::ostream& out) {
  if (!(theta > 0.0) || std::abs(theta - 1.0) <= 1e-9) {
    throw DomainError("single-atom family needs theta > 0 with theta != 1");
  }
  Checker check("oliun", out);
  const RepresentingTriplet triplet(0.0, 0.0, DiscreteMeasure::dirac(theta));
  const CpdSequence gamma = synthesize(triplet, 1.0, opts.horizon);

  bool gamma_ok = true;
  for (std::size_t n = 0; n <= opts.horizon; ++n) {
    const double want = 1.0 + q_eval(n, theta);
    if (std::abs(gamma[n] - want) > 1e-12 * std::max(1.0, std::abs(want))) gamma_ok = false;
  }
  check.expect("gamma_n = 1 + Q_n(theta) over the horizon", gamma_ok);
  check.expect("window CPD check passes",
               is_cpd_window(gamma, opts.window, opts.floor_tol).positive);

  const DiagonalTriplet diag = diagonal_triplet(triplet, std::min<std::size_t>(32, opts.horizon));
  bool mass_ok = true;
  for (std::size_t k = 0; k < diag.entries.size(); ++k) {
    const double want = std::pow(theta, static_cast<double>(k)) / (1.0 + q_eval(k, theta));
    if (std::abs(diag.entries[k].nu_k.total_mass() - want) >
        1e-9 * std::max(1.0, std::abs(want))) {
      mass_ok = false;
    }
  }
  check.expect("diagonal measure totals theta^k / (1 + Q_k(theta))", mass_ok);

  const auto verdicts = compactness_diagnostics(triplet, opts.horizon);
  check.expect("C diagonal is compact",
               verdict_for(verdicts, OperatorPart::C).verdict == Compactness::compact);
  if (theta < 1.0) {
    check.expect("B diagonal is compact",
                 verdict_for(verdicts, OperatorPart::B).verdict == Compactness::compact);
    const double tail = verdict_for(verdicts, OperatorPart::F_total).tail_liminf;
    std::ostringstream detail;
    detail << std::setprecision(6) << "tail liminf " << tail;
    check.expect("F total-mass diagonal tail vanishes", tail < 1e-6, detail.str());
  } else {
    check.expect("B diagonal is not compact",
                 verdict_for(verdicts, OperatorPart::B).verdict == Compactness::not_compact);
    check.expect("F total-mass diagonal is not compact",
                 verdict_for(verdicts, OperatorPart::F_total).verdict ==
                     Compactness::not_compact);
  }
  return check.failures();
}

int reproduce_affine(double theta, const ReproduceOptions& opts, std::ostream& out) {
  if (!(theta > 0.0)) {
    throw DomainError("affine family needs theta > 0");
  }
  const double inv = 1.0 / theta;
  if (std::abs(inv - std::round(inv)) <= 1e-9) {
    throw DomainError("affine family: 1/theta must not be an integer (degenerate sigma)");
  }
  Checker check("muritru", out);
  const std::size_t k = static_cast<std::size_t>(std::floor(inv)) + 1;
  {
    std::ostringstream line;
    line << "theta in (1/" << k << ", 1/" << (k - 1) << ")";
    check.expect(line.str(), k >= 1);
  }

  const RepresentingTriplet triplet(theta, 0.0, DiscreteMeasure());
  const CpdSequence gamma = synthesize(triplet, 1.0, opts.horizon);
  bool gamma_ok = true, lambda_ok = true;
  const WeightSequence lam = weights_from_gamma(gamma);
  for (std::size_t n = 0; n <= opts.horizon; ++n) {
    const double nn = static_cast<double>(n);
    if (std::abs(gamma[n] - (1.0 + nn * theta)) > 1e-12 * (1.0 + nn * theta)) gamma_ok = false;
    if (n < opts.horizon) {
      const double want = std::sqrt((1.0 + (nn + 1.0) * theta) / (1.0 + nn * theta));
      if (std::abs(lam[n] - want) > 1e-12) lambda_ok = false;
    }
  }
  check.expect("gamma_n = 1 + n theta", gamma_ok);
  check.expect("lambda_n = sqrt((1+(n+1)theta)/(1+n theta))", lambda_ok);

  const SigmaTrace trace = sigma_trace(triplet, 8);
  bool sigma_ok = true;
  for (std::size_t n = 1; n <= 8; ++n) {
    const double nn = static_cast<double>(n);
    const double want = (1.0 - nn * theta) / (1.0 - (nn - 1.0) * theta);
    if (std::abs(trace.sigma[n - 1] - want) >
        1e-9 * std::max(1.0, std::abs(want))) {
      sigma_ok = false;
    }
  }
  check.expect("sigma_n = (1 - n theta) / (1 - (n-1) theta)", sigma_ok);
  check.expect("window CPD check passes",
               is_cpd_window(gamma, opts.window, opts.floor_tol).positive);
  check.expect("not subnormal", !subnormality_check(triplet, opts.window, opts.floor_tol));

  if (k == 1) {
    bool all_t = true;
    for (double t : {1e-3, 1.0, 1e3}) {
      if (!extend_shift_1(triplet, t).feasible) all_t = false;
    }
    check.expect("one-step extension admits every t", all_t);
  } else {
    const ExtensionResult at_k = extend_shift_n(triplet, k);
    check.expect("k-step extension feasible with unbounded final weight",
                 at_k.feasible && std::isinf(at_k.steps.back().t_upper));
    bool consistency = true;
    for (std::size_t j = 0; j + 1 < k; ++j) {
      const double prod = at_k.steps[j].t * at_k.steps[j].t * trace.sigma[j];
      if (std::abs(prod - 1.0) > 1e-9) consistency = false;
    }
    check.expect("forced weights satisfy t_j^2 sigma_j = 1", consistency);
  }
  const ExtensionResult beyond = extend_shift_n(triplet, k + 1);
  {
    std::ostringstream line;
    line << "no " << (k + 1) << "-step extension";
    check.expect(line.str(), !beyond.feasible);
  }
  check.expect("infinite-step verdict: not extendable",
               infinite_step_check(triplet) == InfiniteStepVerdict::not_extendable);
  return check.failures();
}

int reproduce_two_atom(double theta, const ReproduceOptions& opts, std::ostream& out) {
  if (!(theta > 1.0) || std::abs(theta - 3.0) <= 1e-9) {
    throw DomainError("two-atom family needs theta > 1 with theta != 3");
  }
  Checker check("przyktwofor", out);
  const double w = 0.5 * (theta - 1.0) * (theta - 1.0);
  const RepresentingTriplet triplet(
      theta - 1.0, 0.0,
      DiscreteMeasure(std::vector<DiscreteMeasure::Atom>{{theta / 3.0, w},
                                                         {5.0 * theta / 3.0, w}}));
  const CpdSequence gamma = synthesize(triplet, 1.0, std::max<std::size_t>(opts.horizon, 8));

  for (std::size_t n = 0; n <= 3; ++n) {
    std::ostringstream what;
    what << "gamma_" << n << " = theta^" << n;
    check.expect_close(what.str(), gamma[n], std::pow(theta, static_cast<double>(n)), 1e-10);
  }
  check.expect_close("gamma_4 = theta^2 (13 theta^2 - 8 theta + 4) / 9", gamma[4],
                     theta * theta * (13.0 * theta * theta - 8.0 * theta + 4.0) / 9.0, 1e-10);

  const WeightSequence lam = weights_from_gamma(gamma);
  const double rt = std::sqrt(theta);
  check.expect_close("lambda_0 = sqrt(theta)", lam[0], rt, 1e-10);
  check.expect_close("lambda_1 = sqrt(theta)", lam[1], rt, 1e-10);
  check.expect_close("lambda_2 = sqrt(theta)", lam[2], rt, 1e-10);
  const double lam3 =
      std::sqrt(13.0 * theta * theta - 8.0 * theta + 4.0) / (3.0 * std::sqrt(theta));
  check.expect_close("lambda_3 = sqrt(13 theta^2 - 8 theta + 4) / (3 sqrt(theta))", lam[3],
                     lam3, 1e-10);
  check.expect("lambda_3 breaks the equal run", std::abs(lam[3] - rt) > 1e-9);

  const SigmaTrace trace = sigma_trace(triplet, 4);
  check.expect_close("sigma_1 = (4 theta^2 - 8 theta + 9) / (5 theta)", trace.sigma[0],
                     (4.0 * theta * theta - 8.0 * theta + 9.0) / (5.0 * theta), 1e-10);

  // The weights converge geometrically, so at a long horizon the tail falls
  // within any fixed equality tolerance; the example's claim concerns the
  // leading weights, scanned here over the first ten.
  std::vector<double> head;
  for (std::size_t n = 0; n < std::min<std::size_t>(10, lam.size()); ++n) {
    head.push_back(lam[n]);
  }
  const FlatnessVerdict flat = flatness_analyze(WeightSequence(head), true);
  check.expect("flatness scan of the leading weights is inconclusive",
               flat.kind == FlatnessKind::inconclusive && flat.run_length == 3 &&
                   flat.run_start == 0);
  check.expect("window CPD check passes",
               is_cpd_window(gamma, opts.window, opts.floor_tol).positive);
  check.expect("not subnormal", !subnormality_check(triplet, opts.window, opts.floor_tol));
  if (theta >= 2.25) {
    check.expect("infinite-step verdict: extendable",
                 infinite_step_check(triplet) == InfiniteStepVerdict::extendable);
  }
  return check.failures();
}

int reproduce_balanced_quadratic(double c, const DiscreteMeasure& nu,
                                 const ReproduceOptions& opts, std::ostream& out) {
  if (!(c > 0.0)) {
    throw DomainError("balanced quadratic family needs c > 0");
  }
  if (nu.has_atom_at_zero()) {
    throw DomainError("balanced quadratic family needs nu without an atom at 0 "
                      "(inverse moments must stay finite)");
  }
  Checker check("gusv", out);
  const RepresentingTriplet triplet(-c, c, nu);
  const CpdSequence gamma = synthesize(triplet, 1.0, opts.horizon);
  const WeightSequence lam = weights_from_gamma(gamma);

  check.expect_close("lambda_0 = 1", lam[0], 1.0, 1e-12);
  check.expect("lambda_1 != 1", std::abs(lam[1] - 1.0) > 1e-9);
  check.expect("window CPD check passes",
               is_cpd_window(gamma, opts.window, opts.floor_tol).positive);
  check.expect("not subnormal", !subnormality_check(triplet, opts.window, opts.floor_tol));
  const FlatnessVerdict flat = flatness_analyze(lam, true);
  check.expect("not the unilateral shift", flat.kind != FlatnessKind::unilateral_shift);
  check.expect("infinite-step verdict: extendable (b <= c)",
               infinite_step_check(triplet) == InfiniteStepVerdict::extendable);
  return check.failures();
}

}  // namespace cpdshift::tools
