#include <doctest.h>

#include <cmath>
#include <random>

#include "cpdshift/positivity.hpp"
#include "cpdshift/qpoly.hpp"
#include "cpdshift/sequences.hpp"
#include "cpdshift/shift_analysis.hpp"
#include "test_helpers.hpp"

using namespace cpdshift;
using cpdshift::testing::close_rel;

namespace {

RepresentingTriplet single_atom_triplet(double theta) {
  return RepresentingTriplet(0.0, 0.0, DiscreteMeasure::dirac(theta));
}

RepresentingTriplet geometric_triplet(double theta) {
  // gamma_n = theta^n: b = theta - 1, nu = (theta-1)^2 delta_theta
  return RepresentingTriplet(theta - 1.0, 0.0,
                             DiscreteMeasure::dirac(theta, (theta - 1.0) * (theta - 1.0)));
}

RepresentingTriplet przyktwofor_triplet(double theta) {
  const double w = 0.5 * (theta - 1.0) * (theta - 1.0);
  return RepresentingTriplet(
      theta - 1.0, 0.0,
      DiscreteMeasure(std::vector<DiscreteMeasure::Atom>{{theta / 3.0, w},
                                                         {5.0 * theta / 3.0, w}}));
}

RepresentingTriplet random_positive_triplet(std::mt19937& rng) {
  for (;;) {
    const RepresentingTriplet t = cpdshift::testing::random_triplet(rng);
    const PositivityReport report = classify(t.c, t.nu);
    const double margin = 0.05 * (std::abs(report.b_frak) + 1.0);
    if (t.b > report.b_frak + margin) return t;
  }
}

const CompactnessVerdict& verdict_for(const std::vector<CompactnessVerdict>& all,
                                      OperatorPart part) {
  for (const CompactnessVerdict& v : all) {
    if (v.part == part) return v;
  }
  REQUIRE(false);
  return all.front();
}

}  // namespace

TEST_CASE("diagonal triplet of the single-atom family") {
  const double theta = 1.3;
  const DiagonalTriplet diag = diagonal_triplet(single_atom_triplet(theta), 24);
  REQUIRE(diag.entries.size() == 24);
  for (std::size_t k = 0; k < diag.entries.size(); ++k) {
    const double hat_k = 1.0 + q_eval(k, theta);
    CHECK(diag.entries[k].c_k == 0.0);
    CHECK(close_rel(diag.entries[k].nu_k.total_mass(),
                    std::pow(theta, static_cast<double>(k)) / hat_k, 1e-12));
  }
}

TEST_CASE("diagonal triplet of the affine family") {
  const double theta = 0.6;
  const RepresentingTriplet t(theta, 0.0, DiscreteMeasure());
  const DiagonalTriplet diag = diagonal_triplet(t, 16);
  for (std::size_t k = 0; k < diag.entries.size(); ++k) {
    CHECK(close_rel(diag.entries[k].b_k, theta / (1.0 + static_cast<double>(k) * theta),
                    1e-12));
    CHECK(diag.entries[k].nu_k.is_zero());
  }
}

TEST_CASE("diagonal entries re-synthesize the hat ratios") {
  std::mt19937 rng(90210);
  for (int trial = 0; trial < 20; ++trial) {
    const RepresentingTriplet t = random_positive_triplet(rng);
    const std::size_t horizon = 24;
    const CpdSequence hat = synthesize(t, 1.0, horizon);
    const DiagonalTriplet diag = diagonal_triplet(t, horizon);
    for (std::size_t k = 1; k <= 6; ++k) {
      const DiagonalEntry& e = diag.entries[k];
      const RepresentingTriplet local(e.b_k, e.c_k, e.nu_k);
      const CpdSequence ratios = synthesize(local, 1.0, horizon - k);
      for (std::size_t n = 0; n + k <= horizon; ++n) {
        CHECK(close_rel(ratios[n], hat[k + n] / hat[k], 1e-9));
      }
    }
  }
}

TEST_CASE("compactness diagnostics") {
  // contracting atom: B compact, F tail vanishes
  {
    const auto verdicts = compactness_diagnostics(single_atom_triplet(0.5), 64);
    CHECK(verdict_for(verdicts, OperatorPart::C).verdict == Compactness::compact);
    CHECK(verdict_for(verdicts, OperatorPart::B).verdict == Compactness::compact);
    const CompactnessVerdict& f = verdict_for(verdicts, OperatorPart::F_total);
    CHECK(f.verdict == Compactness::inconclusive);
    CHECK(f.tail_liminf < 1e-6);
  }
  // expanding atom: B and F(R+) both fail to be compact
  {
    const auto verdicts = compactness_diagnostics(single_atom_triplet(2.0), 64);
    CHECK(verdict_for(verdicts, OperatorPart::B).verdict == Compactness::not_compact);
    CHECK(verdict_for(verdicts, OperatorPart::F_total).verdict == Compactness::not_compact);
    CHECK(verdict_for(verdicts, OperatorPart::C).verdict == Compactness::compact);
  }
  // c_k tail vanishes whenever the hat sequence blows up
  {
    const RepresentingTriplet t(0.0, 0.5, DiscreteMeasure::dirac(2.0, 0.25));
    const auto verdicts = compactness_diagnostics(t, 64);
    const CompactnessVerdict& c = verdict_for(verdicts, OperatorPart::C);
    CHECK(c.tail_liminf < 1e-9);
    for (std::size_t i = 1; i < c.tail.size(); ++i) CHECK(c.tail[i] <= c.tail[i - 1]);
  }
}

TEST_CASE("boundary shifts: b at the closed positivity endpoint") {
  // nu = (1/2) delta_0 + (1/8) delta_{1/2} has Gamma1 = 3/4, Gamma2 = 1 and a
  // closed positivity region, so b = -3/4 still gives a positive hat
  // sequence: hat_n = (1/2) 2^{-n} for n >= 1. No compactness rule covers
  // the constant-ratio tail, so B stays inconclusive.
  {
    const RepresentingTriplet t(
        -0.75, 0.0,
        DiscreteMeasure(std::vector<DiscreteMeasure::Atom>{{0.0, 0.5}, {0.5, 0.125}}));
    const CpdSequence hat = synthesize(t, 1.0, 32);
    for (std::size_t n = 1; n <= 32; ++n) {
      CHECK(close_rel(hat[n], 0.5 * std::pow(0.5, static_cast<double>(n)), 1e-12));
    }
    const auto verdicts = compactness_diagnostics(t, 32);
    const CompactnessVerdict& b = verdict_for(verdicts, OperatorPart::B);
    CHECK(b.verdict == Compactness::inconclusive);
    CHECK(b.tail_liminf == doctest::Approx(-0.5));
    CHECK(growth_estimate(hat) < 1.0);
  }
  // nu = (1/2) delta_0: b = -1/2 gives the flat-ones shift hat = (1, 1/2,
  // 1/2, ...), subnormal with Berger measure (1/2) delta_0 + (1/2) delta_1.
  {
    const RepresentingTriplet t(-0.5, 0.0, DiscreteMeasure::dirac(0.0, 0.5));
    const CpdSequence hat = synthesize(t, 1.0, 32);
    const WeightSequence lam = weights_from_gamma(hat);
    CHECK(lam[0] == doctest::Approx(std::sqrt(0.5)));
    for (std::size_t n = 1; n < lam.size(); ++n) CHECK(lam[n] == doctest::Approx(1.0));
    CHECK(subnormality_check(t));
    const BergerMeasure mu = berger_from_triplet(t);
    CHECK(mu.valid);
    REQUIRE(mu.off_one.size() == 1);
    CHECK(mu.off_one.atoms()[0].x == 0.0);
    CHECK(mu.off_one.atoms()[0].w == doctest::Approx(0.5));
    CHECK(mu.mass_at_one == doctest::Approx(0.5));
    const FlatnessVerdict v = flatness_analyze(lam, true);
    CHECK(v.kind == FlatnessKind::flat_ones);
  }
}

TEST_CASE("Berger measure from a geometric triplet") {
  const double theta = 2.0;
  const BergerMeasure mu = berger_from_triplet(geometric_triplet(theta));
  CHECK(mu.valid);
  REQUIRE(mu.off_one.size() == 1);
  CHECK(mu.off_one.atoms()[0].x == doctest::Approx(theta));
  CHECK(mu.off_one.atoms()[0].w == doctest::Approx(1.0));
  CHECK(mu.mass_at_one == doctest::Approx(0.0));
}

TEST_CASE("Berger round trip for a two-point measure") {
  const double z = 0.32, theta = 2.0;
  BergerMeasure mu;
  mu.off_one = DiscreteMeasure(std::vector<DiscreteMeasure::Atom>{{0.0, 1.0 - z}, {theta, z}});
  mu.mass_at_one = 0.0;
  mu.valid = true;

  const RepresentingTriplet t = triplet_from_berger(mu);
  CHECK(t.b == doctest::Approx(-(1.0 - z) + z * (theta - 1.0)));
  CHECK(t.c == 0.0);

  const BergerMeasure back = berger_from_triplet(t);
  CHECK(back.valid);
  REQUIRE(back.off_one.size() == 2);
  CHECK(back.off_one.atoms()[0].x == doctest::Approx(0.0));
  CHECK(back.off_one.atoms()[0].w == doctest::Approx(1.0 - z).epsilon(1e-10));
  CHECK(back.off_one.atoms()[1].x == doctest::Approx(theta));
  CHECK(back.off_one.atoms()[1].w == doctest::Approx(z).epsilon(1e-10));
  CHECK(std::abs(back.mass_at_one) <= 1e-12);

  // the measure's moments reproduce the synthesized hat sequence
  const CpdSequence hat = synthesize(t, 1.0, 16);
  for (std::size_t n = 0; n <= 16; ++n) {
    CHECK(close_rel(hat[n], back.moment(static_cast<int>(n)), 1e-10));
  }
}

TEST_CASE("Berger rejections") {
  CHECK_THROWS_AS((void)berger_from_triplet(RepresentingTriplet(0.0, 0.5, DiscreteMeasure())),
                  DomainError);
  const BergerMeasure heavy =
      berger_from_triplet(RepresentingTriplet(0.0, 0.0, DiscreteMeasure::dirac(2.0, 3.0)));
  CHECK_FALSE(heavy.valid);
  CHECK(heavy.mass_at_one == doctest::Approx(-2.0));
}

TEST_CASE("subnormality verdicts") {
  CHECK(subnormality_check(geometric_triplet(2.0)));
  CHECK(subnormality_check(geometric_triplet(0.5)));
  // c > 0 rules subnormality out
  CHECK_FALSE(subnormality_check(RepresentingTriplet(-1.0, 1.0, DiscreteMeasure::dirac(2.0))));
  // affine hat sequences are CPD but not Stieltjes
  CHECK_FALSE(subnormality_check(RepresentingTriplet(0.7, 0.0, DiscreteMeasure())));
  // three-equal-weights counterexample stays non-subnormal across the range
  for (double theta : {1.2, 1.5, 1.61, 1.63, 2.0, 2.5, 3.5, 5.0}) {
    CAPTURE(theta);
    CHECK_FALSE(subnormality_check(przyktwofor_triplet(theta)));
  }
}

TEST_CASE("subnormal triplets are CPD") {
  for (double theta : {0.5, 1.5, 2.0, 2.5}) {
    const RepresentingTriplet t = geometric_triplet(theta);
    REQUIRE(subnormality_check(t));
    CHECK(is_cpd_window(synthesize(t, 1.0, kDefaultHorizon), kDefaultWindow).positive);
  }
}

TEST_CASE("flatness on the canonical patterns") {
  const double r2 = std::sqrt(2.0);

  // 0.8 then four sqrt(2): flat from index 1
  {
    const WeightSequence w(std::vector<double>{0.8, r2, r2, r2, r2});
    const FlatnessVerdict v = flatness_analyze(w, true);
    CHECK(v.kind == FlatnessKind::flat_from_one);
    REQUIRE(v.berger.has_value());
    REQUIRE(v.berger->off_one.size() == 2);
    CHECK(v.berger->off_one.atoms()[0].x == doctest::Approx(0.0));
    CHECK(v.berger->off_one.atoms()[0].w == doctest::Approx(0.68).epsilon(1e-12));
    CHECK(v.berger->off_one.atoms()[1].x == doctest::Approx(2.0));
    CHECK(v.berger->off_one.atoms()[1].w == doctest::Approx(0.32).epsilon(1e-12));
    CHECK(v.note.empty());
  }
  // the three-equal-weights counterexample stays inconclusive
  {
    const WeightSequence w =
        weights_from_gamma(synthesize(przyktwofor_triplet(2.0), 1.0, 10));
    const FlatnessVerdict v = flatness_analyze(w, true);
    CHECK(v.kind == FlatnessKind::inconclusive);
    CHECK(v.run_start == 0);
    CHECK(v.run_length == 3);
  }
  // all ones: the unilateral shift
  {
    const WeightSequence w(std::vector<double>(8, 1.0));
    const FlatnessVerdict v = flatness_analyze(w, true);
    CHECK(v.kind == FlatnessKind::unilateral_shift);
    REQUIRE(v.berger.has_value());
    CHECK(v.berger->mass_at_one == doctest::Approx(1.0));
  }
  // constant weights != 1: a scalar multiple of the unilateral shift
  {
    const WeightSequence w(std::vector<double>(8, 1.4));
    const FlatnessVerdict v = flatness_analyze(w, true);
    CHECK(v.kind == FlatnessKind::scalar_multiple_of_unilateral_shift);
    REQUIRE(v.berger.has_value());
    REQUIRE(v.berger->off_one.size() == 1);
    CHECK(v.berger->off_one.atoms()[0].x == doctest::Approx(1.96));
  }
  // two interior ones
  {
    const WeightSequence w(std::vector<double>{0.9, 1.0, 1.0, 1.0});
    const FlatnessVerdict v = flatness_analyze(w, true);
    CHECK(v.kind == FlatnessKind::flat_ones);
    REQUIRE(v.berger.has_value());
    CHECK(v.berger->off_one.atoms()[0].w == doctest::Approx(1.0 - 0.81));
    CHECK(v.berger->mass_at_one == doctest::Approx(0.81));
  }
  // refusal without certification
  CHECK_THROWS_AS((void)flatness_analyze(WeightSequence(std::vector<double>(8, 1.0)), false),
                  DomainError);
  // the lambda_0 <= lambda_1 conclusion is flagged when violated
  {
    const WeightSequence w(std::vector<double>{1.9, r2, r2, r2, r2});
    const FlatnessVerdict v = flatness_analyze(w, true);
    CHECK(v.kind == FlatnessKind::flat_from_one);
    CHECK_FALSE(v.note.empty());
  }
}

TEST_CASE("flatness Berger measure reproduces the hat sequence") {
  const double z = 0.32, theta = 2.0;
  BergerMeasure mu;
  mu.off_one = DiscreteMeasure(std::vector<DiscreteMeasure::Atom>{{0.0, 1.0 - z}, {theta, z}});
  mu.mass_at_one = 0.0;
  mu.valid = true;
  const RepresentingTriplet t = triplet_from_berger(mu);
  const CpdSequence hat = synthesize(t, 1.0, 12);
  const WeightSequence w = weights_from_gamma(hat);

  const FlatnessVerdict v = flatness_analyze(w, true);
  REQUIRE(v.kind == FlatnessKind::flat_from_one);
  REQUIRE(v.berger.has_value());
  for (std::size_t n = 0; n <= 12; ++n) {
    CHECK(close_rel(v.berger->moment(static_cast<int>(n)), hat[n], 1e-9));
  }
}
