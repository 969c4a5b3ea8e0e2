#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cpdshift/measure.hpp"

namespace cpdshift {

inline constexpr std::size_t kDefaultHorizon = 64;
inline constexpr std::size_t kDefaultWindow = 12;
inline constexpr double kDefaultEigFloor = 1e-8;

// (b, c, nu) with gamma_n = gamma_0 + b n + c n^2 + integral of Q_n d(nu).
// For a shift this is the scalar representing triplet of W_lambda and
// gamma = lambda-hat with gamma_0 = 1.
struct RepresentingTriplet {
  double b = 0.0;
  double c = 0.0;  // >= 0
  DiscreteMeasure nu;

  RepresentingTriplet() = default;
  RepresentingTriplet(double b_, double c_, DiscreteMeasure nu_);
};

// Finite-horizon real sequence gamma_0..gamma_N with provenance.
class CpdSequence {
public:
  enum class Source { synthesized, supplied };

  CpdSequence(std::vector<double> values, Source source);

  static CpdSequence supplied(std::vector<double> values) {
    return CpdSequence(std::move(values), Source::supplied);
  }

  double operator[](std::size_t n) const { return values_[n]; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t horizon() const noexcept { return values_.size() - 1; }
  Source source() const noexcept { return source_; }

private:
  std::vector<double> values_;
  Source source_;
};

// Positive weights lambda_0..lambda_{N-1} of a unilateral weighted shift.
class WeightSequence {
public:
  explicit WeightSequence(std::vector<double> weights);

  double operator[](std::size_t n) const { return weights_[n]; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }

private:
  std::vector<double> weights_;
};

// gamma_n = gamma0 + b n + c n^2 + integral of Q_n, n = 0..horizon.
CpdSequence synthesize(const RepresentingTriplet& triplet, double gamma0, std::size_t horizon);

// lambda_n = sqrt(gamma_{n+1} / gamma_n). Throws DomainError naming the
// first nonpositive index.
WeightSequence weights_from_gamma(const CpdSequence& gamma);

// hat sequence: 1, lambda_0^2, lambda_0^2 lambda_1^2, ...
CpdSequence gamma_hat(const WeightSequence& weights);

struct ShiftedTriplet {
  RepresentingTriplet triplet;
  double gamma0;  // = gamma_k
};

// Representing triplet of the k-shifted sequence n -> gamma_{k+n}:
// b_k = b + 2kc + sum_{j<k} moment(nu, j), c_k = c, nu_k = x^k nu.
// Odd k requires supp(nu) in [0, inf); otherwise the shifted sequence is
// not CPD and DomainError is thrown.
ShiftedTriplet shifted_triplet(const RepresentingTriplet& triplet, const CpdSequence& gamma,
                               std::size_t k);

struct PsdCheck {
  bool positive;
  double min_eigenvalue;
  double scale;  // max |entry| of the tested matrix; the floor is relative to it
};

// Hankel matrix gamma_{i+j}, 0 <= i,j <= window, PSD up to -floor * scale.
PsdCheck is_pd_window(const CpdSequence& gamma, std::size_t window,
                      double floor_tol = kDefaultEigFloor);

// CPD test at a window. On vectors with zero coordinate sum, spanned by
// e_i - e_{i+1}, the Hankel form of gamma reduces exactly to the Hankel
// matrix of the second difference; that reduced matrix is tested for PSD.
PsdCheck is_cpd_window(const CpdSequence& gamma, std::size_t window,
                       double floor_tol = kDefaultEigFloor);

// Stieltjes moment property at a window: gamma and the once-shifted
// sequence are both PD.
bool is_stieltjes_window(const CpdSequence& gamma, std::size_t window,
                         double floor_tol = kDefaultEigFloor);

// max |gamma_n|^{1/n} over the upper half of the horizon; bounds supp(nu).
double growth_estimate(const CpdSequence& gamma);

// gamma_{k+1}^2 == gamma_k gamma_{k+2} within a relative tolerance. For a
// non-degenerate Stieltjes window this certifies a representing measure
// supported on a single point (k = 0) or on {0, zeta} (k >= 1).
bool two_point_support_test(const CpdSequence& gamma, std::size_t k, double rel_tol = 1e-9);

}  // namespace cpdshift
