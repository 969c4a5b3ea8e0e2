#include "cpdshift/sequences.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "cpdshift/errors.hpp"
#include "cpdshift/qpoly.hpp"

namespace cpdshift {

RepresentingTriplet::RepresentingTriplet(double b_, double c_, DiscreteMeasure nu_)
    : b(b_), c(c_), nu(std::move(nu_)) {
  if (!(c >= 0.0)) {
    throw DomainError("RepresentingTriplet: c must be nonnegative, got " + std::to_string(c));
  }
  if (!std::isfinite(b) || !std::isfinite(c)) {
    throw DomainError("RepresentingTriplet: non-finite parameter");
  }
}

CpdSequence::CpdSequence(std::vector<double> values, Source source)
    : values_(std::move(values)), source_(source) {
  if (values_.empty()) {
    throw DomainError("CpdSequence: empty value list");
  }
}

WeightSequence::WeightSequence(std::vector<double> weights) : weights_(std::move(weights)) {
  for (std::size_t n = 0; n < weights_.size(); ++n) {
    if (!(weights_[n] > 0.0) || !std::isfinite(weights_[n])) {
      throw DomainError("WeightSequence: weight at index " + std::to_string(n) +
                        " is not positive");
    }
  }
}

CpdSequence synthesize(const RepresentingTriplet& triplet, double gamma0, std::size_t horizon) {
  if (horizon < 2) {
    throw DomainError("synthesize: horizon must be at least 2");
  }
  std::vector<double> values(horizon + 1);
  for (std::size_t n = 0; n <= horizon; ++n) {
    const double nn = static_cast<double>(n);
    values[n] = gamma0 + triplet.b * nn + triplet.c * nn * nn + triplet.nu.q_integral(n);
  }
  return CpdSequence(std::move(values), CpdSequence::Source::synthesized);
}

WeightSequence weights_from_gamma(const CpdSequence& gamma) {
  std::vector<double> weights(gamma.horizon());
  for (std::size_t n = 0; n <= gamma.horizon(); ++n) {
    if (!(gamma[n] > 0.0)) {
      throw DomainError("weights_from_gamma: gamma_" + std::to_string(n) + " = " +
                        std::to_string(gamma[n]) + " is not positive");
    }
  }
  for (std::size_t n = 0; n < gamma.horizon(); ++n) {
    weights[n] = std::sqrt(gamma[n + 1] / gamma[n]);
  }
  return WeightSequence(std::move(weights));
}

CpdSequence gamma_hat(const WeightSequence& weights) {
  std::vector<double> hat(weights.size() + 1);
  hat[0] = 1.0;
  for (std::size_t n = 0; n < weights.size(); ++n) {
    hat[n + 1] = hat[n] * weights[n] * weights[n];
  }
  return CpdSequence(std::move(hat), CpdSequence::Source::supplied);
}

ShiftedTriplet shifted_triplet(const RepresentingTriplet& triplet, const CpdSequence& gamma,
                               std::size_t k) {
  if (k == 0) {
    throw DomainError("shifted_triplet: k must be positive");
  }
  if (k > gamma.horizon()) {
    throw DomainError("shifted_triplet: k exceeds the horizon");
  }
  if (k % 2 == 1 && !triplet.nu.supported_in_nonnegatives()) {
    throw DomainError("shifted_triplet: odd shift of a measure with negative support "
                      "is not CPD");
  }
  double moment_sum = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    moment_sum += triplet.nu.moment(static_cast<int>(j));
  }
  const double b_k = triplet.b + 2.0 * static_cast<double>(k) * triplet.c + moment_sum;
  return ShiftedTriplet{
      RepresentingTriplet(b_k, triplet.c, triplet.nu.power_scaled(static_cast<int>(k))),
      gamma[k]};
}

namespace {

PsdCheck hankel_psd(std::span<const double> entries, std::size_t window, double floor_tol,
                    double extra_abs_tol = 0.0) {
  const auto dim = static_cast<Eigen::Index>(window + 1);
  Eigen::MatrixXd h(dim, dim);
  double scale = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double v = entries[static_cast<std::size_t>(i + j)];
      h(i, j) = v;
      scale = std::max(scale, std::abs(v));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues()(0);
  const double threshold = floor_tol * std::max(scale, 1e-300) + extra_abs_tol;
  return PsdCheck{min_eig >= -threshold, min_eig, scale};
}

}  // namespace

PsdCheck is_pd_window(const CpdSequence& gamma, std::size_t window, double floor_tol) {
  if (2 * window > gamma.horizon()) {
    throw DomainError("is_pd_window: window too large for the horizon");
  }
  return hankel_psd(gamma.values(), window, floor_tol);
}

PsdCheck is_cpd_window(const CpdSequence& gamma, std::size_t window, double floor_tol) {
  if (2 * window + 2 > gamma.horizon()) {
    throw DomainError("is_cpd_window: window too large for the horizon");
  }
  const std::vector<double> dd = forward_diff(gamma.values(), 2);
  // Differencing carries an absolute error of a few ulps of the gamma scale;
  // without this term a sequence whose second difference is exactly zero
  // (affine gamma) would be measured against a noise-level relative floor.
  double gamma_scale = 0.0;
  for (std::size_t n = 0; n <= 2 * window + 2; ++n) {
    gamma_scale = std::max(gamma_scale, std::abs(gamma[n]));
  }
  const double diff_noise = 4.0 * std::numeric_limits<double>::epsilon() *
                            static_cast<double>(window + 1) * gamma_scale;
  return hankel_psd(dd, window, floor_tol, diff_noise);
}

bool is_stieltjes_window(const CpdSequence& gamma, std::size_t window, double floor_tol) {
  if (2 * window + 1 > gamma.horizon()) {
    throw DomainError("is_stieltjes_window: window too large for the horizon");
  }
  // Every sub-window is tested: a leading submatrix of a PSD matrix is PSD,
  // and the smaller scales make the relative floor much sharper.
  for (std::size_t w = 0; w <= window; ++w) {
    if (!hankel_psd(gamma.values(), w, floor_tol).positive) return false;
    if (!hankel_psd(gamma.values().subspan(1), w, floor_tol).positive) return false;
  }
  return true;
}

double growth_estimate(const CpdSequence& gamma) {
  if (gamma.horizon() < 8) {
    throw DomainError("growth_estimate: horizon must be at least 8");
  }
  double best = 0.0;
  for (std::size_t n = (gamma.horizon() + 1) / 2; n <= gamma.horizon(); ++n) {
    const double a = std::abs(gamma[n]);
    if (a == 0.0) continue;
    best = std::max(best, std::pow(a, 1.0 / static_cast<double>(n)));
  }
  return best;
}

bool two_point_support_test(const CpdSequence& gamma, std::size_t k, double rel_tol) {
  if (k + 2 > gamma.horizon()) {
    throw DomainError("two_point_support_test: k + 2 exceeds the horizon");
  }
  const double lhs = gamma[k + 1] * gamma[k + 1];
  const double rhs = gamma[k] * gamma[k + 2];
  return std::abs(lhs - rhs) <= rel_tol * std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

}  // namespace cpdshift
