#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "cpdshift/errors.hpp"

namespace cpdshift {

// Real value extended with +infinity, the result of an inverse-power moment
// against a measure charging the pole (convention 1/0 = infinity).
struct ExtendedReal {
  double v = 0.0;

  ExtendedReal() = default;
  ExtendedReal(double value) : v(value) {}

  static ExtendedReal infinity() {
    return ExtendedReal(std::numeric_limits<double>::infinity());
  }
  bool is_finite() const { return std::isfinite(v); }
  operator double() const { return v; }
};

// Finite atomic Borel measure on the real line. Atoms are kept sorted by
// position; positions closer than kMergeTolerance are merged (weights summed)
// and zero-weight atoms are dropped. An atom at 1 with positive weight is
// rejected: the representation theorems consuming these measures assume
// nu({1}) = 0.
class DiscreteMeasure {
public:
  struct Atom {
    double x;  // position
    double w;  // weight, >= 0
  };

  static constexpr double kMergeTolerance = 1e-12;

  // The zero measure.
  DiscreteMeasure() = default;

  explicit DiscreteMeasure(std::vector<Atom> atoms);

  static DiscreteMeasure dirac(double x, double w = 1.0);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  bool is_zero() const noexcept { return atoms_.empty(); }
  std::size_t size() const noexcept { return atoms_.size(); }

  double total_mass() const noexcept;

  // sup supp(nu); -infinity for the zero measure.
  double max_position() const noexcept;
  // inf supp(nu); +infinity for the zero measure.
  double min_position() const noexcept;

  bool has_atom_at_zero() const noexcept;
  bool supported_in_nonnegatives() const noexcept;

  // sum w_i x_i^k with 0^0 = 1; +infinity when k < 0 and an atom with
  // positive weight sits at 0.
  ExtendedReal moment(int k) const noexcept;

  // sum w_i Q_n(x_i)
  double q_integral(std::size_t n) const;

  // Measure with density x^k against this one: positions kept, weights
  // scaled by x_i^k. Throws DomainError for k < 0 with an atom at 0.
  DiscreteMeasure power_scaled(int k) const;

  DiscreteMeasure scaled(double factor) const;

  friend DiscreteMeasure operator+(const DiscreteMeasure& lhs, const DiscreteMeasure& rhs);

private:
  std::vector<Atom> atoms_;  // sorted by position, pairwise distinct
};

struct GammaCoefficients {
  double theta_sup;     // sup supp(nu); -infinity for the zero measure
  ExtendedReal gamma1;  // integral of 1/(1-x)
  ExtendedReal gamma2;  // integral of 1/(1-x)^2
};

GammaCoefficients gamma_coeffs(const DiscreteMeasure& nu);

}  // namespace cpdshift
