#include "cpdshift/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cpdshift/qpoly.hpp"

namespace cpdshift {

namespace {

double int_pow(double x, int k) {
  if (k == 0) return 1.0;  // 0^0 = 1 by convention
  return std::pow(x, static_cast<double>(k));
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) {
  for (const Atom& a : atoms) {
    if (!(a.w >= 0.0)) {
      throw DomainError("DiscreteMeasure: negative weight " + std::to_string(a.w) +
                        " at position " + std::to_string(a.x));
    }
    if (!std::isfinite(a.x) || !std::isfinite(a.w)) {
      throw DomainError("DiscreteMeasure: non-finite atom");
    }
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.x < b.x; });
  for (const Atom& a : atoms) {
    if (a.w == 0.0) continue;
    if (!atoms_.empty() && a.x - atoms_.back().x <= kMergeTolerance) {
      atoms_.back().w += a.w;
    } else {
      atoms_.push_back(a);
    }
  }
  for (const Atom& a : atoms_) {
    if (std::abs(a.x - 1.0) <= kMergeTolerance) {
      throw DomainError("DiscreteMeasure: atom at 1 with positive weight (nu({1}) must be 0)");
    }
  }
}

DiscreteMeasure DiscreteMeasure::dirac(double x, double w) {
  return DiscreteMeasure(std::vector<Atom>{{x, w}});
}

double DiscreteMeasure::total_mass() const noexcept {
  double mass = 0.0;
  for (const Atom& a : atoms_) mass += a.w;
  return mass;
}

double DiscreteMeasure::max_position() const noexcept {
  if (atoms_.empty()) return -std::numeric_limits<double>::infinity();
  return atoms_.back().x;
}

double DiscreteMeasure::min_position() const noexcept {
  if (atoms_.empty()) return std::numeric_limits<double>::infinity();
  return atoms_.front().x;
}

bool DiscreteMeasure::has_atom_at_zero() const noexcept {
  for (const Atom& a : atoms_) {
    if (std::abs(a.x) <= kMergeTolerance) return true;
  }
  return false;
}

bool DiscreteMeasure::supported_in_nonnegatives() const noexcept {
  return atoms_.empty() || atoms_.front().x >= -kMergeTolerance;
}

ExtendedReal DiscreteMeasure::moment(int k) const noexcept {
  if (k < 0 && has_atom_at_zero()) return ExtendedReal::infinity();
  double sum = 0.0;
  for (const Atom& a : atoms_) sum += a.w * int_pow(a.x, k);
  return sum;
}

double DiscreteMeasure::q_integral(std::size_t n) const {
  double sum = 0.0;
  for (const Atom& a : atoms_) sum += a.w * q_eval(n, a.x);
  return sum;
}

DiscreteMeasure DiscreteMeasure::power_scaled(int k) const {
  if (k < 0 && has_atom_at_zero()) {
    throw DomainError("power_scaled: negative power against an atom at 0");
  }
  std::vector<Atom> scaled;
  scaled.reserve(atoms_.size());
  for (const Atom& a : atoms_) {
    const double w = a.w * int_pow(a.x, k);
    if (w < 0.0) {
      throw DomainError("power_scaled: odd power of a negative-support atom yields a "
                        "signed measure");
    }
    scaled.push_back({a.x, w});
  }
  return DiscreteMeasure(std::move(scaled));
}

DiscreteMeasure DiscreteMeasure::scaled(double factor) const {
  if (!(factor >= 0.0)) {
    throw DomainError("scaled: negative factor");
  }
  std::vector<Atom> scaled;
  scaled.reserve(atoms_.size());
  for (const Atom& a : atoms_) scaled.push_back({a.x, a.w * factor});
  return DiscreteMeasure(std::move(scaled));
}

DiscreteMeasure operator+(const DiscreteMeasure& lhs, const DiscreteMeasure& rhs) {
  std::vector<DiscreteMeasure::Atom> atoms = lhs.atoms_;
  atoms.insert(atoms.end(), rhs.atoms_.begin(), rhs.atoms_.end());
  return DiscreteMeasure(std::move(atoms));
}

GammaCoefficients gamma_coeffs(const DiscreteMeasure& nu) {
  GammaCoefficients out{nu.max_position(), 0.0, 0.0};
  double g1 = 0.0;
  double g2 = 0.0;
  for (const DiscreteMeasure::Atom& a : nu.atoms()) {
    const double d = 1.0 - a.x;  // never 0: no atom at 1
    g1 += a.w / d;
    g2 += a.w / (d * d);
  }
  out.gamma1 = g1;
  out.gamma2 = g2;
  return out;
}

}  // namespace cpdshift
