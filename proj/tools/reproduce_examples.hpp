#pragma once

#include <cstddef>
#include <ostream>
#include <string>

#include "cpdshift/measure.hpp"

namespace cpdshift::tools {

struct ReproduceOptions {
  std::size_t horizon = 64;
  std::size_t window = 12;
  double floor_tol = 1e-8;
};

// Built-in example families, each regenerated from its triplet and verified
// line by line. Returns the number of failed assertions. Throws DomainError
// when the parameters leave the family's admissible range.
int reproduce_single_atom(double theta, const ReproduceOptions& opts, std::ostream& out);
int reproduce_affine(double theta, const ReproduceOptions& opts, std::ostream& out);
int reproduce_two_atom(double theta, const ReproduceOptions& opts, std::ostream& out);
int reproduce_balanced_quadratic(double c, const DiscreteMeasure& nu,
                                 const ReproduceOptions& opts, std::ostream& out);

}  // namespace cpdshift::tools
