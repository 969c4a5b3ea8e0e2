#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cpdshift {

// Q_n(x) = sum_{j=0}^{n-2} (n-j-1) x^j for n >= 2, and 0 for n = 0, 1.
// Equivalently (x^n - 1 - n(x-1)) / (x-1)^2 away from x = 1.

// Below this distance from x = 1 the closed form loses accuracy to
// cancellation and q_eval falls back to the summation form.
inline constexpr double kQnSwitchThreshold = 1e-4;

double q_eval(std::size_t n, double x);

// Direct Horner evaluation of the defining sum. O(n), no cancellation for
// x >= 0; used internally near x = 1 and as an independent route in tests.
double q_eval_summation(std::size_t n, double x);

// k-th forward difference; the result is shorter by `order` entries.
// Throws DomainError when the input has fewer than order + 1 entries.
std::vector<double> forward_diff(std::span<const double> seq, std::size_t order);

}  // namespace cpdshift
