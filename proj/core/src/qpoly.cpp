#include "cpdshift/qpoly.hpp"

#include <cmath>

#include "cpdshift/errors.hpp"

namespace cpdshift {

double q_eval_summation(std::size_t n, double x) {
  if (n < 2) return 0.0;
  // Horner on sum_{j=0}^{n-2} (n-1-j) x^j; leading coefficient is 1.
  double acc = 1.0;
  for (std::size_t j = n - 2; j-- > 0;) {
    acc = acc * x + static_cast<double>(n - 1 - j);
  }
  return acc;
}

double q_eval(std::size_t n, double x) {
  if (n < 2) return 0.0;
  if (n == 2) return 1.0;
  const double d = x - 1.0;
  if (std::abs(d) < kQnSwitchThreshold) {
    return q_eval_summation(n, x);
  }
  const double nn = static_cast<double>(n);
  if (std::abs(d) < 0.5) {
    // x^n - 1 - n(x-1) cancels to O(d^2); expm1/log1p keeps the numerator
    // accurate through the cancellation.
    return (std::expm1(nn * std::log1p(d)) - nn * d) / (d * d);
  }
  return (std::pow(x, nn) - 1.0 - nn * d) / (d * d);
}

std::vector<double> forward_diff(std::span<const double> seq, std::size_t order) {
  if (seq.size() < order + 1) {
    throw DomainError("forward_diff: sequence of length " + std::to_string(seq.size()) +
                      " too short for order " + std::to_string(order));
  }
  std::vector<double> out(seq.begin(), seq.end());
  for (std::size_t pass = 0; pass < order; ++pass) {
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
      out[i] = out[i + 1] - out[i];
    }
    out.pop_back();
  }
  return out;
}

}  // namespace cpdshift
