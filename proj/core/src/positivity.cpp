#include "cpdshift/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cpdshift/qpoly.hpp"

namespace cpdshift {

const char* to_string(PositivityCase c) {
  switch (c) {
    case PositivityCase::i_a: return "i-a";
    case PositivityCase::i_b: return "i-b";
    case PositivityCase::i_c: return "i-c";
    case PositivityCase::ii_a: return "ii-a";
    case PositivityCase::ii_b: return "ii-b";
    case PositivityCase::ii_c: return "ii-c";
    case PositivityCase::ii_d: return "ii-d";
    case PositivityCase::degenerate_zero: return "degenerate-zero";
  }
  return "?";
}

namespace {

void require_nonnegative_support(const DiscreteMeasure& nu, const char* who) {
  if (!nu.supported_in_nonnegatives()) {
    throw DomainError(std::string(who) + ": measure has negative-support atoms");
  }
}

bool is_delta_zero(const DiscreteMeasure& nu, double mass_atol) {
  return nu.size() == 1 && std::abs(nu.atoms()[0].x) <= DiscreteMeasure::kMergeTolerance &&
         std::abs(nu.atoms()[0].w - 1.0) <= mass_atol;
}

}  // namespace

double zeta(double c, const DiscreteMeasure& nu, std::size_t n) {
  if (n == 0) {
    throw DomainError("zeta: n must be positive");
  }
  require_nonnegative_support(nu, "zeta");
  const double nn = static_cast<double>(n);
  return 1.0 / nn + c * nn + nu.q_integral(n) / nn;
}

PositivityReport classify(double c, const DiscreteMeasure& nu, const ClassifyOptions& options) {
  if (!(c >= 0.0)) {
    throw DomainError("classify: c must be nonnegative");
  }
  require_nonnegative_support(nu, "classify");

  const GammaCoefficients coeffs = gamma_coeffs(nu);
  PositivityReport report;
  report.gamma1 = coeffs.gamma1;
  report.gamma2 = coeffs.gamma2;
  report.theta_sup = coeffs.theta_sup;
  report.argmin_n = 0;

  report.zeta_trace.reserve(options.zeta_trace_length);
  for (std::size_t n = 1; n <= options.zeta_trace_length; ++n) {
    report.zeta_trace.push_back(zeta(c, nu, n));
  }

  // Case dispatch. Gamma1 = inf (case i-c) cannot occur for a finite atomic
  // measure without an atom at 1; the label is kept for interface fidelity.
  if (nu.is_zero() && c == 0.0) {
    report.case_label = PositivityCase::degenerate_zero;
    report.b_frak = 0.0;
    report.omega_closed_at_inf = true;
    return report;
  }

  if (coeffs.theta_sup > 1.0) {
    report.case_label = PositivityCase::i_a;
  } else if (c > 0.0) {
    report.case_label = PositivityCase::i_b;
  } else if (coeffs.gamma2 > 1.0 + options.gamma2_boundary_rtol) {
    report.case_label = PositivityCase::ii_a;
  } else if (std::abs(coeffs.gamma2 - 1.0) <= options.gamma2_boundary_rtol) {
    report.case_label = is_delta_zero(nu, options.delta0_mass_atol) ? PositivityCase::ii_b
                                                                    : PositivityCase::ii_c;
  } else {
    report.case_label = PositivityCase::ii_d;
  }

  switch (report.case_label) {
    case PositivityCase::ii_b:
      // zeta_n = 1 for every n.
      report.b_frak = -1.0;
      report.omega_closed_at_inf = false;
      report.argmin_n = 1;
      break;
    case PositivityCase::ii_c:
    case PositivityCase::ii_d:
      // zeta_n decreases strictly to Gamma1; the infimum is not attained.
      report.b_frak = -static_cast<double>(coeffs.gamma1);
      report.omega_closed_at_inf = true;
      break;
    default: {
      // i-a, i-b, ii-a: the minimum is attained; scan with a plateau rule.
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_n = 0;
      std::size_t since_improvement = 0;
      for (std::size_t n = 1; n <= options.scan_cap; ++n) {
        const double z = zeta(c, nu, n);
        if (z < best) {
          best = z;
          best_n = n;
          since_improvement = 0;
        } else if (++since_improvement >= options.plateau_window) {
          break;
        }
      }
      report.b_frak = -best;
      report.omega_closed_at_inf = false;
      report.argmin_n = best_n;
      break;
    }
  }
  return report;
}

double b_frak_oracle(double c, const DiscreteMeasure& nu, std::size_t n_max,
                     double t_tolerance) {
  if (!(c >= 0.0)) {
    throw DomainError("b_frak_oracle: c must be nonnegative");
  }
  require_nonnegative_support(nu, "b_frak_oracle");
  if (n_max == 0 || !(t_tolerance > 0.0)) {
    throw DomainError("b_frak_oracle: n_max and t_tolerance must be positive");
  }

  std::vector<double> q_int(n_max + 1, 0.0);
  for (std::size_t n = 1; n <= n_max; ++n) q_int[n] = nu.q_integral(n);

  const auto all_positive = [&](double t) {
    for (std::size_t n = 1; n <= n_max; ++n) {
      const double nn = static_cast<double>(n);
      if (!(1.0 + t * nn + c * nn * nn + q_int[n] > 0.0)) return false;
    }
    return true;
  };

  double lo = -(2.0 + c);  // gamma_1(lo) = -1
  double hi = 0.0;         // in Omega: every gamma_n(0) >= 1
  while (hi - lo > t_tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (all_positive(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace cpdshift
