#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cpdshift/measure.hpp"

namespace cpdshift {

// Classification of Omega = { t : 1 + t n + c n^2 + integral of Q_n > 0 for
// all n } for a parameter pair (c, nu) with nu supported in [0, inf).
enum class PositivityCase {
  i_a,   // theta_sup > 1                        -> Omega = (b_frak, inf), open
  i_b,   // theta_sup <= 1, c > 0                -> open
  i_c,   // theta_sup <= 1, c = 0, Gamma1 = inf  -> open; unreachable for
         //                                         finite atomic nu
  ii_a,  // c = 0, Gamma1 < inf, Gamma2 > 1      -> open, -Gamma1 < b_frak < 0
  ii_b,  // c = 0, Gamma2 = 1, nu = delta_0      -> Omega = (-1, inf)
  ii_c,  // c = 0, Gamma2 = 1, nu != delta_0     -> Omega = [-Gamma1, inf)
  ii_d,  // c = 0, Gamma2 < 1                    -> Omega = [-Gamma1, inf)
  degenerate_zero,  // c = 0, nu = 0             -> Omega = [0, inf)
};

const char* to_string(PositivityCase c);

struct PositivityReport {
  PositivityCase case_label;
  double b_frak;              // inf Omega
  bool omega_closed_at_inf;   // whether b_frak belongs to Omega
  std::vector<double> zeta_trace;  // zeta_1 .. zeta_M
  std::size_t argmin_n;       // index attaining min zeta_n (0 when not attained)
  ExtendedReal gamma1;
  ExtendedReal gamma2;
  double theta_sup;
};

struct ClassifyOptions {
  std::size_t zeta_trace_length = 16;
  // Attained-min search: scan zeta_n up to scan_cap, stopping after
  // plateau_window consecutive non-improving indices.
  std::size_t scan_cap = 4096;
  std::size_t plateau_window = 64;
  // |Gamma2 - 1| below this routes to the boundary cases ii-b / ii-c.
  double gamma2_boundary_rtol = 1e-10;
  // nu = delta_0 test: single atom at |x| <= 1e-12 with |w - 1| below this.
  double delta0_mass_atol = 1e-10;
};

// zeta_n = 1/n + c n + (1/n) integral of Q_n d(nu), n >= 1; b_frak equals
// -inf_n zeta_n.
double zeta(double c, const DiscreteMeasure& nu, std::size_t n);

PositivityReport classify(double c, const DiscreteMeasure& nu,
                          const ClassifyOptions& options = {});

// Brute-force verifier, independent of the classifier: bisection on t of
// the predicate "gamma_n(t) > 0 for n = 1..n_max".
double b_frak_oracle(double c, const DiscreteMeasure& nu, std::size_t n_max,
                     double t_tolerance);

}  // namespace cpdshift
