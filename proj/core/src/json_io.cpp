#include "cpdshift/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace cpdshift {

using nlohmann::json;

namespace {

double json_finite(const json& j, const char* field) {
  if (!j.is_number()) {
    throw std::invalid_argument(std::string("expected a number for \"") + field + "\"");
  }
  return j.get<double>();
}

json json_extended(const ExtendedReal& x) {
  if (std::isnan(x.v)) return json("undefined");
  if (std::isinf(x.v)) return json(x.v > 0 ? "inf" : "-inf");
  return json(x.v);
}

}  // namespace

json to_json(const DiscreteMeasure& nu) {
  json atoms = json::array();
  for (const DiscreteMeasure::Atom& a : nu.atoms()) {
    atoms.push_back({{"x", a.x}, {"w", a.w}});
  }
  return json{{"atoms", std::move(atoms)}};
}

DiscreteMeasure measure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("atoms")) {
    throw std::invalid_argument("measure JSON must be an object with an \"atoms\" array");
  }
  const json& atoms = j.at("atoms");
  if (!atoms.is_array()) {
    throw std::invalid_argument("\"atoms\" must be an array");
  }
  std::vector<DiscreteMeasure::Atom> parsed;
  parsed.reserve(atoms.size());
  for (const json& a : atoms) {
    if (!a.is_object() || !a.contains("x") || !a.contains("w")) {
      throw std::invalid_argument("each atom needs numeric \"x\" and \"w\" fields");
    }
    parsed.push_back({json_finite(a.at("x"), "x"), json_finite(a.at("w"), "w")});
  }
  return DiscreteMeasure(std::move(parsed));
}

json to_json(const RepresentingTriplet& triplet) {
  return json{{"b", triplet.b}, {"c", triplet.c}, {"nu", to_json(triplet.nu)}};
}

TripletSpec triplet_from_json(const json& j) {
  if (!j.is_object() || !j.contains("b") || !j.contains("c") || !j.contains("nu")) {
    throw std::invalid_argument(
        "triplet JSON must be an object with \"b\", \"c\" and \"nu\" fields");
  }
  TripletSpec spec;
  spec.triplet = RepresentingTriplet(json_finite(j.at("b"), "b"), json_finite(j.at("c"), "c"),
                                     measure_from_json(j.at("nu")));
  if (j.contains("gamma0")) {
    spec.gamma0 = json_finite(j.at("gamma0"), "gamma0");
  }
  return spec;
}

json to_json(const PsdCheck& check) {
  return json{{"positive", check.positive},
              {"min_eigenvalue", check.min_eigenvalue},
              {"scale", check.scale}};
}

json to_json(const PositivityReport& report) {
  return json{{"case", to_string(report.case_label)},
              {"b_frak", report.b_frak},
              {"omega_closed_at_inf", report.omega_closed_at_inf},
              {"zeta_trace", report.zeta_trace},
              {"argmin_n", report.argmin_n},
              {"gamma1", json_extended(report.gamma1)},
              {"gamma2", json_extended(report.gamma2)},
              {"theta_sup", report.theta_sup}};
}

json to_json(const BergerMeasure& mu) {
  return json{{"measure", to_json(mu.off_one)},
              {"mass_at_one", mu.mass_at_one},
              {"valid", mu.valid}};
}

json to_json(const CompactnessVerdict& verdict) {
  return json{{"operator", to_string(verdict.part)},
              {"verdict", to_string(verdict.verdict)},
              {"rule", verdict.rule},
              {"tail", verdict.tail},
              {"tail_liminf", verdict.tail_liminf}};
}

json to_json(const FlatnessVerdict& verdict) {
  json out{{"kind", to_string(verdict.kind)},
           {"run_start", verdict.run_start},
           {"run_length", verdict.run_length}};
  if (verdict.berger) out["berger"] = to_json(*verdict.berger);
  if (!verdict.note.empty()) out["note"] = verdict.note;
  return out;
}

json to_json(const SigmaTrace& trace) {
  json sigma = json::array();
  for (double s : trace.sigma) {
    if (std::isnan(s)) {
      sigma.push_back("undefined");
    } else if (std::isinf(s)) {
      sigma.push_back(s > 0 ? "inf" : "-inf");
    } else {
      sigma.push_back(s);
    }
  }
  json out{{"sigma", std::move(sigma)}};
  if (trace.n_lambda) {
    out["n_lambda"] = *trace.n_lambda;
  } else {
    out["n_lambda"] = "inf";
  }
  if (trace.degenerate_at) out["degenerate_at"] = *trace.degenerate_at;
  return out;
}

json to_json(const OneStepShiftExtension& ext) {
  json out{{"feasible", ext.feasible},
           {"sigma1", json_extended(ext.sigma1)},
           {"t_upper", json_extended(ext.t_upper)},
           {"mass_at_zero", json_extended(ext.mass_at_zero)}};
  if (ext.triplet) out["triplet"] = to_json(*ext.triplet);
  return out;
}

json to_json(const ExtensionResult& result) {
  json steps = json::array();
  for (const ExtensionStep& step : result.steps) {
    json s{{"forced", step.forced},
           {"t", step.t},
           {"t_upper", json_extended(step.t_upper)},
           {"mass_at_zero", step.mass_at_zero},
           {"triplet", to_json(step.triplet)}};
    steps.push_back(std::move(s));
  }
  json out{{"feasible", result.feasible}, {"steps", std::move(steps)}};
  if (!result.feasible) {
    out["failed_step"] = result.failed_step;
    out["failure_reason"] = result.failure_reason;
  }
  return out;
}

}  // namespace cpdshift
