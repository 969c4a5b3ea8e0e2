// cpdshift: synthesis and analysis of conditionally positive definite
// unilateral weighted shifts from representing triplets (b, c, nu).

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cpdshift/backext.hpp"
#include "cpdshift/json_io.hpp"
#include "cpdshift/positivity.hpp"
#include "cpdshift/sequences.hpp"
#include "cpdshift/shift_analysis.hpp"
#include "reproduce_examples.hpp"

using nlohmann::json;
using namespace cpdshift;

namespace {

std::string slurp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Inline JSON, or @path to read it from a file.
json load_json_arg(const std::string& arg) {
  const std::string text = arg.rfind('@', 0) == 0 ? slurp_file(arg.substr(1)) : arg;
  return json::parse(text);
}

std::string fmt(double v) {
  std::ostringstream out;
  out << std::setprecision(15) << v;
  return out.str();
}

// Weights: inline JSON array, @file.json, or @file.csv in the emitted
// n,gamma,lambda schema (the lambda column is taken).
std::vector<double> load_weights_arg(const std::string& arg) {
  if (arg.rfind('@', 0) == 0 && arg.size() > 4 &&
      arg.compare(arg.size() - 4, 4, ".csv") == 0) {
    const std::string text = slurp_file(arg.substr(1));
    std::istringstream lines(text);
    std::string line;
    if (!std::getline(lines, line) || line.rfind("n,gamma,lambda", 0) != 0) {
      throw std::invalid_argument("CSV weights input needs the n,gamma,lambda header");
    }
    std::vector<double> weights;
    while (std::getline(lines, line)) {
      if (line.empty()) continue;
      const std::size_t first = line.find(',');
      const std::size_t second = line.find(',', first + 1);
      if (first == std::string::npos || second == std::string::npos) {
        throw std::invalid_argument("malformed CSV row: " + line);
      }
      const std::string cell = line.substr(second + 1);
      if (cell.empty()) continue;  // the final row has no weight
      weights.push_back(std::stod(cell));
    }
    return weights;
  }
  const json j = load_json_arg(arg);
  if (!j.is_array()) {
    throw std::invalid_argument("weights must be a JSON array of positive numbers");
  }
  std::vector<double> weights;
  for (const json& v : j) {
    if (!v.is_number()) throw std::invalid_argument("weights must be numeric");
    weights.push_back(v.get<double>());
  }
  return weights;
}

struct CommonOptions {
  std::size_t horizon = kDefaultHorizon;
  std::size_t window = kDefaultWindow;
  double floor_tol = kDefaultEigFloor;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_format = true) {
  cmd->add_option("--horizon", opts.horizon, "synthesis horizon N (gamma_0..gamma_N)")
      ->capture_default_str();
  cmd->add_option("--window", opts.window, "Hankel window for PD/CPD checks")
      ->capture_default_str();
  cmd->add_option("--floor", opts.floor_tol, "relative eigenvalue floor for PSD checks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  if (with_format) {
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  }
}

json tolerances_block(const CommonOptions& opts) {
  return json{{"horizon", opts.horizon},
              {"window", opts.window},
              {"eigenvalue_floor", opts.floor_tol}};
}

// ---------------------------------------------------------------------------

int run_synth(const std::string& triplet_arg, std::optional<double> gamma0_flag,
              const CommonOptions& opts, std::ostream& out) {
  TripletSpec spec = triplet_from_json(load_json_arg(triplet_arg));
  if (gamma0_flag) spec.gamma0 = *gamma0_flag;
  const CpdSequence gamma = synthesize(spec.triplet, spec.gamma0, opts.horizon);
  const WeightSequence lambda = weights_from_gamma(gamma);

  if (opts.format == "csv") {
    out << "n,gamma,lambda\n";
    for (std::size_t n = 0; n <= gamma.horizon(); ++n) {
      out << n << ',' << fmt(gamma[n]) << ',';
      if (n < lambda.size()) out << fmt(lambda[n]);
      out << '\n';
    }
    return 0;
  }
  json report{{"input", to_json(spec.triplet)},
              {"gamma0", spec.gamma0},
              {"gamma", gamma.values()},
              {"lambda", lambda.weights()},
              {"tolerances", tolerances_block(opts)}};
  if (gamma.horizon() >= 8) {
    report["growth_estimate"] = growth_estimate(gamma);
  }
  out << report.dump(2) << '\n';
  return 0;
}

json verdicts_to_json(const std::vector<CompactnessVerdict>& verdicts) {
  json arr = json::array();
  for (const CompactnessVerdict& v : verdicts) arr.push_back(to_json(v));
  return arr;
}

int run_analyze(const std::optional<std::string>& triplet_arg,
                const std::optional<std::string>& weights_arg, bool assume_cpd,
                double equality_rtol, const CommonOptions& opts, std::ostream& out) {
  if (triplet_arg.has_value() == weights_arg.has_value()) {
    throw std::invalid_argument("analyze needs exactly one of --triplet / --weights");
  }

  if (triplet_arg) {
    const TripletSpec spec = triplet_from_json(load_json_arg(*triplet_arg));
    if (spec.gamma0 != 1.0) {
      throw DomainError("shift analysis requires gamma0 = 1 (hat sequences start at 1)");
    }
    const CpdSequence hat = synthesize(spec.triplet, 1.0, opts.horizon);
    const WeightSequence lambda = weights_from_gamma(hat);
    const DiagonalTriplet diag = diagonal_triplet(spec.triplet, opts.horizon);

    if (opts.format == "csv") {
      out << "k,b_k,c_k,nu_k_total\n";
      for (std::size_t k = 0; k < diag.entries.size(); ++k) {
        out << k << ',' << fmt(diag.entries[k].b_k) << ',' << fmt(diag.entries[k].c_k)
            << ',' << fmt(diag.entries[k].nu_k.total_mass()) << '\n';
      }
      return 0;
    }

    const std::size_t window = std::min(opts.window, (hat.horizon() - 2) / 2);
    json report{{"input", to_json(spec.triplet)},
                {"gamma", hat.values()},
                {"lambda", lambda.weights()},
                {"cpd_window", to_json(is_cpd_window(hat, window, opts.floor_tol))},
                {"stieltjes_window", is_stieltjes_window(hat, window, opts.floor_tol)},
                {"subnormal", subnormality_check(spec.triplet, window, opts.floor_tol)},
                {"flatness", to_json(flatness_analyze(lambda, true, equality_rtol))},
                {"compactness", verdicts_to_json(compactness_diagnostics(spec.triplet,
                                                                         opts.horizon))},
                {"tolerances", tolerances_block(opts)}};
    report["tolerances"]["window"] = window;
    if (hat.horizon() >= 8) {
      report["growth_estimate"] = growth_estimate(hat);
    }
    if (spec.triplet.c == 0.0) {
      report["berger"] = to_json(berger_from_triplet(spec.triplet));
    }
    out << report.dump(2) << '\n';
    return 0;
  }

  const WeightSequence lambda{load_weights_arg(*weights_arg)};
  if (lambda.size() < 2) {
    throw std::invalid_argument("analyze needs at least 2 weights");
  }
  const CpdSequence hat = gamma_hat(lambda);
  if (opts.format == "csv") {
    out << "n,gamma,lambda\n";
    for (std::size_t n = 0; n <= hat.horizon(); ++n) {
      out << n << ',' << fmt(hat[n]) << ',';
      if (n < lambda.size()) out << fmt(lambda[n]);
      out << '\n';
    }
    return 0;
  }
  const std::size_t window = std::min(opts.window, (hat.horizon() - 2) / 2);
  json report{{"gamma", hat.values()},
              {"lambda", lambda.weights()},
              {"cpd_window", to_json(is_cpd_window(hat, window, opts.floor_tol))},
              {"stieltjes_window", is_stieltjes_window(hat, window, opts.floor_tol)},
              {"tolerances", tolerances_block(opts)}};
  report["tolerances"]["window"] = window;
  if (hat.horizon() >= 8) {
    report["growth_estimate"] = growth_estimate(hat);
  }
  if (assume_cpd) {
    report["flatness"] = to_json(flatness_analyze(lambda, true, equality_rtol));
  } else {
    report["flatness"] = "skipped: weights not certified CPD (pass --assume-cpd)";
  }
  out << report.dump(2) << '\n';
  return 0;
}

int run_classify(double c, const std::string& nu_arg, std::size_t zeta_length,
                 const CommonOptions& opts, std::ostream& out) {
  if (opts.format == "csv") {
    throw std::invalid_argument("classify emits JSON only");
  }
  const DiscreteMeasure nu = measure_from_json(load_json_arg(nu_arg));
  ClassifyOptions copts;
  copts.zeta_trace_length = zeta_length;
  const PositivityReport report = classify(c, nu, copts);
  json j = to_json(report);
  j["tolerances"] = {{"gamma2_boundary_rtol", copts.gamma2_boundary_rtol},
                     {"delta0_mass_atol", copts.delta0_mass_atol},
                     {"scan_cap", copts.scan_cap}};
  out << j.dump(2) << '\n';
  return 0;
}

int run_backext(const std::string& triplet_arg, std::optional<std::size_t> steps,
                std::optional<double> t_probe, std::size_t sigma_length,
                const CommonOptions& opts, std::ostream& out) {
  if (opts.format == "csv") {
    throw std::invalid_argument("backext emits JSON only");
  }
  const TripletSpec spec = triplet_from_json(load_json_arg(triplet_arg));
  json report{{"input", to_json(spec.triplet)},
              {"sigma_trace", to_json(sigma_trace(spec.triplet, sigma_length))},
              {"infinite_step", to_string(infinite_step_check(spec.triplet))},
              {"tolerances", tolerances_block(opts)}};
  if (t_probe) {
    report["one_step"] = to_json(extend_shift_1(spec.triplet, *t_probe));
    report["one_step"]["t"] = *t_probe;
  }
  if (steps) {
    report["n_step"] = to_json(extend_shift_n(spec.triplet, *steps));
    report["n_step"]["steps_requested"] = *steps;
  }
  out << report.dump(2) << '\n';
  return 0;
}

int run_flatness(const std::optional<std::string>& triplet_arg,
                 const std::optional<std::string>& weights_arg, bool assume_cpd,
                 double equality_rtol, const CommonOptions& opts, std::ostream& out) {
  if (opts.format == "csv") {
    throw std::invalid_argument("flatness emits JSON only");
  }
  if (triplet_arg.has_value() == weights_arg.has_value()) {
    throw std::invalid_argument("flatness needs exactly one of --triplet / --weights");
  }
  WeightSequence lambda = [&] {
    if (weights_arg) return WeightSequence(load_weights_arg(*weights_arg));
    const TripletSpec spec = triplet_from_json(load_json_arg(*triplet_arg));
    return weights_from_gamma(synthesize(spec.triplet, 1.0, opts.horizon));
  }();
  // weights synthesized from a triplet carry the CPD certificate
  const bool certified = triplet_arg.has_value() || assume_cpd;
  json report = to_json(flatness_analyze(lambda, certified, equality_rtol));
  report["equality_rtol"] = equality_rtol;
  out << report.dump(2) << '\n';
  return 0;
}

int run_reproduce(const std::string& name, double theta, double c,
                  const std::optional<std::string>& nu_arg, const CommonOptions& opts,
                  std::ostream& out) {
  tools::ReproduceOptions ropts;
  ropts.horizon = opts.horizon;
  ropts.window = opts.window;
  ropts.floor_tol = opts.floor_tol;
  int failures = 0;
  if (name == "oliun") {
    failures = tools::reproduce_single_atom(theta, ropts, out);
  } else if (name == "muritru") {
    failures = tools::reproduce_affine(theta, ropts, out);
  } else if (name == "przyktwofor") {
    failures = tools::reproduce_two_atom(theta, ropts, out);
  } else if (name == "gusv") {
    const DiscreteMeasure nu =
        nu_arg ? measure_from_json(load_json_arg(*nu_arg)) : DiscreteMeasure::dirac(2.0);
    failures = tools::reproduce_balanced_quadratic(c, nu, ropts, out);
  } else {
    throw std::invalid_argument("unknown example: " + name +
                                " (expected oliun, muritru, przyktwofor or gusv)");
  }
  out << (failures == 0 ? "all checks passed\n" : "some checks failed\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conditionally positive definite weighted shift toolkit"};
  app.require_subcommand(1);

  // synth
  CommonOptions synth_opts;
  std::string synth_triplet;
  double synth_gamma0 = 1.0;
  bool synth_gamma0_set = false;
  CLI::App* synth = app.add_subcommand(
      "synth", "synthesize gamma and weights from a representing triplet");
  synth->add_option("--triplet", synth_triplet, "triplet JSON or @file")->required();
  synth->add_option("--gamma0", synth_gamma0, "overrides gamma0 from the triplet JSON")
      ->each([&](const std::string&) { synth_gamma0_set = true; });
  add_common(synth, synth_opts);

  // analyze
  CommonOptions analyze_opts;
  std::optional<std::string> analyze_triplet, analyze_weights;
  bool analyze_assume_cpd = false;
  double analyze_eq_rtol = 1e-10;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "shift analysis: window checks, subnormality, diagonal triplet, flatness");
  analyze->add_option("--triplet", analyze_triplet, "triplet JSON or @file");
  analyze->add_option("--weights", analyze_weights, "weights JSON array, @file.json or @file.csv");
  analyze->add_flag("--assume-cpd", analyze_assume_cpd,
                    "certify raw weights as CPD for the flatness scan");
  analyze->add_option("--tolerance", analyze_eq_rtol, "weight-equality tolerance")
      ->capture_default_str();
  add_common(analyze, analyze_opts);

  // classify
  CommonOptions classify_opts;
  double classify_c = 0.0;
  std::string classify_nu;
  std::size_t classify_zeta = 16;
  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "positivity region of 1 + t n + c n^2 + integral of Q_n");
  classify_cmd->add_option("--c", classify_c, "quadratic coefficient c >= 0")->required();
  classify_cmd->add_option("--nu", classify_nu, "measure JSON or @file")->required();
  classify_cmd->add_option("--zeta-length", classify_zeta, "zeta trace length")
      ->capture_default_str();
  add_common(classify_cmd, classify_opts);

  // backext
  CommonOptions backext_opts;
  std::string backext_triplet;
  std::optional<std::size_t> backext_steps;
  std::optional<double> backext_t;
  std::size_t backext_sigma = 16;
  CLI::App* backext_cmd = app.add_subcommand(
      "backext", "backward extension: sigma trace, one-step probe, n-step solve");
  backext_cmd->add_option("--triplet", backext_triplet, "triplet JSON or @file")->required();
  backext_cmd->add_option("--steps", backext_steps, "solve the n-step extension");
  backext_cmd->add_option("--t", backext_t, "probe a single prepended weight");
  backext_cmd->add_option("--sigma-length", backext_sigma, "sigma trace length")
      ->capture_default_str();
  add_common(backext_cmd, backext_opts);

  // flatness
  CommonOptions flatness_opts;
  std::optional<std::string> flatness_triplet, flatness_weights;
  bool flatness_assume_cpd = false;
  double flatness_eq_rtol = 1e-10;
  CLI::App* flatness_cmd =
      app.add_subcommand("flatness", "scan weights for the flatness patterns");
  flatness_cmd->add_option("--triplet", flatness_triplet, "triplet JSON or @file");
  flatness_cmd->add_option("--weights", flatness_weights,
                           "weights JSON array, @file.json or @file.csv");
  flatness_cmd->add_flag("--assume-cpd", flatness_assume_cpd,
                         "certify raw weights as CPD");
  flatness_cmd->add_option("--tolerance", flatness_eq_rtol, "weight-equality tolerance")
      ->capture_default_str();
  add_common(flatness_cmd, flatness_opts);

  // reproduce-example
  CommonOptions repro_opts;
  std::string repro_name;
  double repro_theta = 2.0;
  double repro_c = 1.0;
  std::optional<std::string> repro_nu;
  CLI::App* repro = app.add_subcommand(
      "reproduce-example", "regenerate a built-in example family as a checked fixture");
  repro->add_option("name", repro_name, "oliun | muritru | przyktwofor | gusv")->required();
  repro->add_option("--theta", repro_theta, "family parameter")->capture_default_str();
  repro->add_option("--c", repro_c, "quadratic coefficient (gusv)")->capture_default_str();
  repro->add_option("--nu", repro_nu, "measure JSON or @file (gusv)");
  add_common(repro, repro_opts, /*with_format=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::ostringstream out;
  int rc = 0;
  try {
    if (synth->parsed()) {
      rc = run_synth(synth_triplet,
                     synth_gamma0_set ? std::optional<double>(synth_gamma0) : std::nullopt,
                     synth_opts, out);
    } else if (analyze->parsed()) {
      rc = run_analyze(analyze_triplet, analyze_weights, analyze_assume_cpd,
                       analyze_eq_rtol, analyze_opts, out);
    } else if (classify_cmd->parsed()) {
      rc = run_classify(classify_c, classify_nu, classify_zeta, classify_opts, out);
    } else if (backext_cmd->parsed()) {
      rc = run_backext(backext_triplet, backext_steps, backext_t, backext_sigma,
                       backext_opts, out);
    } else if (flatness_cmd->parsed()) {
      rc = run_flatness(flatness_triplet, flatness_weights, flatness_assume_cpd,
                        flatness_eq_rtol, flatness_opts, out);
    } else if (repro->parsed()) {
      rc = run_reproduce(repro_name, repro_theta, repro_c, repro_nu, repro_opts, out);
    }
  } catch (const DomainError& e) {
    std::cout << out.str();
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cout << out.str();
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cout << out.str();
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  }
  std::cout << out.str();
  return rc;
}
