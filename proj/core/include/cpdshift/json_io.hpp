#pragma once

#include <nlohmann/json.hpp>

#include "cpdshift/backext.hpp"
#include "cpdshift/measure.hpp"
#include "cpdshift/positivity.hpp"
#include "cpdshift/sequences.hpp"
#include "cpdshift/shift_analysis.hpp"

namespace cpdshift {

// Wire formats. Measures: {"atoms": [{"x": <num>, "w": <num>}, ...]}.
// Triplets: {"b": <num>, "c": <num>, "nu": <measure>, "gamma0": <num>?}.
// Structural problems throw std::invalid_argument (CLI exit 1); semantic
// violations surface as DomainError from the constructors (CLI exit 2).

nlohmann::json to_json(const DiscreteMeasure& nu);
DiscreteMeasure measure_from_json(const nlohmann::json& j);

struct TripletSpec {
  RepresentingTriplet triplet;
  double gamma0 = 1.0;
};

nlohmann::json to_json(const RepresentingTriplet& triplet);
TripletSpec triplet_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PsdCheck& check);
nlohmann::json to_json(const PositivityReport& report);
nlohmann::json to_json(const BergerMeasure& mu);
nlohmann::json to_json(const CompactnessVerdict& verdict);
nlohmann::json to_json(const FlatnessVerdict& verdict);
nlohmann::json to_json(const SigmaTrace& trace);
nlohmann::json to_json(const OneStepShiftExtension& ext);
nlohmann::json to_json(const ExtensionResult& result);

}  // namespace cpdshift
