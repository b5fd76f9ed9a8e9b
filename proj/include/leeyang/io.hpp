// JSON wire formats: measures, models, certificates, and the RunReport
// emitted by every CLI subcommand.
#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "leeyang/asano.hpp"
#include "leeyang/gibbs.hpp"
#include "leeyang/measures.hpp"

namespace leeyang {

using json = nlohmann::json;

// {"type": "spin_half" | "spin_s" | "atoms", "s": number?,
//  "atoms": [[x, w], ...]?, "zero_weight": number?}
DiscreteEvenMeasure measure_from_json(const json& j);
json measure_to_json(const DiscreteEvenMeasure& mu);

// {"nsites": int, "couplings": [{"sites": [int...], "J": [re, im] | re}],
//  "measure": <measure>, "geometry": {"dims": [int...], "periodic": bool}?,
//  "field": [re, im] | re}
InteractionSpec spec_from_json(const json& j);
json spec_to_json(const InteractionSpec& spec);

/// The model's "field" entry (default 0).
cplx field_from_json(const json& j);

// {"radii": [r...], "h_radius": r, "steps": [...]}
json certificate_to_json(const ZeroFreeCertificate& cert, double h_radius);

/// FNV-1a 64-bit hex digest of a canonicalized (sorted-key dump) JSON value.
std::string json_digest(const json& j);

struct RunReport {
  std::string command;
  std::string inputs_digest;
  std::string status = "PASS";  // PASS | FAIL | ERROR
  std::map<std::string, double> metrics;
  std::vector<std::string> artifacts;
  std::vector<std::pair<std::string, double>> violations;

  void fail(const std::string& invariant, double measured);
  void error(const std::string& message);
  std::string message;  // explanation on ERROR

  json to_json() const;
  int exit_code() const;  // PASS 0, FAIL 1, ERROR 2
};

}  // namespace leeyang
