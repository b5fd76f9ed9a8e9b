#include "leeyang/io.hpp"

#include <cstdint>

namespace leeyang {

namespace {

cplx complex_from_json(const json& j) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2)
    return cplx(j[0].get<double>(), j[1].get<double>());
  throw Error("expected a number or [re, im] pair");
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace

DiscreteEvenMeasure measure_from_json(const json& j) {
  const std::string type = j.value("type", "spin_half");
  if (type == "spin_half") return DiscreteEvenMeasure::spin_half();
  if (type == "spin_s") {
    if (!j.contains("s")) throw Error("measure: spin_s needs \"s\"");
    return DiscreteEvenMeasure::spin_s(j["s"].get<double>());
  }
  if (type == "atoms") {
    std::vector<std::pair<double, double>> atoms;
    for (const auto& a : j.value("atoms", json::array()))
      atoms.emplace_back(a[0].get<double>(), a[1].get<double>());
    std::optional<double> delta;
    if (j.contains("delta")) delta = j["delta"].get<double>();
    return DiscreteEvenMeasure(atoms, j.value("zero_weight", 0.0), delta);
  }
  throw Error("measure: unknown type \"" + type + "\"");
}

json measure_to_json(const DiscreteEvenMeasure& mu) {
  if (mu.is_spin_half()) return json{{"type", "spin_half"}};
  json atoms = json::array();
  for (const auto& a : mu.atoms())
    atoms.push_back(json::array({a.step * mu.delta(), a.weight}));
  return json{{"type", "atoms"},
              {"atoms", atoms},
              {"zero_weight", mu.weight_at_zero()},
              {"delta", mu.delta()}};
}

InteractionSpec spec_from_json(const json& j) {
  if (!j.contains("nsites")) throw Error("model: missing \"nsites\"");
  const int nsites = j["nsites"].get<int>();
  std::vector<Coupling> couplings;
  for (const auto& c : j.value("couplings", json::array())) {
    VarSet sites;
    for (const auto& s : c.at("sites")) sites = sites | VarSet::single(s.get<int>());
    couplings.push_back({sites, complex_from_json(c.at("J"))});
  }
  DiscreteEvenMeasure mu = j.contains("measure")
                               ? measure_from_json(j["measure"])
                               : DiscreteEvenMeasure::spin_half();
  std::optional<Geometry> geom;
  if (j.contains("geometry")) {
    Geometry g;
    for (const auto& d : j["geometry"].at("dims")) g.dims.push_back(d.get<int>());
    g.periodic = j["geometry"].value("periodic", false);
    geom = std::move(g);
  }
  return InteractionSpec(nsites, std::move(couplings), std::move(mu), std::move(geom));
}

json spec_to_json(const InteractionSpec& spec) {
  json couplings = json::array();
  for (const auto& c : spec.couplings()) {
    json sites = json::array();
    for (int s : c.sites.indices()) sites.push_back(s);
    couplings.push_back({{"sites", sites}, {"J", complex_to_json(c.strength)}});
  }
  json out{{"nsites", spec.nsites()},
           {"couplings", couplings},
           {"measure", measure_to_json(spec.measure())}};
  if (spec.geometry()) {
    out["geometry"] = {{"dims", spec.geometry()->dims},
                       {"periodic", spec.geometry()->periodic}};
  }
  return out;
}

cplx field_from_json(const json& j) {
  if (!j.contains("field")) return cplx{0.0};
  return complex_from_json(j["field"]);
}

json certificate_to_json(const ZeroFreeCertificate& cert, double h_radius) {
  json steps = json::array();
  for (const auto& s : cert.steps)
    steps.push_back({{"factor_sites", s.factor_sites},
                     {"factor_radius", s.factor_radius},
                     {"merged_sites", s.merged_sites}});
  return json{{"radii", cert.radii}, {"h_radius", h_radius}, {"steps", steps}};
}

std::string json_digest(const json& j) {
  const std::string s = j.dump();  // object keys are stored sorted
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void RunReport::fail(const std::string& invariant, double measured) {
  status = "FAIL";
  violations.emplace_back(invariant, measured);
}

void RunReport::error(const std::string& msg) {
  status = "ERROR";
  message = msg;
}

json RunReport::to_json() const {
  json v = json::array();
  for (const auto& [name, value] : violations)
    v.push_back({{"invariant", name}, {"measured", value}});
  json out{{"command", command},
           {"inputs_digest", inputs_digest},
           {"status", status},
           {"metrics", metrics},
           {"artifacts", artifacts},
           {"violations", v}};
  if (!message.empty()) out["message"] = message;
  return out;
}

int RunReport::exit_code() const {
  if (status == "PASS") return 0;
  if (status == "FAIL") return 1;
  return 2;
}

}  // namespace leeyang
