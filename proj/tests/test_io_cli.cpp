#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "leeyang/cli.hpp"
#include "leeyang/io.hpp"
#include "testutil.hpp"

using namespace leeyang;
using testutil::cclose;
using testutil::close;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const std::string kRing6 = std::string(LEEYANG_SOURCE_DIR) + "/models/ring6.json";

std::string tmp_path(const std::string& name) { return "/tmp/leeyang_" + name; }

}  // namespace

TEST_CASE("measure json round trip") {
  const json spin_half = {{"type", "spin_half"}};
  CHECK(measure_from_json(spin_half).is_spin_half());
  CHECK(measure_to_json(measure_from_json(spin_half))["type"] == "spin_half");

  const json spin2 = {{"type", "spin_s"}, {"s", 2}};
  const DiscreteEvenMeasure mu2 = measure_from_json(spin2);
  CHECK(mu2.atoms().size() == 2);
  CHECK(close(mu2.weight_at_zero(), 0.2, 1e-15));

  const json atoms = {{"type", "atoms"},
                      {"atoms", json::array({json::array({1.0, 0.2}),
                                             json::array({2.0, 0.1})})},
                      {"zero_weight", 0.4}};
  const DiscreteEvenMeasure mua = measure_from_json(atoms);
  const DiscreteEvenMeasure back = measure_from_json(measure_to_json(mua));
  CHECK(back.atoms().size() == mua.atoms().size());
  CHECK(close(back.weight_at_zero(), mua.weight_at_zero(), 1e-15));
  CHECK(close(back.delta(), mua.delta(), 1e-15));

  CHECK_THROWS_AS(measure_from_json(json{{"type", "gaussian"}}), Error);
}

TEST_CASE("model json round trip") {
  const json mj = json::parse(slurp(kRing6));
  const InteractionSpec spec = spec_from_json(mj);
  CHECK(spec.nsites() == 6);
  CHECK(spec.couplings().size() == 6);
  CHECK(spec.geometry().has_value());
  CHECK(spec.geometry()->periodic);
  CHECK(cclose(field_from_json(mj), 1.0, 1e-15));

  const InteractionSpec again = spec_from_json(spec_to_json(spec));
  CHECK(again.nsites() == spec.nsites());
  CHECK(again.couplings().size() == spec.couplings().size());
  for (std::size_t i = 0; i < spec.couplings().size(); ++i) {
    CHECK(again.couplings()[i].sites == spec.couplings()[i].sites);
    CHECK(cclose(again.couplings()[i].strength, spec.couplings()[i].strength, 1e-15));
  }
}

TEST_CASE("digest is deterministic and key-order independent") {
  const json a = {{"x", 1}, {"y", 2}};
  const json b = {{"y", 2}, {"x", 1}};
  CHECK(json_digest(a) == json_digest(b));
  CHECK(json_digest(a).size() == 16);
  CHECK(json_digest(a) != json_digest(json{{"x", 1}}));
}

TEST_CASE("run report shape") {
  RunReport rep;
  rep.command = "demo";
  rep.metrics["value"] = 1.5;
  CHECK(rep.exit_code() == 0);
  rep.fail("some_invariant", 0.25);
  CHECK(rep.exit_code() == 1);
  const json j = rep.to_json();
  CHECK(j["status"] == "FAIL");
  REQUIRE(j["violations"].size() == 1);
  CHECK(j["violations"][0]["invariant"] == "some_invariant");
  rep.error("boom");
  CHECK(rep.exit_code() == 2);
}

TEST_CASE("cli subcommands") {
  // circle on the ring model passes
  CHECK(cli::run({"circle", "--model", kRing6, "--out", tmp_path("circle.json")}) == 0);
  const json circle = json::parse(slurp(tmp_path("circle.json")));
  CHECK(circle["status"] == "PASS");
  CHECK(circle["metrics"]["max_circle_deviation"].get<double>() <= 1e-8);

  // certify reports h_radius = e^-0.8 / 8 for j0 = 0.4
  CHECK(cli::run({"certify", "--model", kRing6, "--j0", "0.4", "--out",
                  tmp_path("certify.json"), "--cert-out", tmp_path("cert.json")}) == 0);
  const json certify = json::parse(slurp(tmp_path("certify.json")));
  CHECK(close(certify["metrics"]["h_radius"].get<double>(),
              std::exp(-0.8) / 8.0, 1e-12));
  const json cert = json::parse(slurp(tmp_path("cert.json")));
  CHECK(cert["radii"].size() == 6);
  CHECK(cert.contains("h_radius"));
  CHECK(cert.contains("steps"));

  // pncheck inline measure
  CHECK(cli::run({"pncheck", "--measure", R"({"type":"spin_s","s":2})", "--out",
                  tmp_path("pn.json")}) == 0);
  const json pn = json::parse(slurp(tmp_path("pn.json")));
  CHECK(pn["metrics"]["is_pn"] == 1.0);

  // audit passes honestly and fails when radii are inflated past the circle
  CHECK(cli::run({"audit", "--model", kRing6, "--j0", "0.4", "--out",
                  tmp_path("audit.json")}) == 0);
  CHECK(cli::run({"audit", "--model", kRing6, "--j0", "0.4", "--inflate", "1e6",
                  "--out", tmp_path("audit_bad.json")}) == 1);
  CHECK(json::parse(slurp(tmp_path("audit_bad.json")))["status"] == "FAIL");

  // correlate writes the fixed CSV header
  CHECK(cli::run({"correlate", "--model", kRing6, "--sites", "0,2", "--h", "1,0.5",
                  "--csv", tmp_path("corr.csv"), "--out", tmp_path("corr.json")}) == 0);
  const std::string csv = slurp(tmp_path("corr.csv"));
  CHECK(csv.rfind("h_re,h_im,abs_f,re_f,im_f,lower,upper,ratio_re_min", 0) == 0);

  // newman and sandwich on the small grid
  CHECK(cli::run({"newman", "--model", kRing6, "--sites", "0,2", "--grid",
                  "0:1:2,-1:1:2", "--out", tmp_path("newman.json")}) == 0);
  CHECK(cli::run({"sandwich", "--model", kRing6, "--sites", "0,2", "--grid",
                  "0:1:2,-1:1:2", "--out", tmp_path("sandwich.json")}) == 0);

  // ursell with the finite-difference cross check
  CHECK(cli::run({"ursell", "--model", kRing6, "--observables", "0;2;4", "--h",
                  "0.8", "--fd-check", "--out", tmp_path("ursell.json")}) == 0);

  // gausslucas from an explicit polynomial (roots at -1, -2)
  CHECK(cli::run({"gausslucas", "--poly", "2,3,1", "--out",
                  tmp_path("gl.json")}) == 0);
  // ... and from a model: fugacity zeros are transported to the imaginary
  // axis, so the strong check applies
  CHECK(cli::run({"gausslucas", "--model", kRing6, "--out",
                  tmp_path("gl_model.json")}) == 0);
  const json gl = json::parse(slurp(tmp_path("gl_model.json")));
  CHECK(gl["metrics"]["strong_gl_applicable"] == 1.0);
  CHECK(gl["metrics"]["strong_gl_min_re"].get<double>() > 0.0);

  // bounds harness
  CHECK(cli::run({"bounds", "--h", "1,0.5", "--out", tmp_path("bounds.json")}) == 0);

  // unknown subcommand is a usage error
  CHECK(cli::run({"no-such-command"}) == 2);
  // bad input file is an ERROR report (exit 2)
  CHECK(cli::run({"circle", "--model", "/nonexistent.json", "--out",
                  tmp_path("err.json")}) == 2);
  CHECK(json::parse(slurp(tmp_path("err.json")))["status"] == "ERROR");
}

TEST_CASE("cli determinism") {
  CHECK(cli::run({"zeros", "--model", kRing6, "--csv", tmp_path("z.csv"),
                  "--out", tmp_path("z.json")}) == 0);
  const std::string csv_first = slurp(tmp_path("z.csv"));
  const std::string json_first = slurp(tmp_path("z.json"));
  CHECK(cli::run({"zeros", "--model", kRing6, "--csv", tmp_path("z.csv"),
                  "--out", tmp_path("z.json")}) == 0);
  CHECK(slurp(tmp_path("z.csv")) == csv_first);
  CHECK(slurp(tmp_path("z.json")) == json_first);

  // threads must not flip any verdict
  CHECK(cli::run({"newman", "--model", kRing6, "--sites", "0,3", "--grid",
                  "0:1:2,-1:1:2", "--threads", "4", "--out",
                  tmp_path("newman_t4.json")}) == 0);
}

TEST_CASE("volume sequence on correlate") {
  CHECK(cli::run({"correlate", "--model", kRing6, "--sites", "0", "--h", "1,0.5",
                  "--volumes", "8,10,12", "--csv", tmp_path("vol.csv"), "--out",
                  tmp_path("vol.json")}) == 0);
  const json rep = json::parse(slurp(tmp_path("vol.json")));
  CHECK(rep["status"] == "PASS");
  CHECK(rep["metrics"]["monotone"] == 1.0);
  CHECK(rep["metrics"]["last_diff"].get<double>() <= 1e-3);
}

TEST_CASE("massgap subcommand") {
  // build a 14-site ring model file on the fly
  json mj = json::parse(slurp(kRing6));
  mj["nsites"] = 14;
  mj["geometry"]["dims"] = {14};
  json cs = json::array();
  for (int i = 0; i < 14; ++i)
    cs.push_back({{"sites", {i, (i + 1) % 14}}, {"J", 0.3}});
  mj["couplings"] = cs;
  std::ofstream(tmp_path("ring14.json")) << mj.dump();
  CHECK(cli::run({"massgap", "--model", tmp_path("ring14.json"), "--h", "1.0",
                  "--window", "2:6", "--csv", tmp_path("mg.csv"), "--out",
                  tmp_path("mg.json")}) == 0);
  const json rep = json::parse(slurp(tmp_path("mg.json")));
  CHECK(rep["metrics"]["m_fit"].get<double>() > 0.0);
  CHECK(slurp(tmp_path("mg.csv")).rfind("distance,log_truncated,fit_slope,oracle", 0) == 0);
}
