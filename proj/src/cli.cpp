#include "leeyang/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include "leeyang/analysis.hpp"
#include "leeyang/asano.hpp"
#include "leeyang/correlations.hpp"
#include "leeyang/io.hpp"
#include "leeyang/ursell.hpp"

namespace leeyang::cli {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct Common {
  std::uint64_t seed = 12345;
  double tol = -1.0;  // negative = per-subcommand default
  std::string out;
  std::string csv;
  int threads = 1;

  double tol_or(double dflt) const { return tol > 0.0 ? tol : dflt; }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "RNG seed for sampling checks");
  sub->add_option("--tol", c.tol, "Override the subcommand's default tolerance");
  sub->add_option("--out", c.out, "Write the report JSON here instead of stdout");
  sub->add_option("--csv", c.csv, "Path for CSV data output");
  sub->add_option("--threads", c.threads, "Worker threads for enumeration")
      ->check(CLI::PositiveNumber);
}

json load_json_arg(const std::string& arg) {
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) return json::parse(arg);
  const std::string path = (!arg.empty() && arg[0] == '@') ? arg.substr(1) : arg;
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  return json::parse(f);
}

cplx parse_complex(const std::string& s) {
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re)) throw Error("bad complex literal: " + s);
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw Error("bad complex literal: " + s);
  }
  return {re, im};
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
  if (out.empty()) throw Error("empty integer list");
  return out;
}

// "relo:rehi:nre,imlo:imhi:nim"
std::vector<cplx> parse_grid(const std::string& s) {
  double v[6];
  if (std::sscanf(s.c_str(), "%lf:%lf:%lf,%lf:%lf:%lf", &v[0], &v[1], &v[2],
                  &v[3], &v[4], &v[5]) != 6)
    throw Error("bad grid spec (want relo:rehi:nre,imlo:imhi:nim): " + s);
  return field_grid(v[0], v[1], static_cast<int>(v[2]), v[3], v[4],
                    static_cast<int>(v[5]));
}

// "0,1;1,2;3"
std::vector<VarSet> parse_observables(const std::string& s) {
  std::vector<VarSet> out;
  std::istringstream in(s);
  std::string group;
  while (std::getline(in, group, ';')) {
    VarSet v;
    for (int i : parse_int_list(group)) v = v | VarSet::single(i);
    out.push_back(v);
  }
  if (out.empty()) throw Error("empty observable list");
  return out;
}

// coefficients ascending, "re" or "re:im" tokens separated by commas
UniPoly parse_poly(const std::string& s) {
  std::vector<cplx> coeffs;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    double re = 0.0, im = 0.0;
    if (std::sscanf(tok.c_str(), "%lf:%lf", &re, &im) < 1)
      throw Error("bad polynomial coefficient: " + tok);
    coeffs.emplace_back(re, im);
  }
  return UniPoly(std::move(coeffs));
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << content;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::string header) { rows_ << header << "\n"; }
  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) rows_ << ",";
      rows_ << std::setprecision(17) << values[i];
    }
    rows_ << "\n";
  }
  void save(const std::string& path, RunReport& rep) {
    write_file(path, rows_.str());
    rep.artifacts.push_back(path);
  }

 private:
  std::ostringstream rows_;
};

InteractionSpec load_model(const std::string& arg, json& model_json) {
  model_json = load_json_arg(arg);
  return spec_from_json(model_json);
}

std::vector<double> resolve_j0(const InteractionSpec& spec, double j0_flag) {
  std::vector<double> j0;
  for (const auto& c : spec.couplings())
    j0.push_back(j0_flag >= 0.0 ? j0_flag : std::abs(c.strength));
  return j0;
}

std::string digest_inputs(const std::string& command, const json& inputs) {
  json wrapper{{"command", command}, {"inputs", inputs}};
  return json_digest(wrapper);
}

// ---------------------------------------------------------------------------
// subcommand handlers
// ---------------------------------------------------------------------------

RunReport do_zpoly(const Common& c, const std::string& model_arg) {
  RunReport rep;
  rep.command = "zpoly";
  json mj;
  const InteractionSpec spec = load_model(model_arg, mj);
  rep.inputs_digest = digest_inputs(rep.command, mj);

  const MultiAffinePoly poly = fugacity_poly(spec);
  CsvWriter csv("mask,coeff_re,coeff_im");
  for (const auto& [mask, coeff] : poly.coeffs())
    csv.row({static_cast<double>(mask), coeff.real(), coeff.imag()});
  csv.save(c.csv.empty() ? "zpoly.csv" : c.csv, rep);
  rep.metrics["nterms"] = static_cast<double>(poly.coeffs().size());
  rep.metrics["nvars"] = spec.nsites();
  return rep;
}

RunReport do_zeros(const Common& c, const std::string& model_arg) {
  RunReport rep;
  rep.command = "zeros";
  json mj;
  const InteractionSpec spec = load_model(model_arg, mj);
  rep.inputs_digest = digest_inputs(rep.command, mj);

  const std::vector<cplx> zs = roots(fugacity_poly(spec).diagonal());
  CsvWriter csv("root_re,root_im,modulus");
  double min_mod = 1e300, max_dev = 0.0;
  for (const cplx z : zs) {
    csv.row({z.real(), z.imag(), std::abs(z)});
    min_mod = std::min(min_mod, std::abs(z));
    max_dev = std::max(max_dev, std::abs(std::abs(z) - 1.0));
  }
  csv.save(c.csv.empty() ? "zeros.csv" : c.csv, rep);
  rep.metrics["nroots"] = static_cast<double>(zs.size());
  rep.metrics["min_modulus"] = min_mod;
  rep.metrics["max_circle_deviation"] = max_dev;
  return rep;
}

RunReport do_circle(const Common& c, const std::string& model_arg) {
  RunReport rep;
  rep.command = "circle";
  json mj;
  const InteractionSpec spec = load_model(model_arg, mj);
  rep.inputs_digest = digest_inputs(rep.command, mj);

  if (!spec.measure().is_spin_half())
    throw NonSpinHalf("circle: spin-1/2 measure required");
  if (!spec.is_ferromagnetic()) throw Error("circle: couplings must be real >= 0");
  for (const auto& cp : spec.couplings())
    if (cp.sites.count() != 2)
      throw Error("circle: pair interactions only (the circle theorem scope)");

  double max_dev = 0.0;
  for (const cplx z : roots(fugacity_poly(spec).diagonal()))
    max_dev = std::max(max_dev, std::abs(std::abs(z) - 1.0));
  rep.metrics["max_circle_deviation"] = max_dev;
  const double tol = c.tol_or(1e-8);
  if (max_dev > tol) rep.fail("circle_deviation_le_tol", max_dev);
  return rep;
}

RunReport do_certify([[maybe_unused]] const Common& c, const std::string& model_arg,
                     double j0_flag, const std::string& cert_out) {
  RunReport rep;
  rep.command = "certify";
  json mj;
  const InteractionSpec spec = load_model(model_arg, mj);
  mj["j0"] = j0_flag;
  rep.inputs_digest = digest_inputs(rep.command, mj);

  const std::vector<double> j0 = resolve_j0(spec, j0_flag);
  const auto [poly, cert] = contract_model(spec, j0);
  const MultiAffinePoly reference = fugacity_poly(spec);
  const double diff = max_coeff_diff(poly, reference);
  const double scale = std::max(1.0, [&] {
    double m = 0.0;
    for (const auto& [k, v] : reference.coeffs()) m = std::max(m, std::abs(v));
    return m;
  }());
  rep.metrics["contraction_max_diff"] = diff;
  if (diff > 1e-12 * scale)
    rep.fail("contraction_equals_enumeration", diff);

  const AnalyticityRegion region = certify_region(spec, j0);
  const FamilyStats fs = family_stats(spec, j0);
  rep.metrics["h_radius"] = region.h_radius;
  rep.metrics["q"] = fs.q;
  rep.metrics["i0"] = fs.i0;
  rep.metrics["v"] = fs.v;
  rep.metrics["min_radius"] = cert.min_radius();

  const std::string path = cert_out.empty() ? "certificate.json" : cert_out;
  write_file(path, certificate_to_json(cert, region.h_radius).dump(2) + "\n");
  rep.artifacts.push_back(path);
  return rep;
}

RunReport do_audit(const Common& c, const std::string& model_arg, double j0_flag,
                   int samples, double inflate) {
  RunReport rep;
  rep.command = "audit";
  json mj;
  const InteractionSpec spec = load_model(model_arg, mj);
  mj["j0"] = j0_flag;
  mj["inflate"] = inflate;
  rep.inputs_digest = digest_inputs(rep.command, mj);

  auto [poly, cert] = contract_model(spec, resolve_j0(spec, j0_flag));
  for (double& r : cert.radii) r *= inflate;
  const AuditReport audit = audit_certificate(spec, cert, samples, c.seed);
  rep.metrics["min_root_modulus"] = audit.min_root_modulus;
  rep.metrics["min_radius"] = audit.min_radius;
  rep.metrics["min_rel_inside"] = audit.min_rel_inside;
  rep.metrics["samples"] = samples;
  if (!audit.pass)
    rep.fail("no_zero_inside_certified_polydisc",
             std::min(audit.min_root_modulus - audit.min_radius,
                      audit.min_rel_inside));
  return rep;
}

RunReport do_pncheck(const Common& c, const std::string& measure_arg) {
  RunReport rep;
  rep.command = "pncheck";
  const json mj = load_json_arg(measure_arg);
  rep.inputs_digest = digest_inputs(rep.command, mj);

  const DiscreteEvenMeasure mu = measure_from_json(mj);
  const PNVerdict v = pn_check(mu, c.tol_or(1e-8));
  rep.metrics["is_pn"] = v.is_pn ? 1.0 : 0.0;
  rep.metrics["max_circle_deviation"] = v.max_circle_deviation;
  if (v.witness) {
    rep.metrics["witness_re"] = v.witness->real();
    rep.metrics["witness_im"] = v.witness->imag();
  }
  return rep;
}

RunReport do_correlate(const Common& c, const std::string& model_arg,
                       const std::string& sites_arg, const std::string& h_arg,
                       const std::string& grid_arg,
                       const std::string& volumes_arg) {
  RunReport rep;
  rep.command = "correlate";
  json mj;
  const InteractionSpec spec = load_model(model_arg, mj);
  json inputs = mj;
  inputs["sites"] = sites_arg;
  inputs["h"] = h_arg;
  inputs["grid"] = grid_arg;
  inputs["volumes"] = volumes_arg;
  rep.inputs_digest = digest_inputs(rep.command, inputs);

  const std::vector<int> sites = parse_int_list(sites_arg);
  const cplx h0 = h_arg.empty() ? field_from_json(mj) : parse_complex(h_arg);

  if (!volumes_arg.empty()) {
    // Volume sequence: rebuild uniform nearest-neighbor models per size and
    // report successive differences of the correlation (Cauchy surrogate).
    const auto j = uniform_nn_strength(spec);
    if (!j) throw Error("correlate --volumes: model must be uniform nearest-neighbor 1D");
    const bool periodic = spec.geometry()->periodic;
    CsvWriter csv("volume,abs_f,re_f,im_f,diff_prev");
    cplx prev;
    double last_diff = kNan;
    bool monotone = true;
    bool first = true;
    double prev_diff = 1e300;
    for (const int n : parse_int_list(volumes_arg)) {
      const InteractionSpec vol = periodic
                                      ? make_ring(n, *j, spec.measure())
                                      : make_chain(n, *j, spec.measure());
      const auto req = CorrelationRequest::uniform_field(vol, sites, h0);
      const cplx f = correlation(req, c.threads).value;
      double diff = kNan;
      if (!first) {
        diff = std::abs(f - prev);
        if (diff > prev_diff) monotone = false;
        prev_diff = diff;
        last_diff = diff;
      }
      csv.row({static_cast<double>(n), std::abs(f), f.real(), f.imag(), diff});
      prev = f;
      first = false;
    }
    csv.save(c.csv.empty() ? "correlate.csv" : c.csv, rep);
    rep.metrics["last_diff"] = last_diff;
    rep.metrics["monotone"] = monotone ? 1.0 : 0.0;
    const double tol = c.tol_or(1e-3);
    if (!monotone) rep.fail("volume_differences_monotone", 0.0);
    if (!(last_diff <= tol)) rep.fail("last_volume_difference_le_tol", last_diff);
    return rep;
  }

  const std::vector<cplx> grid =
      grid_arg.empty() ? std::vector<cplx>{h0} : parse_grid(grid_arg);
  CsvWriter csv("h_re,h_im,abs_f,re_f,im_f,lower,upper,ratio_re_min");
  double min_ratio = 1e300, min_lower_margin = 1e300, min_upper_margin = 1e300;
  bool bounds_seen = false;
  for (const cplx h : grid) {
    const auto req = CorrelationRequest::uniform_field(spec, sites, h);
    const CorrelationValue cv = correlation(req, c.threads);
    double ratio_min = kNan;
    if (h.real() > 0.0) {
      ratio_min =
          newman_ratio_check(spec, sites, {h}, false, c.threads).min_ratio_re;
      min_ratio = std::min(min_ratio, ratio_min);
    }
    double lower = kNan, upper = kNan;
    if (cv.has_bounds) {
      lower = cv.lower;
      upper = cv.upper;
      bounds_seen = true;
      min_lower_margin = std::min(min_lower_margin, std::abs(cv.value) - lower);
      min_upper_margin = std::min(min_upper_margin, upper - std::abs(cv.value));
    }
    csv.row({h.real(), h.imag(), std::abs(cv.value), cv.value.real(),
             cv.value.imag(), lower, upper, ratio_min});
  }
  csv.save(c.csv.empty() ? "correlate.csv" : c.csv, rep);
  const double tol = c.tol_or(1e-10);
  if (min_ratio < 1e300) {
    rep.metrics["min_ratio_re"] = min_ratio;
    if (min_ratio <= 0.0) rep.fail("newman_ratio_re_positive", min_ratio);
  }
  if (bounds_seen) {
    rep.metrics["min_lower_margin"] = min_lower_margin;
    rep.metrics["min_upper_margin"] = min_upper_margin;
    if (min_lower_margin < -tol) rep.fail("sandwich_lower_bound", min_lower_margin);
    if (min_upper_margin < -tol) rep.fail("sandwich_upper_bound", min_upper_margin);
  }
  return rep;
}

RunReport do_newman(const Common& c, const std::string& model_arg,
                    const std::string& sites_arg, const std::string& grid_arg,
                    bool all_orders) {
  RunReport rep;
  rep.command = "newman";
  json mj;
  const InteractionSpec spec = load_model(model_arg, mj);
  json inputs = mj;
  inputs["sites"] = sites_arg;
  inputs["grid"] = grid_arg;
  rep.inputs_digest = digest_inputs(rep.command, inputs);

  const PNVerdict pn = pn_check(spec.measure());
  if (!pn.is_pn) throw Error("newman: measure is not PN");
  if (!spec.is_ferromagnetic()) throw Error("newman: couplings must be real >= 0");

  const std::vector<cplx> grid =
      grid_arg.empty() ? field_grid(0.0, 2.0, 5, -2.0, 2.0, 5) : parse_grid(grid_arg);
  const NewmanReport nr = newman_ratio_check(spec, parse_int_list(sites_arg),
                                             grid, all_orders, c.threads);
  rep.metrics["min_ratio_re"] = nr.min_ratio_re;
  rep.metrics["checks"] = nr.checks;
  rep.metrics["worst_h_re"] = nr.worst_h.real();
  rep.metrics["worst_h_im"] = nr.worst_h.imag();
  if (!nr.pass) rep.fail("newman_ratio_re_positive", nr.min_ratio_re);
  return rep;
}

RunReport do_sandwich(const Common& c, const std::string& model_arg,
                      const std::string& sites_arg, const std::string& grid_arg) {
  RunReport rep;
  rep.command = "sandwich";
  json mj;
  const InteractionSpec spec = load_model(model_arg, mj);
  json inputs = mj;
  inputs["sites"] = sites_arg;
  inputs["grid"] = grid_arg;
  rep.inputs_digest = digest_inputs(rep.command, inputs);

  const std::vector<cplx> grid =
      grid_arg.empty() ? field_grid(0.0, 2.0, 5, -2.0, 2.0, 5) : parse_grid(grid_arg);
  const SandwichReport sr = sandwich_check(spec, parse_int_list(sites_arg), grid,
                                           c.tol_or(1e-10), c.threads);
  rep.metrics["min_lower_margin"] = sr.min_lower_margin;
  rep.metrics["min_upper_margin"] = sr.min_upper_margin;
  rep.metrics["chain_value"] = sr.chain_value;
  rep.metrics["chain_product"] = sr.chain_product;
  rep.metrics["chain_ln"] = sr.chain_ln;
  if (!sr.pass) {
    if (sr.min_lower_margin < 0.0) rep.fail("sandwich_lower_bound", sr.min_lower_margin);
    if (sr.min_upper_margin < 0.0) rep.fail("sandwich_upper_bound", sr.min_upper_margin);
    if (!sr.chain_ok) rep.fail("gks_chain_at_h1", sr.chain_value - sr.chain_product);
  }
  return rep;
}

RunReport do_ursell(const Common& c, const std::string& model_arg,
                    const std::string& obs_arg, const std::string& h_arg,
                    bool fd_check) {
  RunReport rep;
  rep.command = "ursell";
  json mj;
  const InteractionSpec spec = load_model(model_arg, mj);
  json inputs = mj;
  inputs["observables"] = obs_arg;
  inputs["h"] = h_arg;
  rep.inputs_digest = digest_inputs(rep.command, inputs);

  UrsellRequest req;
  req.spec = &spec;
  for (const VarSet& v : parse_observables(obs_arg)) req.observables.push_back({v});
  req.h = h_arg.empty() ? field_from_json(mj) : parse_complex(h_arg);

  const cplx u = ursell(req, c.threads);
  rep.metrics["u_re"] = u.real();
  rep.metrics["u_im"] = u.imag();
  rep.metrics["abs_u"] = std::abs(u);
  if (fd_check) {
    const cplx fd = ursell_fd(req);
    const double rel = std::abs(u - fd) / std::max(1e-30, std::abs(fd));
    rep.metrics["fd_rel_err"] = rel;
    if (rel > c.tol_or(1e-5)) rep.fail("ursell_partition_formula_vs_fd", rel);
  }
  return rep;
}

RunReport do_massgap(const Common& c, const std::string& model_arg,
                     const std::string& h_arg, const std::string& window_arg,
                     const std::string& volumes_arg) {
  RunReport rep;
  rep.command = "massgap";
  json mj;
  const InteractionSpec spec = load_model(model_arg, mj);
  json inputs = mj;
  inputs["h"] = h_arg;
  inputs["window"] = window_arg;
  inputs["volumes"] = volumes_arg;
  rep.inputs_digest = digest_inputs(rep.command, inputs);

  const cplx h = h_arg.empty() ? field_from_json(mj) : parse_complex(h_arg);

  std::vector<InteractionSpec> family;
  if (!volumes_arg.empty()) {
    const auto j = uniform_nn_strength(spec);
    if (!j) throw Error("massgap --volumes: model must be uniform nearest-neighbor 1D");
    for (const int n : parse_int_list(volumes_arg))
      family.push_back(spec.geometry()->periodic
                           ? make_ring(n, *j, spec.measure())
                           : make_chain(n, *j, spec.measure()));
  } else {
    family.push_back(spec);
  }

  bool all_pass = true;
  std::vector<MassGapEstimate> fits;
  for (const InteractionSpec& member : family) {
    int lo = 2, hi = member.nsites() / 2 - 1;
    if (!window_arg.empty() &&
        std::sscanf(window_arg.c_str(), "%d:%d", &lo, &hi) != 2)
      throw Error("bad window spec (want lo:hi): " + window_arg);
    fits.push_back(mass_gap_fit(member, h, lo, hi, c.threads));
    all_pass = all_pass && fits.back().pass;
    const std::string suffix =
        family.size() > 1 ? "_n" + std::to_string(member.nsites()) : "";
    rep.metrics["m_fit" + suffix] = fits.back().m_fit;
    if (fits.back().m_oracle)
      rep.metrics["m_oracle" + suffix] = *fits.back().m_oracle;
  }

  const MassGapEstimate& last = fits.back();
  CsvWriter csv("distance,log_truncated,fit_slope,oracle");
  for (std::size_t i = 0; i < last.distances.size(); ++i)
    csv.row({static_cast<double>(last.distances[i]), last.log_truncated[i],
             last.m_fit, last.m_oracle ? *last.m_oracle : kNan});
  csv.save(c.csv.empty() ? "massgap.csv" : c.csv, rep);

  rep.metrics["infinite_gap"] = last.infinite_gap ? 1.0 : 0.0;
  if (!all_pass)
    rep.fail("mass_gap_positive_and_near_oracle", last.m_fit);
  return rep;
}

RunReport do_gausslucas(const Common& c, const std::string& model_arg,
                        const std::string& poly_arg, int samples) {
  RunReport rep;
  rep.command = "gausslucas";
  UniPoly p;
  json inputs;
  if (!poly_arg.empty()) {
    p = parse_poly(poly_arg);
    inputs["poly"] = poly_arg;
  } else if (!model_arg.empty()) {
    json mj;
    const InteractionSpec spec = load_model(model_arg, mj);
    inputs = mj;
    // Move the fugacity roots (on/inside the unit circle for ferromagnets)
    // to the closed left half plane, where the strong statement applies.
    p = disk_to_halfplane(fugacity_poly(spec).diagonal());
  } else {
    throw Error("gausslucas: need --model or --poly");
  }
  rep.inputs_digest = digest_inputs(rep.command, inputs);
  if (p.degree() < 2) throw Error("gausslucas: polynomial degree must be >= 2");

  double max_hull = 0.0, max_recon = 0.0;
  for (const GLWitness& w : gauss_lucas_check(p)) {
    max_hull = std::max(max_hull, w.hull_distance);
    max_recon = std::max(max_recon, w.recon_error);
  }
  rep.metrics["max_hull_distance"] = max_hull;
  rep.metrics["max_witness_error"] = max_recon;
  const double tol = c.tol_or(1e-9);
  if (max_hull > tol) rep.fail("critical_points_in_root_hull", max_hull);
  if (max_recon > 1e-8) rep.fail("witness_reconstruction", max_recon);

  try {
    const SamplingReport sg = strong_gl_check(p, samples, c.seed);
    rep.metrics["strong_gl_min_re"] = sg.min_value;
    rep.metrics["strong_gl_applicable"] = 1.0;
    if (!sg.pass) rep.fail("strong_gl_re_positive", sg.min_value);
  } catch (const NotHalfPlaneFree&) {
    rep.metrics["strong_gl_applicable"] = 0.0;
  }
  return rep;
}

RunReport do_bounds(const Common& c, const std::string& h_arg, int samples) {
  RunReport rep;
  rep.command = "bounds";
  json inputs{{"h", h_arg}, {"samples", samples}};
  rep.inputs_digest = digest_inputs(rep.command, inputs);

  const cplx h = h_arg.empty() ? cplx{1.0, 0.5} : parse_complex(h_arg);
  if (h.real() <= 0.0) throw NotInRightHalfPlane("bounds: Re h must be positive");
  const cplx z = cayley(h);
  rep.metrics["alpha"] = alpha(h);
  rep.metrics["cayley_abs"] = std::abs(z);
  rep.metrics["caratheodory_at_z"] = caratheodory_bound(1.0, z);

  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  // Herglotz-type functions: positive combinations of disk kernels. Each has
  // Re G > 0 on the disk and real G(0), so the alpha(h) sandwich must hold.
  double worst_sandwich = 1e300;
  for (int i = 0; i < samples; ++i) {
    const int terms = 1 + static_cast<int>(u01(rng) * 4);
    std::vector<double> cs(terms), ths(terms);
    double g0 = 0.0;
    for (int t = 0; t < terms; ++t) {
      cs[t] = 0.1 + u01(rng);
      ths[t] = 2.0 * 3.14159265358979323846 * u01(rng);
      g0 += cs[t];
    }
    const cplx hh(0.05 + 3.0 * u01(rng), 6.0 * (u01(rng) - 0.5));
    const cplx zz = cayley(hh);
    cplx g = 0.0;
    for (int t = 0; t < terms; ++t) {
      const cplx e = std::polar(1.0, ths[t]);
      g += cs[t] * (e + zz) / (e - zz);
    }
    const double a = alpha(hh);
    worst_sandwich = std::min(
        {worst_sandwich, std::abs(g) - g0 / a, a * g0 - std::abs(g)});
  }
  rep.metrics["herglotz_sandwich_min_margin"] = worst_sandwich;
  if (worst_sandwich < -1e-12) rep.fail("alpha_sandwich", worst_sandwich);

  // Borel-Caratheodory on random polynomials: the bound from max Re on the
  // unit circle dominates the sampled max modulus on |z| <= r.
  double worst_bc = 1e300;
  for (int i = 0; i < std::max(1, samples / 4); ++i) {
    std::vector<cplx> coeffs(1 + static_cast<int>(u01(rng) * 6));
    for (auto& cc : coeffs) cc = cplx(2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0);
    const UniPoly f(std::move(coeffs));
    if (f.is_zero()) continue;
    double max_re = -1e300;
    for (int k = 0; k < 512; ++k)
      max_re = std::max(
          max_re, f.eval(std::polar(1.0, 2.0 * 3.14159265358979323846 * k / 512))
                      .real());
    const double r = 0.2 + 0.6 * u01(rng);
    const double bound = borel_caratheodory_bound(max_re, f.eval(0.0), r);
    for (int k = 0; k < 256; ++k) {
      const cplx zz = std::polar(r * std::sqrt(u01(rng)),
                                 2.0 * 3.14159265358979323846 * u01(rng));
      worst_bc = std::min(worst_bc, bound - std::abs(f.eval(zz)));
    }
  }
  rep.metrics["borel_caratheodory_min_margin"] = worst_bc;
  if (worst_bc < -1e-12) rep.fail("borel_caratheodory_bound", worst_bc);

  return rep;
}

void emit(const RunReport& rep, const Common& c) {
  const std::string text = rep.to_json().dump(2) + "\n";
  if (c.out.empty())
    std::cout << text;
  else
    write_file(c.out, text);
}

}  // namespace

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("leeyang");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

int run(int argc, const char* const* argv) {
  CLI::App app{
      "Exact finite-volume spin models as fugacity polynomials: zero-free "
      "certificates, correlation inequalities, and decay-rate checks."};
  app.require_subcommand(1);
  // the short -h is freed up for the field option --h
  app.set_help_flag("--help", "Print this help message and exit");

  Common c;
  std::string model, measure, sites = "0", h, grid, volumes, observables, poly,
                              window, cert_out;
  double j0 = -1.0, inflate = 1.0;
  int samples = 256;
  bool all_orders = false, fd_check = false;

  const auto subcommand = [&app](const char* name, const char* desc) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->set_help_flag("--help", "Print this help message and exit");
    return s;
  };

  auto* zpoly = subcommand(
      "zpoly", "Emit the fugacity polynomial (CSV: mask,coeff_re,coeff_im)");
  zpoly->add_option("--model", model, "Model JSON (path or inline)")->required();
  add_common(zpoly, c);

  auto* zeros = subcommand(
      "zeros",
      "Roots of the diagonal fugacity polynomial (CSV: root_re,root_im,modulus)");
  zeros->add_option("--model", model)->required();
  add_common(zeros, c);

  auto* circle = subcommand(
      "circle", "Check all fugacity zeros sit on the unit circle (pair ferromagnets)");
  circle->add_option("--model", model)->required();
  add_common(circle, c);

  auto* certify = subcommand(
      "certify", "Asano-contracted zero-free certificate + analyticity region");
  certify->add_option("--model", model)->required();
  certify->add_option("--j0", j0, "Coupling bound J0 (default: per-coupling |J|)");
  certify->add_option("--cert-out", cert_out, "Certificate JSON path");
  add_common(certify, c);

  auto* audit = subcommand("audit", "Numerically falsify a certificate");
  audit->add_option("--model", model)->required();
  audit->add_option("--j0", j0);
  audit->add_option("--samples", samples, "Interior sample count");
  audit->add_option("--inflate", inflate, "Multiply radii (falsification aid)");
  add_common(audit, c);

  auto* pncheck = subcommand("pncheck", "Classify a measure as PN or not");
  pncheck->add_option("--measure", measure, "Measure JSON (path or inline)")->required();
  add_common(pncheck, c);

  auto* correlate = subcommand(
      "correlate",
      "Correlation values with bounds (CSV: h_re,h_im,abs_f,re_f,im_f,lower,"
      "upper,ratio_re_min; with --volumes: volume,abs_f,re_f,im_f,diff_prev)");
  correlate->add_option("--model", model)->required();
  correlate->add_option("--sites", sites, "Comma-separated site list");
  correlate->add_option("--h", h, "Field re[,im] (default: model field)");
  correlate->add_option("--grid", grid, "relo:rehi:nre,imlo:imhi:nim");
  correlate->add_option("--volumes", volumes, "Ring sizes for a Cauchy sequence");
  add_common(correlate, c);

  auto* newman = subcommand("newman", "Prefix correlation ratios have Re > 0");
  newman->add_option("--model", model)->required();
  newman->add_option("--sites", sites);
  newman->add_option("--grid", grid);
  newman->add_flag("--all-orders", all_orders, "Check every site permutation (n <= 5)");
  add_common(newman, c);

  auto* sandwich = subcommand("sandwich", "alpha(h) sandwich bounds + h=1 chain");
  sandwich->add_option("--model", model)->required();
  sandwich->add_option("--sites", sites);
  sandwich->add_option("--grid", grid);
  add_common(sandwich, c);

  auto* ursellc = subcommand("ursell", "Ursell function of product observables");
  ursellc->add_option("--model", model)->required();
  ursellc->add_option("--observables", observables, "e.g. \"0,1;1,2;3\"")->required();
  ursellc->add_option("--h", h);
  ursellc->add_flag("--fd-check", fd_check, "Cross-check against log-Z finite differences");
  add_common(ursellc, c);

  auto* massgap = subcommand(
      "massgap",
      "Truncated two-point decay rate (CSV: distance,log_truncated,fit_slope,"
      "oracle)");
  massgap->add_option("--model", model)->required();
  massgap->add_option("--h", h);
  massgap->add_option("--window", window, "Distance window lo:hi");
  massgap->add_option("--volumes", volumes);
  add_common(massgap, c);

  auto* gausslucas = subcommand(
      "gausslucas", "Gauss-Lucas hull + strong log-derivative check");
  gausslucas->add_option("--model", model);
  gausslucas->add_option("--poly", poly, "Coefficients re[:im],... ascending");
  gausslucas->add_option("--samples", samples);
  add_common(gausslucas, c);

  auto* bounds = subcommand("bounds", "Growth-bound formulas + verification");
  bounds->add_option("--h", h);
  bounds->add_option("--samples", samples);
  add_common(bounds, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunReport rep;
  try {
    if (zpoly->parsed()) rep = do_zpoly(c, model);
    else if (zeros->parsed()) rep = do_zeros(c, model);
    else if (circle->parsed()) rep = do_circle(c, model);
    else if (certify->parsed()) rep = do_certify(c, model, j0, cert_out);
    else if (audit->parsed()) rep = do_audit(c, model, j0, samples, inflate);
    else if (pncheck->parsed()) rep = do_pncheck(c, measure);
    else if (correlate->parsed()) rep = do_correlate(c, model, sites, h, grid, volumes);
    else if (newman->parsed()) rep = do_newman(c, model, sites, grid, all_orders);
    else if (sandwich->parsed()) rep = do_sandwich(c, model, sites, grid);
    else if (ursellc->parsed()) rep = do_ursell(c, model, observables, h, fd_check);
    else if (massgap->parsed()) rep = do_massgap(c, model, h, window, volumes);
    else if (gausslucas->parsed()) rep = do_gausslucas(c, model, poly, samples);
    else if (bounds->parsed()) rep = do_bounds(c, h, samples);
  } catch (const std::exception& e) {
    rep.command = app.get_subcommands().empty()
                      ? "unknown"
                      : app.get_subcommands().front()->get_name();
    rep.error(e.what());
  }
  emit(rep, c);
  return rep.exit_code();
}

}  // namespace leeyang::cli
