#include "leeyang/asano.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "leeyang/analysis.hpp"

namespace leeyang {

double ZeroFreeCertificate::min_radius() const {
  double m = 1e300;
  for (double r : radii) m = std::min(m, r);
  return radii.empty() ? 0.0 : m;
}

double factor_radius(int a_size, double j0) {
  if (j0 < 0.0) throw Error("factor_radius: J0 must be >= 0");
  return 1.0 / (std::pow(2.0, a_size) * std::exp(2.0 * j0));
}

double factor_radius(VarSet a, double j0) { return factor_radius(a.count(), j0); }

std::pair<MultiAffinePoly, ZeroFreeCertificate> contract_model(
    const InteractionSpec& spec, std::span<const double> j0) {
  if (!spec.measure().is_spin_half())
    throw NonSpinHalf("contract_model: spin-1/2 measure required");
  if (spec.nsites() > 20) throw TooManySites("contract_model: more than 20 sites");
  if (j0.size() != spec.couplings().size())
    throw LengthMismatch("contract_model: j0 length != number of couplings");

  const int n = spec.nsites();
  int max_arity = 1;
  for (const auto& c : spec.couplings())
    max_arity = std::max(max_arity, c.sites.count());
  const int nvars = n + max_arity;  // scratch slots for factor copies
  if (nvars > MultiAffinePoly::kMaxVars)
    throw Error("contract_model: too many variables for the copy workspace");

  ZeroFreeCertificate cert;
  cert.radii.assign(n, 1.0);

  MultiAffinePoly acc = MultiAffinePoly::constant(nvars, 1.0);
  std::vector<bool> used(n, false);

  // Couplings are already sorted by canonical site mask; the loop order fixes
  // both the step log and the (order-independent) final polynomial.
  for (std::size_t ci = 0; ci < spec.couplings().size(); ++ci) {
    const auto& c = spec.couplings()[ci];
    const double r = factor_radius(c.sites, j0[ci]);

    // Map each site of the factor to its own variable if unused, else a copy
    // slot to contract afterwards.
    const std::vector<int> sites = c.sites.indices();
    std::vector<int> slot(sites.size());
    std::vector<int> merged;
    int next_scratch = n;
    for (std::size_t i = 0; i < sites.size(); ++i) {
      if (used[sites[i]]) {
        slot[i] = next_scratch++;
        merged.push_back(sites[i]);
      } else {
        slot[i] = sites[i];
      }
    }
    VarSet factor_vars;
    for (int s : slot) factor_vars = factor_vars | VarSet::single(s);

    MultiAffinePoly factor = r_a_factor(factor_vars, c.strength, nvars);
    acc = mul(acc, factor);
    for (std::size_t i = 0; i < sites.size(); ++i)
      if (slot[i] >= n) acc = contract(acc, sites[i], slot[i]);

    for (std::size_t i = 0; i < sites.size(); ++i) {
      used[sites[i]] = true;
      cert.radii[sites[i]] *= r;
    }
    cert.steps.push_back({sites, r, merged});
  }

  // Sites in no coupling contribute a free (1 + z_k) factor, nonzero on the
  // open unit disk.
  for (int k = 0; k < n; ++k) {
    if (used[k]) continue;
    MultiAffinePoly free_site(nvars);
    free_site.set_coeff(VarSet{}, 1.0);
    free_site.set_coeff(VarSet::single(k), 1.0);
    acc = mul(acc, free_site);
    cert.steps.push_back({{k}, 1.0, {}});
  }

  // Restrict back to the n site variables (scratch slots are all unused now).
  std::map<std::uint64_t, cplx> coeffs;
  for (const auto& [key, v] : acc.coeffs()) coeffs[key] = v;
  return {MultiAffinePoly(n, std::move(coeffs)), std::move(cert)};
}

std::pair<MultiAffinePoly, ZeroFreeCertificate> contract_model(
    const InteractionSpec& spec, double j0_all) {
  std::vector<double> j0(spec.couplings().size(), j0_all);
  return contract_model(spec, j0);
}

AnalyticityRegion certify_region(const InteractionSpec& spec,
                                 std::span<const double> j0) {
  const FamilyStats fs = family_stats(spec, j0);
  AnalyticityRegion region;
  region.h_radius = fs.r0;
  region.coupling_box.assign(j0.begin(), j0.end());
  return region;
}

AnalyticityRegion certify_region(const InteractionSpec& spec, double j0_all) {
  std::vector<double> j0(spec.couplings().size(), j0_all);
  return certify_region(spec, j0);
}

namespace {

// Eigenvalue estimates of a k-fold root smear over a radius ~eps^(1/k).
// Snap each cluster of computed roots to the nearby root of the (k-1)-th
// derivative, accepting the snap only when the derivative residuals confirm
// a genuine k-fold root there. Distinct-but-close roots fail the residual
// test and are kept as computed.
std::vector<cplx> refine_multiple_roots(const UniPoly& p, std::vector<cplx> rs) {
  const int n = static_cast<int>(rs.size());
  std::vector<bool> done(n, false);
  for (int i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::vector<int> cluster{i};
    const double tol = 1e-2 * std::max(1.0, std::abs(rs[i]));
    for (int j = i + 1; j < n; ++j)
      if (!done[j] && std::abs(rs[j] - rs[i]) <= tol) cluster.push_back(j);
    const int k = static_cast<int>(cluster.size());
    if (k < 2) continue;

    cplx centroid = 0.0;
    for (const int j : cluster) centroid += rs[j];
    centroid /= static_cast<double>(k);

    UniPoly d = p;
    for (int m = 0; m < k - 1; ++m) d = d.derivative();
    const UniPoly dd = d.derivative();
    cplx z = centroid;
    for (int it = 0; it < 8; ++it) {
      const cplx dv = dd.eval(z);
      if (std::abs(dv) < 1e-300) break;
      z -= d.eval(z) / dv;
    }

    bool confirmed = true;
    UniPoly pj = p;
    for (int j = 0; j < k; ++j) {
      const double scale = pj.coeff_scale() *
                           std::pow(std::max(1.0, std::abs(z)), pj.degree());
      if (std::abs(pj.eval(z)) > 1e-8 * scale) {
        confirmed = false;
        break;
      }
      pj = pj.derivative();
    }
    if (confirmed)
      for (const int j : cluster) {
        rs[j] = z;
        done[j] = true;
      }
  }
  return rs;
}

}  // namespace

AuditReport audit_certificate(const InteractionSpec& spec,
                              const ZeroFreeCertificate& cert, int samples,
                              std::uint64_t seed) {
  if (spec.nsites() > 14) throw TooManySites("audit_certificate: more than 14 sites");
  const MultiAffinePoly poly = fugacity_poly(spec);

  AuditReport rep;
  rep.samples = samples;
  rep.min_radius = cert.min_radius();

  rep.min_root_modulus = 1e300;
  const UniPoly diag = poly.diagonal();
  for (const cplx z : refine_multiple_roots(diag, roots(diag)))
    rep.min_root_modulus = std::min(rep.min_root_modulus, std::abs(z));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const int n = spec.nsites();
  rep.min_abs_inside = 1e300;
  rep.min_rel_inside = 1e300;
  std::vector<cplx> z(n);
  for (int s = 0; s < samples; ++s) {
    for (int k = 0; k < n; ++k)
      z[k] = std::polar(cert.radii[k] * (1.0 - 1e-12) * std::sqrt(u01(rng)),
                        2.0 * 3.14159265358979323846 * u01(rng));
    const cplx val = poly.eval(z);
    double scale = 0.0;
    for (const auto& [key, c] : poly.coeffs()) {
      double t = std::abs(c);
      for (std::uint64_t b = key; b;) {
        t *= std::abs(z[__builtin_ctzll(b)]);
        b &= b - 1;
      }
      scale += t;
    }
    rep.min_abs_inside = std::min(rep.min_abs_inside, std::abs(val));
    rep.min_rel_inside = std::min(rep.min_rel_inside, std::abs(val) / scale);
  }

  rep.pass = rep.min_root_modulus >= rep.min_radius - 1e-9 &&
             rep.min_rel_inside > 1e-12;
  return rep;
}

double epsilon_rho_search(int b_size, double rho, double tol) {
  if (!(rho > 0.0 && rho < 1.0)) throw Error("epsilon_rho_search: need 0 < rho < 1");
  if (b_size < 2) throw Error("epsilon_rho_search: |B| must be >= 2");
  if (tol <= 0.0) throw Error("epsilon_rho_search: tol must be positive");

  const VarSet b(((std::uint64_t{1} << b_size) - 1));
  const auto all_roots_outside = [&](double eps) {
    for (int i = 0; i < 16; ++i) {
      const double theta = 2.0 * 3.14159265358979323846 * i / 16;
      const UniPoly diag = r_a_factor(b, std::polar(eps, theta), b_size).diagonal();
      for (const cplx z : roots(diag))
        if (std::abs(z) < rho) return false;
    }
    return true;
  };

  if (!all_roots_outside(0.0)) return 0.0;  // cannot happen: roots sit at -1
  double lo = 0.0, hi = std::max(tol, 0.05);
  while (all_roots_outside(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 64.0) return lo;  // effectively unconstrained
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (all_roots_outside(mid) ? lo : hi) = mid;
  }
  return lo;
}

double epsilon_rho_search(VarSet b, double rho, double tol) {
  return epsilon_rho_search(b.count(), rho, tol);
}

}  // namespace leeyang
