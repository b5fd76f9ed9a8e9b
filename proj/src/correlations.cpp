#include "leeyang/correlations.hpp"

#include <algorithm>
#include <cmath>

namespace leeyang {

namespace {

// Z and the numerators for a list of site multisets, with the vanishing guard.
EnumSums guarded_sums(const InteractionSpec& spec, std::span<const cplx> field,
                      const std::vector<std::vector<int>>& observables,
                      int nthreads) {
  EnumSums sums = enumerate_sums(spec, field, observables, nthreads);
  if (std::abs(sums.z) <= 1e-12 * sums.scale)
    throw VanishingPartition("partition function vanishes at the requested field");
  return sums;
}

}  // namespace

CorrelationRequest CorrelationRequest::uniform_field(const InteractionSpec& spec,
                                                     std::vector<int> sites, cplx h) {
  CorrelationRequest req;
  req.spec = &spec;
  req.sites = std::move(sites);
  req.field.assign(spec.nsites(), h);
  req.uniform = true;
  return req;
}

CorrelationValue correlation(const CorrelationRequest& req, int nthreads) {
  if (!req.spec || req.sites.empty()) throw Error("correlation: bad request");
  const InteractionSpec& spec = *req.spec;
  const EnumSums sums = guarded_sums(spec, req.field, {req.sites}, nthreads);

  CorrelationValue out;
  out.value = sums.obs[0] / sums.z;
  if (req.uniform && req.field[0].real() > 0.0 && spec.is_ferromagnetic()) {
    const double a = alpha(req.field[0]);
    const double l = L_constant(spec.measure());
    const double s = spec.measure().support_max();
    const int n = static_cast<int>(req.sites.size());
    out.lower = std::pow(a, -n) * std::pow(l, n);
    out.upper = std::pow(a, n) * std::pow(s, n);
    out.has_bounds = true;
  }
  return out;
}

NewmanReport newman_ratio_check(const InteractionSpec& spec,
                                const std::vector<int>& sites,
                                const std::vector<cplx>& h_samples,
                                bool all_orders, int nthreads) {
  if (sites.empty()) throw Error("newman_ratio_check: no sites");
  std::vector<std::vector<int>> orders{sites};
  if (all_orders && sites.size() <= 5) {
    std::vector<int> perm = sites;
    std::sort(perm.begin(), perm.end());
    do {
      orders.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  NewmanReport rep;
  rep.min_ratio_re = 1e300;
  for (const cplx h : h_samples) {
    if (h.real() <= 0.0) throw NotInRightHalfPlane("newman_ratio_check: Re h <= 0");
    std::vector<cplx> field(spec.nsites(), h);
    for (const auto& order : orders) {
      std::vector<std::vector<int>> prefixes;
      for (std::size_t m = 1; m <= order.size(); ++m)
        prefixes.emplace_back(order.begin(), order.begin() + m);
      const EnumSums sums = guarded_sums(spec, field, prefixes, nthreads);
      cplx prev = sums.z;
      for (std::size_t m = 0; m < prefixes.size(); ++m) {
        const cplx ratio = sums.obs[m] / prev;
        ++rep.checks;
        if (ratio.real() < rep.min_ratio_re) {
          rep.min_ratio_re = ratio.real();
          rep.worst_h = h;
          rep.worst_prefix = static_cast<int>(m) + 1;
        }
        prev = sums.obs[m];
      }
    }
  }
  rep.pass = rep.min_ratio_re > 0.0;
  return rep;
}

DerivativeReport derivative_positivity_check(const InteractionSpec& spec,
                                             const std::vector<int>& sites,
                                             cplx h, double delta) {
  if (h.real() <= 0.0)
    throw NotInRightHalfPlane("derivative_positivity_check: Re h <= 0");
  DerivativeReport rep;
  rep.min_fd = 1e300;
  for (int j = 0; j < spec.nsites(); ++j) {
    std::vector<int> with_j = sites;
    with_j.push_back(j);
    std::vector<cplx> field(spec.nsites(), h);
    const EnumSums center = guarded_sums(spec, field, {sites, with_j}, 1);
    const cplx f = center.obs[0];
    const cplx df = center.obs[1];  // insertion of sigma_j
    const double analytic = 2.0 * std::norm(f) * (df / f).real();

    field[j] = h + delta;
    const cplx fp = enumerate_sums(spec, field, {sites}).obs[0];
    field[j] = h - delta;
    const cplx fm = enumerate_sums(spec, field, {sites}).obs[0];
    const double fd = (std::norm(fp) - std::norm(fm)) / (2.0 * delta);

    rep.min_fd = std::min(rep.min_fd, fd);
    rep.max_rel_err =
        std::max(rep.max_rel_err, std::abs(fd - analytic) / std::abs(analytic));
  }
  rep.pass = rep.min_fd > 0.0 && rep.max_rel_err <= 1e-4;
  return rep;
}

SandwichReport sandwich_check(const InteractionSpec& spec,
                              const std::vector<int>& sites,
                              const std::vector<cplx>& h_grid, double tol,
                              int nthreads) {
  SandwichReport rep;
  rep.min_lower_margin = 1e300;
  rep.min_upper_margin = 1e300;
  bool grid_ok = true;
  for (const cplx h : h_grid) {
    const auto req = CorrelationRequest::uniform_field(spec, sites, h);
    const CorrelationValue cv = correlation(req, nthreads);
    if (!cv.has_bounds) throw Error("sandwich_check: bounds unavailable at this h");
    const double af = std::abs(cv.value);
    rep.min_lower_margin = std::min(rep.min_lower_margin, af - cv.lower);
    rep.min_upper_margin = std::min(rep.min_upper_margin, cv.upper - af);
    if (af < cv.lower - tol || af > cv.upper + tol) grid_ok = false;
  }

  // h = 1 chain: f(all sites; 1) >= prod_k f(j_k; 1) >= L^n.
  const auto req1 = CorrelationRequest::uniform_field(spec, sites, 1.0);
  rep.chain_value = correlation(req1, nthreads).value.real();
  rep.chain_product = 1.0;
  for (int s : sites) {
    const auto rs = CorrelationRequest::uniform_field(spec, {s}, 1.0);
    rep.chain_product *= correlation(rs, nthreads).value.real();
  }
  rep.chain_ln = std::pow(L_constant(spec.measure()),
                          static_cast<double>(sites.size()));
  rep.chain_ok = rep.chain_value >= rep.chain_product - tol &&
                 rep.chain_product >= rep.chain_ln - tol;

  rep.pass = grid_ok && rep.chain_ok;
  return rep;
}

std::vector<cplx> field_grid(double re_lo, double re_hi, int nre, double im_lo,
                             double im_hi, int nim) {
  std::vector<cplx> grid;
  for (int i = 1; i <= nre; ++i) {
    const double re = re_lo + (re_hi - re_lo) * i / nre;  // half-open in Re
    for (int k = 0; k < nim; ++k) {
      const double im =
          nim == 1 ? im_lo : im_lo + (im_hi - im_lo) * k / (nim - 1);
      grid.emplace_back(re, im);
    }
  }
  return grid;
}

}  // namespace leeyang
