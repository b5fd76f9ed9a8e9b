#include "leeyang/ursell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace leeyang {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// All set partitions of {0..n-1} as lists of block bitmasks, via restricted
// growth strings.
void partitions_rec(int i, int n, std::vector<std::uint32_t>& blocks,
                    std::vector<std::vector<std::uint32_t>>& out) {
  if (i == n) {
    out.push_back(blocks);
    return;
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b] |= (1u << i);
    partitions_rec(i + 1, n, blocks, out);
    blocks[b] &= ~(1u << i);
  }
  blocks.push_back(1u << i);
  partitions_rec(i + 1, n, blocks, out);
  blocks.pop_back();
}

std::vector<std::vector<std::uint32_t>> set_partitions(int n) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> blocks;
  partitions_rec(0, n, blocks, out);
  return out;
}

EnumSums guarded_sums(const InteractionSpec& spec, std::span<const cplx> field,
                      const std::vector<std::vector<int>>& observables,
                      int nthreads) {
  EnumSums sums = enumerate_sums(spec, field, observables, nthreads);
  if (std::abs(sums.z) <= 1e-12 * sums.scale)
    throw VanishingPartition("partition function vanishes at the requested field");
  return sums;
}

}  // namespace

cplx ursell(const UrsellRequest& req, int nthreads) {
  if (!req.spec) throw Error("ursell: missing spec");
  const int n = static_cast<int>(req.observables.size());
  if (n < 1 || n > 10) throw Error("ursell: need 1..10 observables");

  // One enumeration pass computes the moment of every observable subset.
  std::vector<std::vector<int>> multisets;
  multisets.reserve((std::size_t{1} << n) - 1);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> sites;
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1u)
        for (int s : req.observables[i].sites.indices()) sites.push_back(s);
    multisets.push_back(std::move(sites));
  }
  std::vector<cplx> field(req.spec->nsites(), req.h);
  const EnumSums sums = guarded_sums(*req.spec, field, multisets, nthreads);

  std::vector<cplx> moment(std::size_t{1} << n);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    cplx m = sums.obs[mask - 1] / sums.z;
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1u) m *= req.observables[i].coeff;
    moment[mask] = m;
  }

  cplx u = 0.0;
  for (const auto& blocks : set_partitions(n)) {
    const int nb = static_cast<int>(blocks.size());
    cplx term = (nb % 2 ? 1.0 : -1.0) * factorial(nb - 1);
    for (std::uint32_t b : blocks) term *= moment[b];
    u += term;
  }
  return u;
}

namespace {

// log Z of the spec with each observable i entering as an extra coupling
// (or field shift, for single-site observables) of strength t[i] * coeff_i.
// Reported relative to a reference value so the principal branch is safe for
// small t.
cplx log_generating(const UrsellRequest& req, const std::vector<double>& t,
                    cplx z_ref) {
  const InteractionSpec& base = *req.spec;
  std::vector<Coupling> couplings = base.couplings();
  std::vector<cplx> field(base.nsites(), req.h);
  for (std::size_t i = 0; i < req.observables.size(); ++i) {
    const Observable& ob = req.observables[i];
    const cplx strength = t[i] * ob.coeff;
    if (ob.sites.count() == 1)
      field[ob.sites.indices()[0]] += strength;
    else
      couplings.push_back({ob.sites, strength});
  }
  const InteractionSpec spec(base.nsites(), std::move(couplings), base.measure(),
                             base.geometry());
  return std::log(partition_function(spec, field) / z_ref);
}

cplx ursell_fd_at_step(const UrsellRequest& req, double step, cplx z_ref) {
  const int n = static_cast<int>(req.observables.size());
  cplx acc = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<double> t(n);
    int sign = 1;
    for (int i = 0; i < n; ++i) {
      const bool plus = (mask >> i) & 1u;
      t[i] = plus ? step : -step;
      if (!plus) sign = -sign;
    }
    acc += static_cast<double>(sign) * log_generating(req, t, z_ref);
  }
  return acc / std::pow(2.0 * step, n);
}

}  // namespace

cplx ursell_fd(const UrsellRequest& req, double step, bool richardson) {
  if (!req.spec) throw Error("ursell_fd: missing spec");
  const int n = static_cast<int>(req.observables.size());
  if (n < 1 || n > 6) throw Error("ursell_fd: need 1..6 observables");
  const cplx z_ref =
      partition_function(*req.spec, std::vector<cplx>(req.spec->nsites(), req.h));
  const cplx d1 = ursell_fd_at_step(req, step, z_ref);
  if (!richardson) return d1;
  // two Richardson levels: O(step^6) truncation
  const cplx d2 = ursell_fd_at_step(req, step / 2.0, z_ref);
  const cplx d3 = ursell_fd_at_step(req, step / 4.0, z_ref);
  const cplx r1 = (4.0 * d2 - d1) / 3.0;
  const cplx r2 = (4.0 * d3 - d2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

PercusReport percus_check(const DiscreteEvenMeasure& mu,
                          const std::vector<VarSet>& a_sets, int p, int l,
                          double r, cplx h, double tol) {
  int max_site = std::max(p, l);
  for (const VarSet& a : a_sets) {
    const std::vector<int> idx = a.indices();
    if (idx.empty()) throw Error("percus_check: empty observable set");
    max_site = std::max(max_site, idx.back());
    if (idx.back() - idx.front() > r)
      throw RangeViolation("percus_check: observable diameter exceeds R");
  }

  const InteractionSpec spec(max_site + 1, {}, mu);
  UrsellRequest req;
  req.spec = &spec;
  req.h = h;
  req.observables.push_back({VarSet::single(p)});
  req.observables.push_back({VarSet::single(l)});
  for (const VarSet& a : a_sets) req.observables.push_back({a});

  PercusReport rep;
  rep.abs_u = std::abs(ursell(req));
  rep.in_range = std::abs(p - l) > static_cast<double>(a_sets.size()) * r;

  // independence axiom: under a product measure, u vanishes whenever the
  // observables split into groups with disjoint site supports
  std::vector<std::uint64_t> supports;
  for (const auto& ob : req.observables) supports.push_back(ob.sites.bits);
  std::vector<int> comp(supports.size());
  for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = static_cast<int>(i);
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < supports.size(); ++i)
      for (std::size_t j = i + 1; j < supports.size(); ++j)
        if ((supports[i] & supports[j]) && comp[i] != comp[j]) {
          const int from = comp[j], to = comp[i];
          for (auto& c : comp)
            if (c == from) c = to;
          merged = true;
        }
  }
  rep.disconnected =
      std::any_of(comp.begin(), comp.end(), [&](int c) { return c != comp[0]; });

  rep.pass = (!rep.in_range || rep.abs_u <= tol) &&
             (!rep.disconnected || rep.abs_u <= tol);
  return rep;
}

cplx truncated_two_point(const InteractionSpec& spec, int k, int l, cplx h,
                         int nthreads) {
  std::vector<cplx> field(spec.nsites(), h);
  const EnumSums sums = guarded_sums(spec, field, {{k, l}, {k}, {l}}, nthreads);
  return sums.obs[0] / sums.z - (sums.obs[1] / sums.z) * (sums.obs[2] / sums.z);
}

namespace {

using Series = std::vector<cplx>;  // Taylor coefficients in beta

Series series_mul(const Series& a, const Series& b) {
  Series c(a.size(), cplx{0.0});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Series series_inv(const Series& a) {
  Series inv(a.size(), cplx{0.0});
  inv[0] = 1.0 / a[0];
  for (std::size_t k = 1; k < a.size(); ++k) {
    cplx s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += a[j] * inv[k - j];
    inv[k] = -s * inv[0];
  }
  return inv;
}

}  // namespace

std::vector<cplx> truncated_two_point_beta_series(const InteractionSpec& spec,
                                                  int k, int l, cplx h,
                                                  int norder) {
  if (norder < 1) throw Error("beta series: norder must be >= 1");
  const std::vector<double> points = spec.measure().support_points();
  const std::vector<double> weights = spec.measure().support_weights();
  if (points.empty()) throw EmptySupport("beta series: empty support");
  const int n = spec.nsites();
  if (n > 20) throw TooManySites("beta series: more than 20 sites");
  std::int64_t nconfigs = 1;
  for (int i = 0; i < n; ++i) {
    nconfigs *= static_cast<std::int64_t>(points.size());
    if (nconfigs > (std::int64_t{1} << 26))
      throw TooManySites("beta series: more than 2^26 configurations");
  }

  Series z(norder, cplx{0.0}), nkl = z, nk = z, nl = z;
  std::vector<double> x(n);
  for (std::int64_t idx = 0; idx < nconfigs; ++idx) {
    std::int64_t rem = idx;
    double w = 1.0;
    for (int s = n - 1; s >= 0; --s) {
      const int digit = static_cast<int>(rem % points.size());
      rem /= static_cast<std::int64_t>(points.size());
      x[s] = points[digit];
      w *= weights[digit];
    }
    cplx hsum = 0.0;
    for (int s = 0; s < n; ++s) hsum += h * x[s];
    const cplx base = w * std::exp(hsum);
    cplx e1 = 0.0;  // the coupling energy that beta multiplies
    for (const auto& c : spec.couplings()) {
      double prod = 1.0;
      for (std::uint64_t b = c.sites.bits; b;) {
        prod *= x[__builtin_ctzll(b)];
        b &= b - 1;
      }
      e1 += c.strength * prod;
    }
    cplx pw = base;  // base * e1^m / m!
    for (int m = 0; m < norder; ++m) {
      z[m] += pw;
      nkl[m] += pw * x[k] * x[l];
      nk[m] += pw * x[k];
      nl[m] += pw * x[l];
      pw *= e1 / static_cast<double>(m + 1);
    }
  }
  if (std::abs(z[0]) < 1e-300)
    throw VanishingPartition("beta series: Z(0) vanishes");

  const Series zinv = series_inv(z);
  const Series t2 = series_mul(nkl, zinv);
  const Series fk = series_mul(nk, zinv);
  const Series fl = series_mul(nl, zinv);
  Series out(norder);
  const Series fkfl = series_mul(fk, fl);
  for (int m = 0; m < norder; ++m) out[m] = t2[m] - fkfl[m];
  return out;
}

BetaDerivativeReport beta_derivative_vanishing(const InteractionSpec& spec, int k,
                                               int l, int q, double r, cplx h,
                                               double tol) {
  if (q < 1 || q > 4) throw Error("beta_derivative_vanishing: need 1 <= Q <= 4");
  for (const auto& c : spec.couplings()) {
    const std::vector<int> idx = c.sites.indices();
    if (idx.back() - idx.front() > r)
      throw RangeViolation("beta_derivative_vanishing: coupling exceeds range R");
  }
  if (std::abs(k - l) <= q * r)
    throw RangeViolation("beta_derivative_vanishing: need |k - l| > Q R");

  const std::vector<cplx> series =
      truncated_two_point_beta_series(spec, k, l, h, q);
  BetaDerivativeReport rep;
  rep.pass = true;
  for (const cplx c : series) {
    rep.abs_coeffs.push_back(std::abs(c));
    if (std::abs(c) > tol) rep.pass = false;
  }
  return rep;
}

double transfer_matrix_gap(double j, double h) {
  const double disc = std::sqrt(std::exp(2.0 * j) * std::sinh(h) * std::sinh(h) +
                                std::exp(-2.0 * j));
  const double l1 = std::exp(j) * std::cosh(h) + disc;
  const double l2 = std::exp(j) * std::cosh(h) - disc;
  if (l2 <= 0.0) return std::numeric_limits<double>::infinity();
  return std::log(l1 / l2);
}

MassGapEstimate mass_gap_fit(const InteractionSpec& spec, cplx h, int window_lo,
                             int window_hi, int nthreads) {
  if (!spec.geometry() || spec.geometry()->dims.size() != 1)
    throw Error("mass_gap_fit: 1D geometry required");
  if (window_lo < 1 || window_hi > spec.nsites() / 2 || window_hi - window_lo < 1)
    throw WindowTooSmall("mass_gap_fit: need 1 <= lo < hi <= nsites/2");

  std::vector<std::vector<int>> observables;
  observables.push_back({0});
  for (int d = window_lo; d <= window_hi; ++d) {
    observables.push_back({0, d});
    observables.push_back({d});
  }
  std::vector<cplx> field(spec.nsites(), h);
  const EnumSums sums = guarded_sums(spec, field, observables, nthreads);
  const cplx f0 = sums.obs[0] / sums.z;

  MassGapEstimate est;
  for (int d = window_lo; d <= window_hi; ++d) {
    const std::size_t i = 1 + 2 * static_cast<std::size_t>(d - window_lo);
    const cplx t = sums.obs[i] / sums.z - f0 * (sums.obs[i + 1] / sums.z);
    if (std::abs(t) < 1e-13) continue;  // below enumeration noise
    est.distances.push_back(d);
    est.log_truncated.push_back(std::log(std::abs(t)));
  }

  if (est.distances.empty()) {
    est.infinite_gap = true;
    est.m_fit = std::numeric_limits<double>::infinity();
    est.pass = true;
    return est;
  }
  if (est.distances.size() < 2)
    throw WindowTooSmall("mass_gap_fit: fewer than 2 usable distances");

  double dbar = 0.0, ybar = 0.0;
  const std::size_t m = est.distances.size();
  for (std::size_t i = 0; i < m; ++i) {
    dbar += est.distances[i];
    ybar += -est.log_truncated[i];
  }
  dbar /= m;
  ybar /= m;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    num += (est.distances[i] - dbar) * (-est.log_truncated[i] - ybar);
    den += (est.distances[i] - dbar) * (est.distances[i] - dbar);
  }
  est.m_fit = num / den;

  if (const auto j = uniform_nn_strength(spec);
      j && j->imag() == 0.0 && h.imag() == 0.0 && spec.measure().is_spin_half())
    est.m_oracle = transfer_matrix_gap(j->real(), h.real());

  est.pass = est.m_fit > 0.0 &&
             (!est.m_oracle || std::abs(est.m_fit - *est.m_oracle) <= 1e-2);
  return est;
}

}  // namespace leeyang
