#include "leeyang/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <thread>

namespace leeyang {

InteractionSpec::InteractionSpec(int nsites, std::vector<Coupling> couplings,
                                 DiscreteEvenMeasure measure,
                                 std::optional<Geometry> geometry)
    : nsites_(nsites), measure_(std::move(measure)), geometry_(std::move(geometry)) {
  if (nsites < 1 || nsites > MultiAffinePoly::kMaxVars)
    throw Error("InteractionSpec: nsites must be in [1, 63]");
  const std::uint64_t all =
      nsites == 63 ? ~std::uint64_t{0} >> 1 : (std::uint64_t{1} << nsites) - 1;
  std::map<std::uint64_t, cplx> merged;
  for (const auto& c : couplings) {
    if (c.sites.count() < 2)
      throw Error("InteractionSpec: coupling sets need at least 2 sites");
    if (c.sites.bits & ~all)
      throw Error("InteractionSpec: coupling set outside the site range");
    merged[c.sites.bits] += c.strength;
  }
  couplings_.reserve(merged.size());
  for (const auto& [mask, j] : merged) couplings_.push_back({VarSet(mask), j});
  if (geometry_) {
    std::int64_t prod = 1;
    for (int d : geometry_->dims) {
      if (d < 1) throw Error("InteractionSpec: geometry dims must be positive");
      prod *= d;
    }
    if (prod != nsites) throw Error("InteractionSpec: geometry dims do not match nsites");
  }
}

bool InteractionSpec::is_ferromagnetic() const {
  for (const auto& c : couplings_)
    if (c.strength.imag() != 0.0 || c.strength.real() < 0.0) return false;
  return true;
}

InteractionSpec make_ring(int nsites, cplx j, DiscreteEvenMeasure mu) {
  if (nsites < 3) throw Error("make_ring: need at least 3 sites");
  std::vector<Coupling> cs;
  for (int i = 0; i < nsites; ++i)
    cs.push_back({VarSet::of({i, (i + 1) % nsites}), j});
  return InteractionSpec(nsites, std::move(cs), std::move(mu),
                         Geometry{{nsites}, true});
}

InteractionSpec make_chain(int nsites, cplx j, DiscreteEvenMeasure mu) {
  if (nsites < 2) throw Error("make_chain: need at least 2 sites");
  std::vector<Coupling> cs;
  for (int i = 0; i + 1 < nsites; ++i) cs.push_back({VarSet::of({i, i + 1}), j});
  return InteractionSpec(nsites, std::move(cs), std::move(mu),
                         Geometry{{nsites}, false});
}

namespace {

struct EnumPlan {
  std::vector<double> points;
  std::vector<double> weights;
  std::int64_t nconfigs = 0;
};

EnumPlan plan_enumeration(const InteractionSpec& spec) {
  EnumPlan plan;
  plan.points = spec.measure().support_points();
  plan.weights = spec.measure().support_weights();
  if (plan.points.empty()) throw EmptySupport("enumerate: measure has empty support");
  if (spec.nsites() > 20) throw TooManySites("enumerate: more than 20 sites");
  plan.nconfigs = 1;
  for (int k = 0; k < spec.nsites(); ++k) {
    plan.nconfigs *= static_cast<std::int64_t>(plan.points.size());
    if (plan.nconfigs > (std::int64_t{1} << 26))
      throw TooManySites("enumerate: more than 2^26 configurations");
  }
  return plan;
}

EnumSums enumerate_range(const InteractionSpec& spec, std::span<const cplx> fields,
                         const std::vector<std::vector<int>>& observables,
                         const EnumPlan& plan, std::int64_t begin, std::int64_t end) {
  const int n = spec.nsites();
  const int base = static_cast<int>(plan.points.size());
  EnumSums sums;
  sums.obs.assign(observables.size(), cplx{0.0});
  std::vector<double> x(n);
  for (std::int64_t idx = begin; idx < end; ++idx) {
    std::int64_t rem = idx;
    double w = 1.0;
    for (int k = n - 1; k >= 0; --k) {  // site 0 is the most significant digit
      const int digit = static_cast<int>(rem % base);
      rem /= base;
      x[k] = plan.points[digit];
      w *= plan.weights[digit];
    }
    cplx e = 0.0;
    for (const auto& c : spec.couplings()) {
      double prod = 1.0;
      for (std::uint64_t b = c.sites.bits; b;) {
        prod *= x[__builtin_ctzll(b)];
        b &= b - 1;
      }
      e += c.strength * prod;
    }
    for (int k = 0; k < n; ++k) e += fields[k] * x[k];
    const cplx term = w * std::exp(e);
    sums.z += term;
    sums.scale += std::abs(term);
    for (std::size_t i = 0; i < observables.size(); ++i) {
      double prod = 1.0;
      for (int s : observables[i]) prod *= x[s];
      sums.obs[i] += term * prod;
    }
  }
  return sums;
}

}  // namespace

EnumSums enumerate_sums(const InteractionSpec& spec, std::span<const cplx> fields,
                        const std::vector<std::vector<int>>& observables_in,
                        int nthreads) {
  if (static_cast<int>(fields.size()) != spec.nsites())
    throw LengthMismatch("enumerate: fields length != nsites");
  // canonical site order inside each observable, so permuted requests are
  // bit-identical
  std::vector<std::vector<int>> observables = observables_in;
  for (auto& ob : observables) {
    std::sort(ob.begin(), ob.end());
    for (int s : ob)
      if (s < 0 || s >= spec.nsites()) throw Error("enumerate: observable site out of range");
  }
  const EnumPlan plan = plan_enumeration(spec);

  nthreads = std::max(1, nthreads);
  if (nthreads == 1 || plan.nconfigs < 4096)
    return enumerate_range(spec, fields, observables, plan, 0, plan.nconfigs);

  std::vector<EnumSums> parts(nthreads);
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads; ++t) {
    const std::int64_t b = plan.nconfigs * t / nthreads;
    const std::int64_t e = plan.nconfigs * (t + 1) / nthreads;
    pool.emplace_back([&, t, b, e] {
      parts[t] = enumerate_range(spec, fields, observables, plan, b, e);
    });
  }
  for (auto& th : pool) th.join();
  EnumSums total;
  total.obs.assign(observables.size(), cplx{0.0});
  for (const auto& p : parts) {  // fixed block order
    total.z += p.z;
    total.scale += p.scale;
    for (std::size_t i = 0; i < p.obs.size(); ++i) total.obs[i] += p.obs[i];
  }
  return total;
}

cplx partition_function(const InteractionSpec& spec, std::span<const cplx> fields,
                        int nthreads) {
  return enumerate_sums(spec, fields, {}, nthreads).z;
}

MultiAffinePoly fugacity_poly(const InteractionSpec& spec) {
  if (!spec.measure().is_spin_half())
    throw NonSpinHalf("fugacity_poly: spin-1/2 measure required");
  if (spec.nsites() > 20) throw TooManySites("fugacity_poly: more than 20 sites");
  const int n = spec.nsites();
  std::map<std::uint64_t, cplx> coeffs;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
    cplx p = 1.0;
    for (const auto& c : spec.couplings())
      if (__builtin_popcountll(c.sites.bits & a) % 2)
        p *= std::exp(-2.0 * c.strength);
    coeffs[a] = p;
  }
  return MultiAffinePoly(n, std::move(coeffs));
}

MultiAffinePoly r_a_factor(VarSet a, cplx j, int nvars) {
  if (a.count() < 2) throw Error("r_a_factor: |A| must be >= 2");
  const cplx odd_weight = std::exp(-2.0 * j);
  MultiAffinePoly out(nvars);
  const std::vector<int> idx = a.indices();
  for (std::uint64_t sub = 0;; ++sub) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < idx.size(); ++i)
      if ((sub >> i) & 1u) key |= std::uint64_t{1} << idx[i];
    out.set_coeff(VarSet(key), (__builtin_popcountll(sub) % 2) ? odd_weight : cplx{1.0});
    if (sub + 1 == (std::uint64_t{1} << idx.size())) break;
  }
  return out;
}

namespace {

// Canonical translation-class key on a torus: the lexicographically smallest
// sorted site tuple over all shifts.
std::vector<int> translation_class_key(const VarSet& a, const Geometry& g) {
  const int ndim = static_cast<int>(g.dims.size());
  const std::vector<int> sites = a.indices();
  std::vector<std::vector<int>> coords(sites.size(), std::vector<int>(ndim));
  for (std::size_t i = 0; i < sites.size(); ++i) {
    int rem = sites[i];
    for (int d = ndim - 1; d >= 0; --d) {
      coords[i][d] = rem % g.dims[d];
      rem /= g.dims[d];
    }
  }
  std::vector<int> shift(ndim, 0);
  std::vector<int> best;
  while (true) {
    std::vector<int> shifted;
    for (const auto& c : coords) {
      int site = 0;
      for (int d = 0; d < ndim; ++d)
        site = site * g.dims[d] + (c[d] + shift[d]) % g.dims[d];
      shifted.push_back(site);
    }
    std::sort(shifted.begin(), shifted.end());
    if (best.empty() || shifted < best) best = shifted;
    int d = ndim - 1;
    while (d >= 0 && ++shift[d] == g.dims[d]) shift[d--] = 0;
    if (d < 0) break;
  }
  return best;
}

}  // namespace

FamilyStats family_stats(const InteractionSpec& spec, std::span<const double> j0) {
  if (spec.couplings().empty()) throw NoCouplings("family_stats: no couplings");
  if (j0.size() != spec.couplings().size())
    throw LengthMismatch("family_stats: j0 length != number of couplings");
  FamilyStats fs;
  for (int s = 0; s < spec.nsites(); ++s) {
    int count = 0;
    for (const auto& c : spec.couplings())
      if (c.sites.contains(s)) ++count;
    fs.q = std::max(fs.q, count);
  }
  for (std::size_t i = 0; i < spec.couplings().size(); ++i) {
    if (j0[i] < 0.0) throw Error("family_stats: j0 bounds must be >= 0");
    fs.i0 = std::max(fs.i0, std::pow(2.0, spec.couplings()[i].sites.count()) *
                                std::exp(2.0 * j0[i]));
  }
  fs.r0 = 1.0 / (fs.q * fs.i0);
  if (spec.geometry() && spec.geometry()->periodic) {
    std::set<std::vector<int>> classes;
    for (const auto& c : spec.couplings())
      classes.insert(translation_class_key(c.sites, *spec.geometry()));
    fs.v = static_cast<int>(classes.size());
  }
  return fs;
}

FamilyStats family_stats(const InteractionSpec& spec, double j0_all) {
  std::vector<double> j0(spec.couplings().size(), j0_all);
  return family_stats(spec, j0);
}

std::optional<cplx> uniform_nn_strength(const InteractionSpec& spec) {
  if (!spec.geometry() || spec.geometry()->dims.size() != 1) return std::nullopt;
  const int n = spec.nsites();
  std::vector<std::uint64_t> wanted;
  for (int i = 0; i + 1 < n; ++i) wanted.push_back(VarSet::of({i, i + 1}).bits);
  if (spec.geometry()->periodic && n > 2)
    wanted.push_back(VarSet::of({0, n - 1}).bits);
  std::sort(wanted.begin(), wanted.end());
  if (spec.couplings().size() != wanted.size()) return std::nullopt;
  const cplx j = spec.couplings().front().strength;
  for (std::size_t i = 0; i < wanted.size(); ++i) {
    const auto& c = spec.couplings()[i];
    if (c.sites.bits != wanted[i] || std::abs(c.strength - j) != 0.0)
      return std::nullopt;
  }
  return j;
}

}  // namespace leeyang
