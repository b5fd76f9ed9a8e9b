// Model specification (sites, multibody couplings, per-site measure, optional
// torus geometry), exact partition functions by configuration enumeration,
// fugacity polynomials in z_j = e^(-2 h_j), and the structural constants
// q, v, I0, R0 of the coupling family.
#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "leeyang/measures.hpp"
#include "leeyang/multiaffine.hpp"

namespace leeyang {

struct Coupling {
  VarSet sites;  // |sites| >= 2
  cplx strength;
};

struct Geometry {
  std::vector<int> dims;  // product must equal nsites; site index is row-major
  bool periodic = false;
};

class InteractionSpec {
 public:
  InteractionSpec(int nsites, std::vector<Coupling> couplings,
                  DiscreteEvenMeasure measure,
                  std::optional<Geometry> geometry = std::nullopt);

  int nsites() const { return nsites_; }
  const std::vector<Coupling>& couplings() const { return couplings_; }
  const DiscreteEvenMeasure& measure() const { return measure_; }
  const std::optional<Geometry>& geometry() const { return geometry_; }

  /// True when every coupling strength is real and >= 0.
  bool is_ferromagnetic() const;

 private:
  int nsites_;
  std::vector<Coupling> couplings_;  // merged duplicates, sorted by site mask
  DiscreteEvenMeasure measure_;
  std::optional<Geometry> geometry_;
};

/// Uniform-J nearest-neighbor models on a periodic ring / open chain.
InteractionSpec make_ring(int nsites, cplx j, DiscreteEvenMeasure mu);
InteractionSpec make_chain(int nsites, cplx j, DiscreteEvenMeasure mu);

/// One pass of exact configuration enumeration. Configurations run in
/// lexicographic order (site 0 most significant, support points ascending);
/// with nthreads > 1 the range is split into contiguous blocks whose partial
/// sums are combined in block order, so results differ from serial by at most
/// reassociation noise.
struct EnumSums {
  cplx z = 0.0;              // partition function
  double scale = 0.0;        // sum of |term| over all configurations
  std::vector<cplx> obs;     // per observable: sum of term * prod of spins
};

EnumSums enumerate_sums(const InteractionSpec& spec, std::span<const cplx> fields,
                        const std::vector<std::vector<int>>& observables = {},
                        int nthreads = 1);

/// Z(h) = <exp(sum_A J(A) prod_{k in A} x_k + sum_k h_k x_k)> under the
/// product apriori measure. Enumeration guard: nsites <= 20 and at most 2^26
/// configurations.
cplx partition_function(const InteractionSpec& spec, std::span<const cplx> fields,
                        int nthreads = 1);

/// The multiaffine fugacity polynomial sum_A z^A p(A) with
/// p(A) = prod over couplings B with |B ∩ A| odd of e^(-2 J(B));
/// A is the down-spin set and z_j = e^(-2 h_j). Spin-1/2 only.
/// Contract: partition_function(spec, h) =
///   (prod_k e^(h_k)) e^(sum_B J(B)) 2^-nsites * fugacity_poly.eval(e^(-2h)).
MultiAffinePoly fugacity_poly(const InteractionSpec& spec);

/// R_A factor over the variables of A:
///   sum over even B subset A of z^B + e^(-2J) sum over odd B of z^B.
MultiAffinePoly r_a_factor(VarSet a, cplx j, int nvars);

struct FamilyStats {
  int q = 0;        // max over sites of the number of couplings containing it
  int v = 0;        // translation classes (torus geometry only, else 0)
  double i0 = 0.0;  // max over couplings of 2^|A| e^(2 J0(A))
  double r0 = 0.0;  // 1 / (q * i0)
};

/// j0 holds one coupling-strength bound per coupling (|J(A)| <= j0[i]).
FamilyStats family_stats(const InteractionSpec& spec, std::span<const double> j0);
FamilyStats family_stats(const InteractionSpec& spec, double j0_all);

/// The common coupling strength when the spec is exactly a uniform
/// nearest-neighbor 1D chain or ring; nullopt otherwise.
std::optional<cplx> uniform_nn_strength(const InteractionSpec& spec);

}  // namespace leeyang
