// Multiaffine polynomials in up to 63 complex variables, with coefficients
// indexed by variable subsets (one machine word of bits per subset), and the
// Asano pairwise contraction primitive.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "leeyang/errors.hpp"
#include "leeyang/unipoly.hpp"

namespace leeyang {

using cplx = std::complex<double>;

/// A subset of variable indices {0,...,62} packed into a word.
struct VarSet {
  std::uint64_t bits = 0;

  VarSet() = default;
  explicit VarSet(std::uint64_t b) : bits(b) {}
  static VarSet of(std::initializer_list<int> idx) {
    VarSet s;
    for (int i : idx) s.bits |= (std::uint64_t{1} << i);
    return s;
  }
  static VarSet single(int i) { return VarSet(std::uint64_t{1} << i); }

  bool contains(int i) const { return (bits >> i) & 1u; }
  int count() const { return __builtin_popcountll(bits); }
  bool empty() const { return bits == 0; }
  bool subset_of(VarSet o) const { return (bits & ~o.bits) == 0; }
  VarSet with(int i) const { return VarSet(bits | (std::uint64_t{1} << i)); }
  VarSet without(int i) const { return VarSet(bits & ~(std::uint64_t{1} << i)); }

  friend VarSet operator|(VarSet a, VarSet b) { return VarSet(a.bits | b.bits); }
  friend VarSet operator&(VarSet a, VarSet b) { return VarSet(a.bits & b.bits); }
  friend bool operator==(VarSet a, VarSet b) { return a.bits == b.bits; }
  friend bool operator<(VarSet a, VarSet b) { return a.bits < b.bits; }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (std::uint64_t b = bits; b;) {
      int i = __builtin_ctzll(b);
      out.push_back(i);
      b &= b - 1;
    }
    return out;
  }
};

/// Polynomial of degree <= 1 in each variable, stored sparsely as a map from
/// subset key to coefficient. Absent key means coefficient zero; stored
/// coefficients below 1e-300 in magnitude are pruned. Iteration over the map
/// is in ascending key order, which fixes all summation orders.
class MultiAffinePoly {
 public:
  static constexpr int kMaxVars = 63;
  static constexpr double kPrune = 1e-300;

  explicit MultiAffinePoly(int nvars);
  MultiAffinePoly(int nvars, std::map<std::uint64_t, cplx> coeffs);

  static MultiAffinePoly constant(int nvars, cplx c);

  int nvars() const { return nvars_; }
  const std::map<std::uint64_t, cplx>& coeffs() const { return coeffs_; }

  cplx coeff(VarSet key) const;
  void set_coeff(VarSet key, cplx c);

  /// Bitmask of variables that actually appear in some stored key.
  std::uint64_t support_mask() const;

  cplx eval(const std::vector<cplx>& assignment) const;
  UniPoly diagonal() const;
  MultiAffinePoly partial(int j) const;

  bool operator==(const MultiAffinePoly& o) const {
    return nvars_ == o.nvars_ && coeffs_ == o.coeffs_;
  }

 private:
  void canonicalize();
  int nvars_;
  std::map<std::uint64_t, cplx> coeffs_;
};

/// Product of polynomials with disjoint variable support.
/// Throws OverlappingSupport if their supports share a variable.
MultiAffinePoly mul(const MultiAffinePoly& p, const MultiAffinePoly& q);

/// Asano contraction of the variable pair (x, y): terms containing exactly
/// one of x, y are dropped, terms containing both survive with x only, the
/// rest are kept. Variable y becomes unused in the result.
MultiAffinePoly contract(const MultiAffinePoly& p, int x, int y);

inline MultiAffinePoly operator*(const MultiAffinePoly& p, const MultiAffinePoly& q) {
  return mul(p, q);
}

/// Largest coefficient magnitude of the difference (used by tests).
double max_coeff_diff(const MultiAffinePoly& a, const MultiAffinePoly& b);

}  // namespace leeyang
