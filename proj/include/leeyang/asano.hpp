// Builds fugacity polynomials by Asano-contracting R_A factors while
// composing certified zero-free disk radii per site, and emits the
// structural analyticity region 1/(q I0) of the coupling family.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leeyang/gibbs.hpp"

namespace leeyang {

struct ContractionStep {
  std::vector<int> factor_sites;
  double factor_radius = 0.0;
  std::vector<int> merged_sites;  // sites whose copy was contracted into place
};

/// Per-site disk radii within which the constructed polynomial is certified
/// nonzero: radii[x] = product of factor radii over the factors containing x
/// (empty product = 1 for uncoupled sites).
struct ZeroFreeCertificate {
  std::vector<double> radii;
  std::vector<ContractionStep> steps;
  double min_radius() const;
};

/// Structure-only analyticity region: Z != 0 for |e^(-2h)| < h_radius in any
/// volume built from the same coupling family.
struct AnalyticityRegion {
  double h_radius = 0.0;          // 1/(q I0)
  std::vector<double> coupling_box;  // the J0 bound per coupling
};

/// r_A = 1 / (2^|A| e^(2 J0)): R_A has no zero in the closed polydisc of this
/// radius for any coupling with |J(A)| <= J0.
double factor_radius(int a_size, double j0);
double factor_radius(VarSet a, double j0);

/// Builds the fugacity polynomial of a spin-1/2 spec by multiplying R_A
/// factors on fresh variable copies and contracting the copies pairwise.
/// The result equals fugacity_poly(spec) coefficient-wise; the certificate
/// composes factor radii multiplicatively per contraction.
std::pair<MultiAffinePoly, ZeroFreeCertificate> contract_model(
    const InteractionSpec& spec, std::span<const double> j0);
std::pair<MultiAffinePoly, ZeroFreeCertificate> contract_model(
    const InteractionSpec& spec, double j0_all);

AnalyticityRegion certify_region(const InteractionSpec& spec,
                                 std::span<const double> j0);
AnalyticityRegion certify_region(const InteractionSpec& spec, double j0_all);

struct AuditReport {
  bool pass = false;
  double min_root_modulus = 0.0;  // over roots of the diagonal polynomial
  double min_radius = 0.0;
  double min_abs_inside = 0.0;    // min |Z(z)| over sampled interior points
  double min_rel_inside = 0.0;    // same, relative to the term-magnitude sum
  int samples = 0;
};

/// Root audit of the diagonal polynomial plus random multivariate sampling
/// inside the certified polydisc. PASS iff no root lies inside (up to 1e-9)
/// and no sampled |Z| drops below 1e-12 of its term-magnitude scale.
AuditReport audit_certificate(const InteractionSpec& spec,
                              const ZeroFreeCertificate& cert, int samples = 256,
                              std::uint64_t seed = 1);

/// Largest eps (bisection to tol) such that for all couplings |J(B)| = eps
/// sampled on a 16-point phase grid, the diagonal polynomial of r_a_factor(B)
/// keeps every root at modulus >= rho. Only |B| enters.
double epsilon_rho_search(int b_size, double rho, double tol = 1e-4);
double epsilon_rho_search(VarSet b, double rho, double tol = 1e-4);

}  // namespace leeyang
