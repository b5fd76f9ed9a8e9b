// Ursell (fully truncated) correlation functions via the set-partition
// formula, Percus vanishing under product measures, truncated two-point
// functions, beta-series coefficients at beta = 0, and mass-gap estimation
// against the 1D transfer-matrix decay rate.
#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "leeyang/gibbs.hpp"

namespace leeyang {

/// One observable: coeff * prod_{j in sites} sigma_j.
struct Observable {
  VarSet sites;
  double coeff = 1.0;
};

struct UrsellRequest {
  const InteractionSpec* spec = nullptr;
  std::vector<Observable> observables;  // n <= 10
  cplx h = 0.0;                         // uniform field of the base state
};

/// u_n = sum over set partitions pi of (-1)^(|pi|-1) (|pi|-1)! prod_B <prod X_i>.
cplx ursell(const UrsellRequest& req, int nthreads = 1);

/// Independent cross-check of the partition formula: mixed centered finite
/// difference of log<exp(sum t_i X_i)> at t = 0, realized by perturbing the
/// couplings (and fields, for single-site observables) of the spec. With
/// richardson, two extrapolation levels (step, step/2, step/4) upgrade the
/// truncation error to O(step^6).
cplx ursell_fd(const UrsellRequest& req, double step = 0.1,
               bool richardson = true);

struct PercusReport {
  bool pass = false;
  double abs_u = 0.0;
  bool in_range = false;      // |p - l| > k R held, so vanishing was asserted
  bool disconnected = false;  // observable supports split into independent blocks
};

/// u_{k+2}(sigma_p, sigma_l, sigma^{A_1}, ..., sigma^{A_k}) under the product
/// (uncoupled) measure at field h. Requires diam(A_j) <= R. Asserts |u| <= tol
/// when |p - l| > k R, and also whenever the observable supports are
/// disconnected (the independence axiom, which the distance condition
/// implies).
PercusReport percus_check(const DiscreteEvenMeasure& mu,
                          const std::vector<VarSet>& a_sets, int p, int l,
                          double r, cplx h = 0.3, double tol = 1e-10);

/// f(k,l;h) - f(k;h) f(l;h).
cplx truncated_two_point(const InteractionSpec& spec, int k, int l, cplx h,
                         int nthreads = 1);

/// Taylor coefficients in beta, at beta = 0, of the truncated two-point
/// function of the beta-scaled model (couplings beta*J(A)); orders 0..norder-1.
std::vector<cplx> truncated_two_point_beta_series(const InteractionSpec& spec,
                                                  int k, int l, cplx h,
                                                  int norder);

struct BetaDerivativeReport {
  bool pass = false;
  std::vector<double> abs_coeffs;  // |c_j| for j < Q
};

/// Asserts the beta-derivatives of orders j < Q vanish at beta = 0 when
/// |k - l| > Q R, R the interaction range. Throws RangeViolation when the
/// distance precondition fails or a coupling exceeds the stated range.
BetaDerivativeReport beta_derivative_vanishing(const InteractionSpec& spec, int k,
                                               int l, int q, double r,
                                               cplx h = 1.0, double tol = 1e-10);

/// log(lambda_1 / lambda_2) for the 2x2 spin-1/2 nearest-neighbor transfer
/// matrix at real coupling j and real field h.
double transfer_matrix_gap(double j, double h);

struct MassGapEstimate {
  bool pass = false;
  double m_fit = 0.0;                  // least-squares slope of -log|t(d)|
  std::optional<double> m_oracle;      // transfer-matrix rate when applicable
  bool infinite_gap = false;           // truncated two-point identically ~0
  std::vector<int> distances;
  std::vector<double> log_truncated;   // log|t(d)| per distance
};

/// Fits the decay rate of |<s_0 s_d> - <s_0><s_d>| over d in
/// [window_lo, window_hi] on a 1D spec. The oracle is filled for uniform-J
/// spin-1/2 nearest-neighbor models at real h. PASS iff m_fit > 0 and, when
/// the oracle applies, |m_fit - m_oracle| <= 1e-2.
MassGapEstimate mass_gap_fit(const InteractionSpec& spec, cplx h, int window_lo,
                             int window_hi, int nthreads = 1);

}  // namespace leeyang
