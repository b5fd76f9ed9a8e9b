// One-variable root finding (companion matrix + Newton polish) and the
// complex-analysis toolkit: Gauss-Lucas witnesses, half-plane and disk
// log-derivative sampling checks, Cayley map, alpha(h), Caratheodory,
// Borel-Caratheodory and Taylor tail bounds.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "leeyang/errors.hpp"
#include "leeyang/unipoly.hpp"

namespace leeyang {

using cplx = std::complex<double>;

/// All roots with multiplicity. Residuals satisfy
/// |p(root)| <= 1e-9 * max|coeff| * max(1,|root|)^degree.
/// Throws ZeroPolynomial for the zero polynomial; a nonzero constant has no
/// roots and yields an empty vector. Degree cap is 64.
std::vector<cplx> roots(const UniPoly& p);

/// Weights and hull distance for one critical point of P (Eq-style witness:
/// w = sum a_j z_j with a_j proportional to |w - z_j|^-2).
struct GLWitness {
  cplx critical_point;
  std::vector<double> weights;  // empty when the critical point is a root of P
  double recon_error = 0.0;     // |sum a_j z_j - w|
  double hull_distance = 0.0;   // distance to the root hull, unit-box scaled
  bool is_root_of_p = false;
};

std::vector<GLWitness> gauss_lucas_check(const UniPoly& p);

struct SamplingReport {
  bool pass = false;
  int samples = 0;
  double min_value = 0.0;  // min Re(P'/P) observed, or max Re(zf'/f) for disks
  cplx worst_point;
};

/// Samples Re(P'(z)/P(z)) > 0 over stratified points with Re z > 0.
/// Precondition: every root of p has Re <= 0 (else NotHalfPlaneFree).
SamplingReport strong_gl_check(const UniPoly& p, int samples = 2048,
                               std::uint64_t seed = 1);

/// For f(z) = A z + B/z nonvanishing on 0 < |z| < R, samples
/// Re(z f'(z)/f(z)) < 0 there. Throws VanishingInDisk when f has a zero in
/// the punctured disk (A != 0 and |B/A| < R^2).
SamplingReport disk_ratio_check(cplx A, cplx B, double R, int samples = 2048,
                                std::uint64_t seed = 1);

/// z(h) = (1-h)/(1+h); maps the open right half-plane onto the unit disk.
cplx cayley(cplx h);

/// alpha(h) = (|1+h|+|1-h|)/(|1+h|-|1-h|), defined for Re h > 0.
double alpha(cplx h);

/// f(0) * (1+|z|)/(1-|z|) for Re f > 0 on the disk, f(0) > 0 real.
double caratheodory_bound(double f0, cplx z);

/// (2r/(1-r)) maxRe + ((1+r)/(1-r)) |f0|, 0 < r < 1.
double borel_caratheodory_bound(double max_re, cplx f0, double r);

/// C (|z|/R)^K / (1 - |z|/R) for |z| < R.
double taylor_tail_bound(double C, double R, int K, cplx z);

/// Distance from w to the convex hull of pts, after scaling everything to a
/// unit bounding box. Zero when w lies inside or on the hull.
double hull_distance_scaled(const std::vector<cplx>& pts, cplx w);

/// P(u) = (1+u)^n D((1-u)/(1+u)): maps a polynomial with roots on/inside the
/// unit circle to one with roots on/right-of the imaginary axis. Degree may
/// drop when D(-1) = 0.
UniPoly disk_to_halfplane(const UniPoly& d);

}  // namespace leeyang
