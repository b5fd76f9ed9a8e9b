#include "leeyang/analysis.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

namespace leeyang {

namespace {

// Up to 5 Newton steps against the original polynomial, keeping the best
// residual seen.
cplx newton_polish(const UniPoly& p, const UniPoly& dp, cplx z) {
  cplx best = z;
  double best_res = std::abs(p.eval(z));
  for (int it = 0; it < 5; ++it) {
    const cplx pv = p.eval(z);
    const cplx dv = dp.eval(z);
    if (std::abs(dv) < 1e-300) break;
    z -= pv / dv;
    const double res = std::abs(p.eval(z));
    if (res < best_res) {
      best_res = res;
      best = z;
    }
  }
  return best;
}

}  // namespace

std::vector<cplx> roots(const UniPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("roots: zero polynomial");
  const int n = p.degree();
  if (n > 64) throw Error("roots: degree above cap 64");
  if (n < 1) return {};

  // Monic companion matrix, balanced by Eigen internally.
  const cplx lead = p.coeffs[n];
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) C(i + 1, i) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -p.coeffs[i] / lead;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw Error("roots: eigensolver failed");

  const UniPoly dp = p.derivative();
  std::vector<cplx> out(n);
  for (int i = 0; i < n; ++i) out[i] = newton_polish(p, dp, es.eigenvalues()(i));
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

std::vector<GLWitness> gauss_lucas_check(const UniPoly& p) {
  if (p.degree() < 2) throw Error("gauss_lucas_check: degree must be >= 2");
  const std::vector<cplx> zs = roots(p);
  const std::vector<cplx> crit = roots(p.derivative());

  double scale = 1.0;
  for (cplx z : zs) scale = std::max(scale, std::abs(z));

  std::vector<GLWitness> out;
  out.reserve(crit.size());
  for (cplx w : crit) {
    GLWitness wit;
    wit.critical_point = w;
    double dmin = 1e300;
    for (cplx z : zs) dmin = std::min(dmin, std::abs(w - z));
    if (dmin <= 1e-8 * scale) {
      wit.is_root_of_p = true;
      wit.hull_distance = 0.0;
      out.push_back(std::move(wit));
      continue;
    }
    double denom = 0.0;
    for (cplx z : zs) denom += 1.0 / std::norm(w - z);
    cplx recon = 0.0;
    wit.weights.reserve(zs.size());
    for (cplx z : zs) {
      const double a = (1.0 / std::norm(w - z)) / denom;
      wit.weights.push_back(a);
      recon += a * z;
    }
    wit.recon_error = std::abs(recon - w);
    wit.hull_distance = hull_distance_scaled(zs, w);
    out.push_back(std::move(wit));
  }
  return out;
}

SamplingReport strong_gl_check(const UniPoly& p, int samples, std::uint64_t seed) {
  if (p.degree() < 1) throw Error("strong_gl_check: degree must be >= 1");
  const std::vector<cplx> zs = roots(p);
  double scale = 1.0;
  for (cplx z : zs) scale = std::max(scale, std::abs(z));
  for (cplx z : zs)
    if (z.real() > 1e-9 * scale)
      throw NotHalfPlaneFree("strong_gl_check: root with Re > 0");

  const UniPoly dp = p.derivative();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  SamplingReport rep;
  rep.samples = samples;
  rep.min_value = 1e300;
  for (int i = 0; i < samples; ++i) {
    cplx z;
    switch (i % 3) {
      case 0:  // near the imaginary axis
        z = cplx(std::pow(10.0, -6.0 * u01(rng)) * scale,
                 (2.0 * u01(rng) - 1.0) * 3.0 * scale);
        break;
      case 1: {  // near the mirror images of the roots
        const cplx zr = zs[i % zs.size()];
        const cplx jitter(0.3 * scale * u01(rng), 0.6 * scale * (u01(rng) - 0.5));
        z = cplx(std::max(1e-8 * scale, -zr.real()) + jitter.real(),
                 zr.imag() + jitter.imag());
        break;
      }
      default:  // far field
        z = std::polar(scale * (1.0 + 30.0 * u01(rng)),
                       (u01(rng) - 0.5) * 3.1415);
        if (z.real() <= 0.0) z = cplx(-z.real() + 1e-8 * scale, z.imag());
        break;
    }
    const cplx f = dp.eval(z) / p.eval(z);
    if (f.real() < rep.min_value) {
      rep.min_value = f.real();
      rep.worst_point = z;
    }
  }
  rep.pass = rep.min_value > 0.0;
  return rep;
}

SamplingReport disk_ratio_check(cplx A, cplx B, double R, int samples,
                                std::uint64_t seed) {
  if (R <= 0.0) throw Error("disk_ratio_check: R must be positive");
  const bool trivial = std::abs(A) == 0.0;
  double t = 0.0;  // |B/A|
  if (!trivial) {
    t = std::abs(B / A);
    if (t < R * R * (1.0 - 1e-12))
      throw VanishingInDisk("disk_ratio_check: f has a zero in 0<|z|<R");
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  SamplingReport rep;
  rep.samples = samples;
  rep.min_value = -1e300;  // tracks the max of Re(zf'/f); must stay < 0
  for (int i = 0; i < samples; ++i) {
    // log-uniform radius, biased toward the boundary every third sample
    double r = (i % 3 == 0) ? R * (1.0 - 1e-9 - 1e-6 * u01(rng))
                            : R * std::pow(10.0, -4.0 * u01(rng));
    const cplx z = std::polar(r, 2.0 * 3.14159265358979323846 * u01(rng));
    double re;
    if (trivial) {
      re = -1.0;  // z f'/f = -1 identically for f = B/z
    } else {
      // Re(zf'/f) = (|z|^2 - t^2 |z|^-2) / |z + (B/A) z^-1|^2
      const cplx w = z + (B / A) / z;
      const double s = std::norm(z);
      re = (s - t * t / s) / std::norm(w);
    }
    if (re > rep.min_value) {
      rep.min_value = re;
      rep.worst_point = z;
    }
  }
  rep.pass = rep.min_value < 0.0;
  return rep;
}

cplx cayley(cplx h) {
  if (std::abs(h + 1.0) == 0.0) throw PoleAtMinusOne("cayley: h = -1");
  return (1.0 - h) / (1.0 + h);
}

double alpha(cplx h) {
  const double a = std::abs(1.0 + h);
  const double b = std::abs(1.0 - h);
  if (a <= b) throw NotInRightHalfPlane("alpha: Re h must be positive");
  return (a + b) / (a - b);
}

double caratheodory_bound(double f0, cplx z) {
  const double r = std::abs(z);
  if (r >= 1.0) throw OutsideDisk("caratheodory_bound: |z| must be < 1");
  if (f0 <= 0.0) throw Error("caratheodory_bound: f(0) must be positive");
  return f0 * (1.0 + r) / (1.0 - r);
}

double borel_caratheodory_bound(double max_re, cplx f0, double r) {
  if (r <= 0.0 || r >= 1.0) throw Error("borel_caratheodory_bound: need 0 < r < 1");
  return (2.0 * r / (1.0 - r)) * max_re + ((1.0 + r) / (1.0 - r)) * std::abs(f0);
}

double taylor_tail_bound(double C, double R, int K, cplx z) {
  if (C < 0.0 || K < 0 || R <= 0.0) throw Error("taylor_tail_bound: bad arguments");
  const double t = std::abs(z) / R;
  if (t >= 1.0) throw OutsideDisk("taylor_tail_bound: |z| must be < R");
  return C * std::pow(t, K) / (1.0 - t);
}

namespace {

double cross(cplx o, cplx a, cplx b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

double seg_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

// Andrew monotone chain; returns the hull counterclockwise, no repeated first
// point. Collinear inputs yield the two extreme points.
std::vector<cplx> convex_hull(std::vector<cplx> pts) {
  std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](cplx a, cplx b) { return a == b; }),
            pts.end());
  const int n = static_cast<int>(pts.size());
  if (n <= 2) return pts;
  std::vector<cplx> h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  const int lower = k + 1;
  for (int i = n - 2; i >= 0; --i) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace

double hull_distance_scaled(const std::vector<cplx>& pts, cplx w) {
  if (pts.empty()) return std::abs(w);
  double xlo = w.real(), xhi = w.real(), ylo = w.imag(), yhi = w.imag();
  for (cplx p : pts) {
    xlo = std::min(xlo, p.real());
    xhi = std::max(xhi, p.real());
    ylo = std::min(ylo, p.imag());
    yhi = std::max(yhi, p.imag());
  }
  const double s = std::max({xhi - xlo, yhi - ylo, 1e-30});

  std::vector<cplx> scaled;
  scaled.reserve(pts.size());
  for (cplx p : pts) scaled.emplace_back((p.real() - xlo) / s, (p.imag() - ylo) / s);
  const cplx q((w.real() - xlo) / s, (w.imag() - ylo) / s);

  const std::vector<cplx> hull = convex_hull(scaled);
  if (hull.size() == 1) return std::abs(q - hull[0]);
  if (hull.size() == 2) return seg_distance(q, hull[0], hull[1]);

  bool inside = true;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const cplx a = hull[i], b = hull[(i + 1) % hull.size()];
    if (cross(a, b, q) < 0.0) {
      inside = false;
      break;
    }
  }
  if (inside) return 0.0;
  double d = 1e300;
  for (std::size_t i = 0; i < hull.size(); ++i)
    d = std::min(d, seg_distance(q, hull[i], hull[(i + 1) % hull.size()]));
  return d;
}

UniPoly disk_to_halfplane(const UniPoly& d) {
  const int n = d.degree();
  if (n < 0) throw ZeroPolynomial("disk_to_halfplane: zero polynomial");
  // P(u) = sum_k c_k (1-u)^k (1+u)^(n-k), expanded by repeated convolution.
  std::vector<cplx> acc(static_cast<std::size_t>(n) + 1, cplx{0.0});
  for (int k = 0; k <= n; ++k) {
    if (std::abs(d.coeffs[k]) == 0.0) continue;
    std::vector<cplx> term{d.coeffs[k]};
    for (int i = 0; i < k; ++i) {  // multiply by (1 - u)
      std::vector<cplx> next(term.size() + 1, cplx{0.0});
      for (std::size_t j = 0; j < term.size(); ++j) {
        next[j] += term[j];
        next[j + 1] -= term[j];
      }
      term = std::move(next);
    }
    for (int i = 0; i < n - k; ++i) {  // multiply by (1 + u)
      std::vector<cplx> next(term.size() + 1, cplx{0.0});
      for (std::size_t j = 0; j < term.size(); ++j) {
        next[j] += term[j];
        next[j + 1] += term[j];
      }
      term = std::move(next);
    }
    for (std::size_t j = 0; j < term.size(); ++j) acc[j] += term[j];
  }
  // Trim coefficients that are pure cancellation noise.
  double scale = 0.0;
  for (const auto& c : acc) scale = std::max(scale, std::abs(c));
  while (!acc.empty() && std::abs(acc.back()) < 1e-12 * scale) acc.pop_back();
  return UniPoly(std::move(acc));
}

}  // namespace leeyang
