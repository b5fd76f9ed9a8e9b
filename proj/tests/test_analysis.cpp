#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "leeyang/analysis.hpp"
#include "testutil.hpp"

using namespace leeyang;
using testutil::cclose;
using testutil::close;

namespace {

UniPoly poly_from_roots(const std::vector<cplx>& rs, cplx lead = 1.0) {
  std::vector<cplx> c{lead};
  for (const cplx r : rs) {
    std::vector<cplx> next(c.size() + 1, cplx{0.0});
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] -= c[i] * r;
      next[i + 1] += c[i];
    }
    c = std::move(next);
  }
  return UniPoly(std::move(c));
}

double residual_scale(const UniPoly& p, cplx root) {
  return p.coeff_scale() * std::pow(std::max(1.0, std::abs(root)), p.degree());
}

// Independent membership oracle: support-function gap over a dense angular
// sweep. For points outside the hull this approaches the true distance.
double support_gap(const std::vector<cplx>& pts, cplx w) {
  double gap = 0.0;
  for (int k = 0; k < 3600; ++k) {
    const double th = 2.0 * M_PI * k / 3600;
    const double dx = std::cos(th), dy = std::sin(th);
    double support = -1e300;
    for (const cplx p : pts)
      support = std::max(support, p.real() * dx + p.imag() * dy);
    gap = std::max(gap, w.real() * dx + w.imag() * dy - support);
  }
  return gap;
}

}  // namespace

TEST_CASE("roots of simple polynomials") {
  const std::vector<cplx> r1 = roots(UniPoly({1.0, 0.0, 1.0}));  // z^2 + 1
  CHECK(testutil::root_match_error(r1, {cplx{0.0, 1.0}, cplx{0.0, -1.0}}) <= 1e-12);

  const std::vector<cplx> r2 = roots(UniPoly({1.0, 3.0, 3.0, 1.0}));  // (1+z)^3
  for (const cplx z : r2) CHECK(std::abs(z + 1.0) <= 2e-5);  // triple root cluster
  for (const cplx z : r2)
    CHECK(std::abs(UniPoly({1.0, 3.0, 3.0, 1.0}).eval(z)) <= 1e-9 * residual_scale(UniPoly({1.0, 3.0, 3.0, 1.0}), z));

  // z^2 + 2 e^-2 z + 1: conjugate pair of modulus 1
  const double c = 2.0 * std::exp(-2.0);
  for (const cplx z : roots(UniPoly({1.0, c, 1.0})))
    CHECK(close(std::abs(z), 1.0, 1e-12));

  CHECK_THROWS_AS(roots(UniPoly{}), ZeroPolynomial);
  CHECK(roots(UniPoly({cplx{3.0, 1.0}})).empty());
}

TEST_CASE("root residuals on random polynomials") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> ud(1, 16);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<cplx> coeffs(ud(rng) + 1);
    for (auto& cc : coeffs) cc = testutil::random_unit_box(rng);
    coeffs.back() += cplx{2.0, 0.0};  // keep the leading coefficient honest
    const UniPoly p(std::move(coeffs));
    if (p.degree() < 1) continue;
    const auto rs = roots(p);
    REQUIRE(static_cast<int>(rs.size()) == p.degree());
    for (const cplx z : rs)
      CHECK(std::abs(p.eval(z)) <= 1e-9 * residual_scale(p, z));
  }
}

TEST_CASE("gauss-lucas witnesses") {
  // z^3 - 1: critical points at 0 (double), weights 1/3 each
  const auto ws = gauss_lucas_check(UniPoly({-1.0, 0.0, 0.0, 1.0}));
  REQUIRE(ws.size() == 2);
  for (const auto& w : ws) {
    CHECK(std::abs(w.critical_point) <= 1e-8);
    REQUIRE(w.weights.size() == 3);
    for (const double a : w.weights) CHECK(close(a, 1.0 / 3.0, 1e-8));
    CHECK(w.recon_error <= 1e-8);
    CHECK(w.hull_distance <= 1e-9);
  }

  // (z-1)^2: the critical point is a root of P
  const auto wr = gauss_lucas_check(UniPoly({1.0, -2.0, 1.0}));
  REQUIRE(wr.size() == 1);
  CHECK(wr[0].is_root_of_p);
  CHECK(wr[0].hull_distance == 0.0);
}

TEST_CASE("gauss-lucas hull property vs support-function oracle") {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<int> ud(2, 12);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<cplx> coeffs(ud(rng) + 1);
    for (auto& cc : coeffs) cc = testutil::random_unit_box(rng);
    coeffs.back() += cplx{2.0, 0.0};
    const UniPoly p(std::move(coeffs));
    if (p.degree() < 2) continue;
    const std::vector<cplx> zs = roots(p);

    double box = 1e-30;
    {
      double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
      for (const cplx z : zs) {
        xlo = std::min(xlo, z.real());
        xhi = std::max(xhi, z.real());
        ylo = std::min(ylo, z.imag());
        yhi = std::max(yhi, z.imag());
      }
      box = std::max({xhi - xlo, yhi - ylo, 1e-30});
    }

    for (const auto& w : gauss_lucas_check(p)) {
      CHECK(w.hull_distance <= 1e-9);
      if (!w.is_root_of_p) CHECK(w.recon_error <= 1e-8);
      // oracle agreement: the unscaled support gap must also be tiny
      CHECK(support_gap(zs, w.critical_point) <= 1e-8 * box + 1e-12);
    }
  }
}

TEST_CASE("strong gauss-lucas sampling") {
  // P = z + 1 at z = 1: f = 1/2
  const UniPoly p1({1.0, 1.0});
  CHECK(cclose(p1.derivative().eval(1.0) / p1.eval(1.0), 0.5, 1e-15));

  // P = (z+1)(z+2) at z = i: Re f = 0.9
  const UniPoly p2({2.0, 3.0, 1.0});
  const cplx f = p2.derivative().eval({0.0, 1.0}) / p2.eval({0.0, 1.0});
  CHECK(close(f.real(), 0.9, 1e-12));

  const SamplingReport rep = strong_gl_check(p2, 4096, 5);
  CHECK(rep.pass);
  CHECK(rep.min_value > 0.0);

  // root at Re = +0.1 violates the precondition
  CHECK_THROWS_AS(strong_gl_check(poly_from_roots({cplx{0.1, 0.4}, -1.0})),
                  NotHalfPlaneFree);
}

TEST_CASE("strong gauss-lucas never sees nonpositive real part") {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> ud(1, 10);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<cplx> rs(ud(rng));
    for (auto& z : rs) z = cplx(-std::abs(u(rng)) - 1e-3, 2.0 * u(rng));
    const SamplingReport rep = strong_gl_check(poly_from_roots(rs), 10000,
                                               1000 + trial);
    CHECK(rep.pass);
  }
}

TEST_CASE("disk ratio check") {
  // closed-form value at z = 1/2 for A = B = 1
  {
    const cplx z{0.5, 0.0};
    const cplx ratio = (z - 1.0 / z) / (z + 1.0 / z);
    CHECK(close(ratio.real(), (0.25 - 4.0) / std::norm(z + 1.0 / z), 1e-15));
    CHECK(ratio.real() < 0.0);
  }
  CHECK(disk_ratio_check(1.0, 1.0, 1.0, 4096, 7).pass);

  // A = 0: the ratio is identically -1
  const SamplingReport trivial = disk_ratio_check(0.0, {0.3, 0.1}, 2.0, 64, 7);
  CHECK(trivial.pass);
  CHECK(close(trivial.min_value, -1.0, 1e-15));

  CHECK_THROWS_AS(disk_ratio_check(1.0, 0.5, 1.0), VanishingInDisk);
}

TEST_CASE("cayley and alpha") {
  CHECK(cclose(cayley(1.0), 0.0, 1e-15));
  CHECK(cclose(cayley(3.0), -0.5, 1e-15));
  CHECK(close(std::abs(cayley(cplx{0.0, 1.0})), 1.0, 1e-15));
  CHECK_THROWS_AS(cayley(-1.0), PoleAtMinusOne);

  CHECK(close(alpha(1.0), 1.0, 1e-15));
  CHECK(close(alpha(3.0), 3.0, 1e-15));
  const double s5 = std::sqrt(5.0);
  CHECK(close(alpha(cplx{1.0, 1.0}), (s5 + 1.0) / (s5 - 1.0), 1e-12));
  CHECK_THROWS_AS(alpha(cplx{0.0, 1.0}), NotInRightHalfPlane);

  // alpha(h) = (1+|z(h)|)/(1-|z(h)|)
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const cplx h(0.05 + 3.0 * u(rng), 6.0 * (u(rng) - 0.5));
    const double az = std::abs(cayley(h));
    CHECK(close(alpha(h), (1.0 + az) / (1.0 - az), 1e-10));
  }
}

TEST_CASE("caratheodory bound") {
  CHECK(close(caratheodory_bound(1.0, 0.0), 1.0, 1e-15));
  CHECK(close(caratheodory_bound(1.0, 0.5), 3.0, 1e-15));
  CHECK(close(caratheodory_bound(2.0, cplx{0.0, 1.0 / 3.0}), 4.0, 1e-12));

  // oracle family: f(z) = c (1-z)/(1+z) + d has Re f > 0 and real f(0)
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double c = u(rng), d = 0.1 + u(rng);
    const cplx z = std::polar(0.95 * std::sqrt(u(rng)), 2.0 * M_PI * u(rng));
    const cplx f = c * (1.0 - z) / (1.0 + z) + d;
    CHECK(std::abs(f) <= caratheodory_bound(c + d, z) + 1e-12);
  }
}

TEST_CASE("borel-caratheodory bound") {
  // f = z at r = 1/2: bound 2 dominates max |f| = 1/2
  CHECK(close(borel_caratheodory_bound(1.0, 0.0, 0.5), 2.0, 1e-15));
  // constants: bound >= c
  CHECK(borel_caratheodory_bound(0.7, 0.7, 0.3) >= 0.7);

  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    std::vector<cplx> coeffs(2 + static_cast<int>(u(rng) * 6));
    for (auto& cc : coeffs) cc = testutil::random_unit_box(rng);
    const UniPoly f(std::move(coeffs));
    if (f.is_zero()) continue;
    double max_re = -1e300;
    for (int k = 0; k < 2048; ++k)
      max_re = std::max(max_re, f.eval(std::polar(1.0, 2.0 * M_PI * k / 2048)).real());
    const double r = 0.1 + 0.8 * u(rng);
    const double bound = borel_caratheodory_bound(max_re, f.eval(0.0), r);
    for (int k = 0; k < 512; ++k) {
      const cplx z = std::polar(r * u(rng), 2.0 * M_PI * u(rng));
      CHECK(std::abs(f.eval(z)) <= bound + 1e-9);
    }
  }
}

TEST_CASE("taylor tail bound") {
  CHECK(close(taylor_tail_bound(1.0, 1.0, 2, 0.5), 0.5, 1e-15));
  CHECK(0.5 >= 0.25);  // dominates |z^2| at |z| = 1/2
  CHECK(close(taylor_tail_bound(2.0, 1.0, 0, 0.5), 4.0, 1e-15));
  CHECK(close(taylor_tail_bound(1.0, 1.0, 3, 0.3), 0.027 / 0.7, 1e-12));
  // f = z^3/(1-z) on the unit disk saturates the K = 3 tail bound at real z
  const cplx z{0.3, 0.0};
  CHECK(std::abs(z * z * z / (1.0 - z)) <= taylor_tail_bound(1.0, 1.0, 3, z) + 1e-15);
  CHECK_THROWS_AS(taylor_tail_bound(1.0, 1.0, 2, 1.5), OutsideDisk);
}

TEST_CASE("alpha sandwich for Herglotz-type functions") {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const int terms = 1 + static_cast<int>(u(rng) * 4);
    std::vector<double> cs(terms), ths(terms);
    double g1 = 0.0;
    for (int t = 0; t < terms; ++t) {
      cs[t] = 0.1 + u(rng);
      ths[t] = 2.0 * M_PI * u(rng);
      g1 += cs[t];  // g at h = 1 (z = 0) is the real sum of weights
    }
    const cplx h(0.05 + 3.0 * u(rng), 6.0 * (u(rng) - 0.5));
    const cplx z = cayley(h);
    cplx g = 0.0;
    for (int t = 0; t < terms; ++t) {
      const cplx e = std::polar(1.0, ths[t]);
      g += cs[t] * (e + z) / (e - z);
    }
    const double a = alpha(h);
    CHECK(std::abs(g) >= g1 / a - 1e-10);
    CHECK(std::abs(g) <= a * g1 + 1e-10);
  }
}

TEST_CASE("disk to half-plane transport") {
  // roots of D on the unit circle land on the imaginary axis
  const UniPoly d({1.0, 2.0 * std::exp(-0.6), 1.0});
  const UniPoly p = disk_to_halfplane(d);
  for (const cplx u : roots(p)) CHECK(std::abs(u.real()) <= 1e-9);

  // the strong check applies after transport
  CHECK(strong_gl_check(p, 2048, 3).pass);
}
