#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "leeyang/analysis.hpp"
#include "leeyang/asano.hpp"
#include "testutil.hpp"

using namespace leeyang;
using testutil::close;

TEST_CASE("factor radius") {
  CHECK(close(factor_radius(2, 0.0), 0.25, 1e-15));
  CHECK(close(factor_radius(2, 1.0), 0.25 * std::exp(-2.0), 1e-15));
  CHECK(close(factor_radius(3, 0.0), 0.125, 1e-15));
  CHECK_THROWS_AS(factor_radius(2, -0.1), Error);
}

TEST_CASE("contract_model on a single bond") {
  const double beta = 0.6;
  const InteractionSpec spec(2, {{VarSet::of({0, 1}), beta}},
                             DiscreteEvenMeasure::spin_half());
  const auto [poly, cert] = contract_model(spec, beta);
  CHECK(max_coeff_diff(poly, fugacity_poly(spec)) <= 1e-14);

  const double r = factor_radius(2, beta);
  REQUIRE(cert.radii.size() == 2);
  CHECK(close(cert.radii[0], r, 1e-15));
  CHECK(close(cert.radii[1], r, 1e-15));

  // diagonal 1 + 2 e^-2b z + z^2 has both roots at modulus 1 >= r
  for (const cplx z : roots(poly.diagonal())) {
    CHECK(close(std::abs(z), 1.0, 1e-10));
    CHECK(std::abs(z) >= r);
  }
}

TEST_CASE("disjoint bonds neither share radii nor couple") {
  const double beta = 0.25;
  const InteractionSpec spec(
      4, {{VarSet::of({0, 1}), beta}, {VarSet::of({2, 3}), beta}},
      DiscreteEvenMeasure::spin_half());
  const auto [poly, cert] = contract_model(spec, beta);
  const double r = factor_radius(2, beta);
  for (const double rad : cert.radii) CHECK(close(rad, r, 1e-15));
  // product structure: coefficient of z0 z2 is e^-2b * e^-2b
  CHECK(close(std::abs(poly.coeff(VarSet::of({0, 2}))),
              std::exp(-4.0 * beta), 1e-13));
}

TEST_CASE("ring certificate radii compose multiplicatively") {
  const double beta = 0.3;
  const InteractionSpec ring = make_ring(6, beta, DiscreteEvenMeasure::spin_half());
  const auto [poly, cert] = contract_model(ring, beta);
  const double r2 = factor_radius(2, beta) * factor_radius(2, beta);
  for (const double rad : cert.radii) CHECK(close(rad, r2, 1e-14));
  CHECK(max_coeff_diff(poly, fugacity_poly(ring)) <= 1e-12);

  // every diagonal root stays outside the certified radius
  for (const cplx z : roots(poly.diagonal())) CHECK(std::abs(z) >= r2 - 1e-9);
}

TEST_CASE("contraction on a 2D torus") {
  const double beta = 0.25;
  std::vector<Coupling> cs;
  const int L = 3;
  for (int x = 0; x < L; ++x)
    for (int y = 0; y < L; ++y) {
      const int s = x * L + y;
      cs.push_back({VarSet::of({s, x * L + (y + 1) % L}), beta});
      cs.push_back({VarSet::of({s, ((x + 1) % L) * L + y}), beta});
    }
  const InteractionSpec torus(L * L, cs, DiscreteEvenMeasure::spin_half(),
                              Geometry{{L, L}, true});
  const auto [poly, cert] = contract_model(torus, beta);
  CHECK(max_coeff_diff(poly, fugacity_poly(torus)) <= 1e-12);

  // each site sits in 4 bonds
  const double r4 = std::pow(factor_radius(2, beta), 4);
  for (const double r : cert.radii) CHECK(close(r, r4, 1e-15));

  CHECK(audit_certificate(torus, cert, 128, 13).pass);
}

TEST_CASE("contract equals enumeration on a random corpus") {
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<int> un(2, 8);
  for (int trial = 0; trial < 50; ++trial) {
    const InteractionSpec spec =
        trial % 2 ? testutil::random_multibody_spec(rng, un(rng), 0.0, 1.0, 2)
                  : testutil::random_pair_spec(rng, un(rng), 0.0, 1.0);
    std::vector<double> j0;
    for (const auto& c : spec.couplings()) j0.push_back(std::abs(c.strength));
    const auto [poly, cert] = contract_model(spec, j0);
    const MultiAffinePoly reference = fugacity_poly(spec);
    double scale = 0.0;
    for (const auto& [k, v] : reference.coeffs())
      scale = std::max(scale, std::abs(v));
    CHECK(max_coeff_diff(poly, reference) <= 1e-12 * std::max(1.0, scale));
  }
}

TEST_CASE("soundness: no diagonal root inside the certificate") {
  std::mt19937_64 rng(66);
  std::uniform_int_distribution<int> un(3, 12);
  for (int trial = 0; trial < 25; ++trial) {
    const InteractionSpec spec =
        testutil::random_multibody_spec(rng, un(rng), 0.0, 0.8, 2);
    std::vector<double> j0;
    for (const auto& c : spec.couplings()) j0.push_back(std::abs(c.strength));
    const auto [poly, cert] = contract_model(spec, j0);
    const double rmin = cert.min_radius();
    for (const cplx z : roots(poly.diagonal()))
      CHECK(std::abs(z) >= rmin - 1e-9);
  }
}

TEST_CASE("radius monotonicity in J0") {
  const InteractionSpec spec(3,
                             {{VarSet::of({0, 1}), 0.2}, {VarSet::of({1, 2}), 0.2}},
                             DiscreteEvenMeasure::spin_half());
  const auto [p1, c1] = contract_model(spec, 0.2);
  const auto [p2, c2] = contract_model(spec, 0.5);
  for (std::size_t i = 0; i < c1.radii.size(); ++i)
    CHECK(c2.radii[i] < c1.radii[i]);
  CHECK(factor_radius(2, 0.5) < factor_radius(2, 0.2));
}

TEST_CASE("lee-yang circle specialization for pair ferromagnets") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> un(3, 10);
  for (int trial = 0; trial < 20; ++trial) {
    const InteractionSpec spec =
        testutil::random_pair_spec(rng, un(rng), 0.05, 1.0);
    for (const cplx z : roots(fugacity_poly(spec).diagonal()))
      CHECK(close(std::abs(z), 1.0, 1e-8));
  }
}

TEST_CASE("certify_region") {
  const double beta = 0.4;
  const InteractionSpec ring = make_ring(6, beta, DiscreteEvenMeasure::spin_half());
  const AnalyticityRegion reg = certify_region(ring, beta);
  CHECK(close(reg.h_radius, std::exp(-2.0 * beta) / 8.0, 1e-14));

  // 2D torus: q = 4 halves the ring radius again
  std::vector<Coupling> cs;
  const int L = 4;
  for (int x = 0; x < L; ++x)
    for (int y = 0; y < L; ++y) {
      const int s = x * L + y;
      cs.push_back({VarSet::of({s, x * L + (y + 1) % L}), beta});
      cs.push_back({VarSet::of({s, ((x + 1) % L) * L + y}), beta});
    }
  const InteractionSpec torus(L * L, cs, DiscreteEvenMeasure::spin_half(),
                              Geometry{{L, L}, true});
  CHECK(close(certify_region(torus, beta).h_radius,
              std::exp(-2.0 * beta) / 16.0, 1e-14));

  const InteractionSpec none(3, {}, DiscreteEvenMeasure::spin_half());
  CHECK_THROWS_AS(certify_region(none, 0.1), NoCouplings);
}

TEST_CASE("audit certificate") {
  const double beta = 0.4;
  const InteractionSpec ring = make_ring(6, beta, DiscreteEvenMeasure::spin_half());
  auto [poly, cert] = contract_model(ring, beta);
  const AuditReport good = audit_certificate(ring, cert, 256, 9);
  CHECK(good.pass);
  CHECK(good.min_root_modulus >= good.min_radius - 1e-9);

  // inflating the radii past the unit circle plants the roots inside
  ZeroFreeCertificate inflated = cert;
  for (double& r : inflated.radii) r *= 10.0 / cert.min_radius();
  const AuditReport bad = audit_certificate(ring, inflated, 256, 9);
  CHECK_FALSE(bad.pass);

  // free spins: radii 1, roots exactly at -1 (boundary PASS)
  const InteractionSpec free3(3, {}, DiscreteEvenMeasure::spin_half());
  const auto [fp, fc] = contract_model(free3, std::vector<double>{});
  for (const double r : fc.radii) CHECK(close(r, 1.0, 1e-15));
  CHECK(audit_certificate(free3, fc, 128, 9).pass);
}

TEST_CASE("epsilon-rho search") {
  // J(B) = 0 keeps every diagonal root at -1, so eps > 0 for any rho < 1
  CHECK(epsilon_rho_search(2, 0.5, 1e-4) > 0.0);
  CHECK(epsilon_rho_search(3, 0.5, 1e-4) > 0.0);

  // |B| = 2, rho = 0.5: binding constraint is real negative J where
  // e^2eps = (0.5 + 2)/2, i.e. eps = log(1.25)/2
  const double eps = epsilon_rho_search(2, 0.5, 1e-5);
  CHECK(close(eps, 0.5 * std::log(1.25), 1e-3));

  // monotone decrease toward rho -> 1; eps(0.99) is ~2.5e-5, so the
  // bisection tolerance must resolve it
  const double e1 = epsilon_rho_search(2, 0.5, 1e-6);
  const double e2 = epsilon_rho_search(2, 0.9, 1e-6);
  const double e3 = epsilon_rho_search(2, 0.99, 1e-6);
  CHECK(e1 > e2);
  CHECK(e2 > e3);
  CHECK(e3 > 0.0);
}
