// Finitely-supported even apriori measures on a lattice grid, their Laplace
// transforms as palindromic polynomials, and PN classification by root
// location. Continuous measures are out of scope: on a grid of step delta the
// transform E(z) is a Laurent polynomial in w = e^(delta z), so "no zeros
// with Re z > 0" becomes "all w-roots on the unit circle" and is decidable.
#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "leeyang/errors.hpp"
#include "leeyang/unipoly.hpp"

namespace leeyang {

using cplx = std::complex<double>;

class DiscreteEvenMeasure {
 public:
  struct Atom {
    int step;       // position = step * delta, step >= 1
    double weight;  // weight of the atom at +position (mirrored at -position)
  };

  /// Builds the measure from positive-half atom positions. Positions must be
  /// (close to) integer multiples of a common step, inferred as a floating
  /// GCD when delta is not given. Weights are normalized so that
  /// 2*sum(weights) + weight_at_zero = 1.
  DiscreteEvenMeasure(const std::vector<std::pair<double, double>>& positive_atoms,
                      double weight_at_zero,
                      std::optional<double> delta = std::nullopt);

  static DiscreteEvenMeasure spin_half();
  /// Equal-weight spin S with 2S+1 levels, S a positive multiple of 1/2.
  static DiscreteEvenMeasure spin_s(double s);

  double delta() const { return delta_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  double weight_at_zero() const { return weight_at_zero_; }

  /// Max |x| in the support (0 when only the origin carries mass).
  double support_max() const;
  bool is_spin_half() const;

  /// Support points ascending and their weights; used by spin enumeration.
  std::vector<double> support_points() const;
  std::vector<double> support_weights() const;

  /// E(h)-style moment: sum over all support points of x^power e^(h x) w(x).
  cplx moment(cplx h, int power) const;

 private:
  double delta_;
  std::vector<Atom> atoms_;  // ascending step, duplicates merged
  double weight_at_zero_;
};

/// The palindromic polynomial Q with E(z) = w^-M Q(w), w = e^(delta z),
/// M = max atom step. Q's coefficient vector is symmetric.
UniPoly laplace_poly(const DiscreteEvenMeasure& mu);

struct PNVerdict {
  bool is_pn = false;
  double max_circle_deviation = 0.0;     // max | |w-root| - 1 |
  std::optional<cplx> witness;           // E-zero with Re != 0 when not PN
};

/// PN iff every root of laplace_poly lies within tol of the unit circle.
/// Throws DegenerateMeasure when Q is constant (no positive atoms).
PNVerdict pn_check(const DiscreteEvenMeasure& mu, double tol = 1e-8);

/// sum x^power e^(h x) dmu(x) over the full (mirrored) support.
cplx site_moment(const DiscreteEvenMeasure& mu, cplx h, int power);

/// L = site_moment(mu,1,1) / site_moment(mu,1,0), the single-spin mean at
/// unit field.
double L_constant(const DiscreteEvenMeasure& mu);

}  // namespace leeyang
