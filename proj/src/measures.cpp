#include "leeyang/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "leeyang/analysis.hpp"

namespace leeyang {

namespace {

// Floating GCD with 1e-9 rounding, for inferring the grid step.
double fgcd(double a, double b) {
  a = std::abs(a);
  b = std::abs(b);
  while (b > 1e-9) {
    const double r = std::fmod(a, b);
    a = b;
    b = (r > b - 1e-9) ? 0.0 : r;  // fmod can return ~b from rounding
  }
  return a;
}

}  // namespace

DiscreteEvenMeasure::DiscreteEvenMeasure(
    const std::vector<std::pair<double, double>>& positive_atoms,
    double weight_at_zero, std::optional<double> delta) {
  if (weight_at_zero < 0.0) throw Error("measure: negative weight at zero");
  double d = delta.value_or(0.0);
  for (const auto& [x, w] : positive_atoms) {
    if (x <= 0.0) throw Error("measure: atom positions must be positive");
    if (w <= 0.0) throw Error("measure: atom weights must be positive");
    if (!delta) d = fgcd(d, x);
  }
  if (positive_atoms.empty()) d = delta.value_or(1.0);
  if (d <= 0.0) throw Error("measure: grid step must be positive");
  delta_ = d;

  std::map<int, double> merged;
  for (const auto& [x, w] : positive_atoms) {
    const double ratio = x / delta_;
    const int step = static_cast<int>(std::lround(ratio));
    if (step < 1 || std::abs(ratio - step) > 1e-6)
      throw Error("measure: atom position is not a multiple of the grid step");
    merged[step] += w;
  }

  double total = weight_at_zero;
  for (const auto& [s, w] : merged) total += 2.0 * w;
  if (total <= 0.0) throw Error("measure: zero total mass");
  weight_at_zero_ = weight_at_zero / total;
  atoms_.reserve(merged.size());
  for (const auto& [s, w] : merged) atoms_.push_back({s, w / total});
}

DiscreteEvenMeasure DiscreteEvenMeasure::spin_half() {
  return DiscreteEvenMeasure({{1.0, 0.5}}, 0.0, 1.0);
}

DiscreteEvenMeasure DiscreteEvenMeasure::spin_s(double s) {
  const int twos = static_cast<int>(std::lround(2.0 * s));
  if (twos < 1 || std::abs(2.0 * s - twos) > 1e-9)
    throw Error("spin_s: s must be a positive multiple of 1/2");
  const double w = 1.0 / (twos + 1);
  std::vector<std::pair<double, double>> atoms;
  if (twos % 2 == 0) {  // integer spin: levels 0, +-1, ..., +-s
    for (int k = 1; k <= twos / 2; ++k) atoms.push_back({static_cast<double>(k), w});
    return DiscreteEvenMeasure(atoms, w, 1.0);
  }
  for (int k = 1; k <= twos; k += 2)  // half-integer: +-1/2, ..., +-s
    atoms.push_back({0.5 * k, w});
  return DiscreteEvenMeasure(atoms, 0.0, 0.5);
}

double DiscreteEvenMeasure::support_max() const {
  return atoms_.empty() ? 0.0 : atoms_.back().step * delta_;
}

bool DiscreteEvenMeasure::is_spin_half() const {
  return atoms_.size() == 1 && weight_at_zero_ < 1e-15 &&
         std::abs(atoms_[0].step * delta_ - 1.0) < 1e-12 &&
         std::abs(atoms_[0].weight - 0.5) < 1e-12;
}

std::vector<double> DiscreteEvenMeasure::support_points() const {
  std::vector<double> pts;
  for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it)
    pts.push_back(-it->step * delta_);
  if (weight_at_zero_ > 0.0) pts.push_back(0.0);
  for (const auto& a : atoms_) pts.push_back(a.step * delta_);
  return pts;
}

std::vector<double> DiscreteEvenMeasure::support_weights() const {
  std::vector<double> ws;
  for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) ws.push_back(it->weight);
  if (weight_at_zero_ > 0.0) ws.push_back(weight_at_zero_);
  for (const auto& a : atoms_) ws.push_back(a.weight);
  return ws;
}

cplx DiscreteEvenMeasure::moment(cplx h, int power) const {
  return site_moment(*this, h, power);
}

UniPoly laplace_poly(const DiscreteEvenMeasure& mu) {
  const int m = mu.atoms().empty() ? 0 : mu.atoms().back().step;
  std::vector<cplx> q(static_cast<std::size_t>(2 * m) + 1, cplx{0.0});
  q[m] = mu.weight_at_zero();
  for (const auto& a : mu.atoms()) {
    q[m + a.step] += a.weight;
    q[m - a.step] += a.weight;
  }
  return UniPoly(std::move(q));
}

PNVerdict pn_check(const DiscreteEvenMeasure& mu, double tol) {
  if (tol <= 0.0) throw Error("pn_check: tol must be positive");
  const UniPoly q = laplace_poly(mu);
  if (q.degree() < 1)
    throw DegenerateMeasure("pn_check: Laplace polynomial is constant");

  PNVerdict v;
  cplx worst;
  for (const cplx w : roots(q)) {
    const double dev = std::abs(std::abs(w) - 1.0);
    if (dev >= v.max_circle_deviation) {
      v.max_circle_deviation = dev;
      worst = w;
    }
  }
  v.is_pn = v.max_circle_deviation <= tol;
  if (!v.is_pn) v.witness = std::log(worst) / mu.delta();  // an E-zero off the axis
  return v;
}

cplx site_moment(const DiscreteEvenMeasure& mu, cplx h, int power) {
  if (power < 0) throw Error("site_moment: power must be >= 0");
  cplx sum = 0.0;
  if (mu.weight_at_zero() > 0.0 && power == 0) sum += mu.weight_at_zero();
  for (const auto& a : mu.atoms()) {
    const double x = a.step * mu.delta();
    const double xp = std::pow(x, power);
    sum += a.weight * (xp * std::exp(h * x) +
                       xp * (power % 2 ? -1.0 : 1.0) * std::exp(-h * x));
  }
  return sum;
}

double L_constant(const DiscreteEvenMeasure& mu) {
  const cplx num = site_moment(mu, 1.0, 1);
  const cplx den = site_moment(mu, 1.0, 0);
  return num.real() / den.real();
}

}  // namespace leeyang
