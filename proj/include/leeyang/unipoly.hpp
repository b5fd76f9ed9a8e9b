// Dense one-variable polynomials with complex coefficients, ascending degree.
#pragma once

#include <complex>
#include <vector>

namespace leeyang {

struct UniPoly {
  std::vector<std::complex<double>> coeffs;  // coeffs[k] multiplies z^k

  UniPoly() = default;
  explicit UniPoly(std::vector<std::complex<double>> c) : coeffs(std::move(c)) {
    trim();
  }

  /// Degree after trimming; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }

  std::complex<double> eval(std::complex<double> z) const;
  UniPoly derivative() const;

  /// Largest coefficient magnitude (0 for the zero polynomial).
  double coeff_scale() const;

  /// Drop leading coefficients of magnitude < 1e-300.
  void trim();
};

}  // namespace leeyang
