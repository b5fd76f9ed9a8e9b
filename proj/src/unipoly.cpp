#include "leeyang/unipoly.hpp"

#include <cmath>

namespace leeyang {

std::complex<double> UniPoly::eval(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (coeffs.size() <= 1) return UniPoly{};
  std::vector<std::complex<double>> d(coeffs.size() - 1);
  for (std::size_t k = 1; k < coeffs.size(); ++k)
    d[k - 1] = coeffs[k] * static_cast<double>(k);
  return UniPoly(std::move(d));
}

double UniPoly::coeff_scale() const {
  double m = 0.0;
  for (const auto& c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

void UniPoly::trim() {
  while (!coeffs.empty() && std::abs(coeffs.back()) < 1e-300) coeffs.pop_back();
}

}  // namespace leeyang
