#include "leeyang/multiaffine.hpp"

#include <cmath>

namespace leeyang {

MultiAffinePoly::MultiAffinePoly(int nvars) : nvars_(nvars) {
  if (nvars < 0 || nvars > kMaxVars)
    throw Error("MultiAffinePoly: nvars must be in [0, 63]");
}

MultiAffinePoly::MultiAffinePoly(int nvars, std::map<std::uint64_t, cplx> coeffs)
    : nvars_(nvars), coeffs_(std::move(coeffs)) {
  if (nvars < 0 || nvars > kMaxVars)
    throw Error("MultiAffinePoly: nvars must be in [0, 63]");
  const std::uint64_t allowed =
      nvars == kMaxVars ? ~std::uint64_t{0} >> 1 : (std::uint64_t{1} << nvars) - 1;
  for (const auto& [key, c] : coeffs_)
    if (key & ~allowed) throw Error("MultiAffinePoly: key outside variable range");
  canonicalize();
}

MultiAffinePoly MultiAffinePoly::constant(int nvars, cplx c) {
  MultiAffinePoly p(nvars);
  p.set_coeff(VarSet{}, c);
  return p;
}

cplx MultiAffinePoly::coeff(VarSet key) const {
  auto it = coeffs_.find(key.bits);
  return it == coeffs_.end() ? cplx{0.0} : it->second;
}

void MultiAffinePoly::set_coeff(VarSet key, cplx c) {
  if (!key.empty() && 63 - __builtin_clzll(key.bits) >= nvars_)
    throw Error("MultiAffinePoly: key outside variable range");
  if (std::abs(c) < kPrune)
    coeffs_.erase(key.bits);
  else
    coeffs_[key.bits] = c;
}

std::uint64_t MultiAffinePoly::support_mask() const {
  std::uint64_t m = 0;
  for (const auto& [key, c] : coeffs_) m |= key;
  return m;
}

cplx MultiAffinePoly::eval(const std::vector<cplx>& assignment) const {
  if (static_cast<int>(assignment.size()) != nvars_)
    throw LengthMismatch("eval: assignment length != nvars");
  cplx sum = 0.0;
  for (const auto& [key, c] : coeffs_) {
    cplx term = c;
    for (std::uint64_t b = key; b;) {
      term *= assignment[__builtin_ctzll(b)];
      b &= b - 1;
    }
    sum += term;
  }
  return sum;
}

UniPoly MultiAffinePoly::diagonal() const {
  std::vector<cplx> out(static_cast<std::size_t>(nvars_) + 1, cplx{0.0});
  for (const auto& [key, c] : coeffs_) out[__builtin_popcountll(key)] += c;
  return UniPoly(std::move(out));
}

MultiAffinePoly MultiAffinePoly::partial(int j) const {
  if (j < 0 || j >= nvars_) throw Error("partial: variable index out of range");
  MultiAffinePoly out(nvars_);
  const std::uint64_t jb = std::uint64_t{1} << j;
  for (const auto& [key, c] : coeffs_)
    if (key & jb) out.coeffs_[key & ~jb] = c;
  out.canonicalize();
  return out;
}

void MultiAffinePoly::canonicalize() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (std::abs(it->second) < kPrune)
      it = coeffs_.erase(it);
    else
      ++it;
  }
}

MultiAffinePoly mul(const MultiAffinePoly& p, const MultiAffinePoly& q) {
  if (p.nvars() != q.nvars()) throw LengthMismatch("mul: nvars mismatch");
  if (p.support_mask() & q.support_mask())
    throw OverlappingSupport("mul: factors share a variable");
  std::map<std::uint64_t, cplx> out;
  for (const auto& [kx, cx] : p.coeffs())
    for (const auto& [ky, cy] : q.coeffs()) out[kx | ky] += cx * cy;
  return MultiAffinePoly(p.nvars(), std::move(out));
}

MultiAffinePoly contract(const MultiAffinePoly& p, int x, int y) {
  if (x == y) throw SameVariable("contract: x == y");
  if (x < 0 || y < 0 || x >= p.nvars() || y >= p.nvars())
    throw Error("contract: variable index out of range");
  const std::uint64_t xb = std::uint64_t{1} << x;
  const std::uint64_t yb = std::uint64_t{1} << y;
  std::map<std::uint64_t, cplx> out;
  for (const auto& [key, c] : p.coeffs()) {
    const bool hx = key & xb, hy = key & yb;
    if (hx != hy) continue;           // mixed terms are dropped
    out[key & ~yb] += c;              // both -> x only; neither -> unchanged
  }
  return MultiAffinePoly(p.nvars(), std::move(out));
}

double max_coeff_diff(const MultiAffinePoly& a, const MultiAffinePoly& b) {
  double m = 0.0;
  for (const auto& [key, c] : a.coeffs()) m = std::max(m, std::abs(c - b.coeff(VarSet(key))));
  for (const auto& [key, c] : b.coeffs()) m = std::max(m, std::abs(c - a.coeff(VarSet(key))));
  return m;
}

}  // namespace leeyang
