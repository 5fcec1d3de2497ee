#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gpr/scaled.hpp"

namespace gpr {

// Highest polynomial degree the moment recurrence supports.
inline constexpr int max_poly_degree = 64;

// Reduced Gaussian moments J_k(a,b) defined by
//   integral s^k exp(-pi a s^2 + 2 pi b s) ds = exp(pi b^2 / a) * J_k(a,b),
// valid for Re a > 0.  J_0 = a^{-1/2} and the three-term recurrence
//   J_{k+1} = (b/a) J_k + k/(2 pi a) J_{k-1}
// follows from integrating d/ds[s^k exp(...)] over the line.  Iterative on
// purpose: no factorials, stable up to max_poly_degree.
inline std::vector<cd> gauss_moments(cd a, cd b, int kmax) {
  if (a.real() <= 0.0)
    throw std::domain_error("gauss_moments: quadratic exponent needs Re a > 0, got Re a = " +
                            std::to_string(a.real()));
  if (kmax > max_poly_degree)
    throw std::invalid_argument("gauss_moments: polynomial degree " + std::to_string(kmax) +
                                " exceeds the supported maximum " + std::to_string(max_poly_degree));
  std::vector<cd> j(static_cast<std::size_t>(kmax) + 1);
  j[0] = 1.0 / std::sqrt(a);
  if (kmax >= 1) j[1] = (b / a) * j[0];
  for (int k = 1; k < kmax; ++k)
    j[static_cast<std::size_t>(k) + 1] = (b / a) * j[static_cast<std::size_t>(k)] +
                                         (static_cast<double>(k) / (2.0 * pi * a)) * j[static_cast<std::size_t>(k) - 1];
  return j;
}

// integral P(s) exp(-pi A s^2 + 2 pi B s) ds * exp(extra), as a scaled value.
inline scaled_complex poly_gauss_integral(const std::vector<cd>& poly, cd a, cd b, cd extra) {
  if (poly.empty()) return scaled_complex::zero();
  const auto j = gauss_moments(a, b, static_cast<int>(poly.size()) - 1);
  cd m{0.0, 0.0};
  for (std::size_t k = 0; k < poly.size(); ++k) m += poly[k] * j[k];
  if (m == cd{0.0, 0.0}) return scaled_complex::zero();
  return {m, extra + pi * b * b / a};
}

}  // namespace gpr
