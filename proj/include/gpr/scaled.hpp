#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace gpr {

using cd = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// A complex number stored as mantissa * exp(exponent).  All transforms of
// Gaussian-type signals produce values of this shape; keeping the exponent
// separate lets growth estimates at large radius work far beyond the range
// of a double, while value() collapses to a plain complex at desk scale.
struct scaled_complex {
  cd mantissa{0.0, 0.0};
  cd exponent{0.0, 0.0};

  static scaled_complex zero() { return {}; }
  static scaled_complex from_value(cd v) { return {v, cd{0.0, 0.0}}; }

  bool is_zero() const { return mantissa == cd{0.0, 0.0}; }

  cd value() const { return is_zero() ? cd{0.0, 0.0} : mantissa * std::exp(exponent); }

  // log|.|; -inf for an exact zero.
  double log_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(mantissa)) + exponent.real();
  }

  scaled_complex operator*(const scaled_complex& o) const {
    if (is_zero() || o.is_zero()) return zero();
    return {mantissa * o.mantissa, exponent + o.exponent};
  }
  scaled_complex operator*(cd s) const {
    if (s == cd{0.0, 0.0} || is_zero()) return zero();
    return {mantissa * s, exponent};
  }
};

// Sum of scaled values.  Terms are rebased onto the largest real exponent so
// the mantissa arithmetic never overflows; relative phases are preserved.
inline scaled_complex scaled_sum(const std::vector<scaled_complex>& terms) {
  double emax = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms)
    if (!t.is_zero()) emax = std::max(emax, t.exponent.real());
  if (!std::isfinite(emax)) return scaled_complex::zero();
  cd base{0.0, 0.0};
  cd acc{0.0, 0.0};
  bool base_set = false;
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    if (!base_set && t.exponent.real() == emax) {
      base = t.exponent;
      base_set = true;
    }
  }
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    acc += t.mantissa * std::exp(t.exponent - base);
  }
  if (acc == cd{0.0, 0.0}) return scaled_complex::zero();
  return {acc, base};
}

}  // namespace gpr
