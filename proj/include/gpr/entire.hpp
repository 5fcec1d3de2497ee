#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "gpr/scaled.hpp"
#include "gpr/signal.hpp"

namespace gpr {

// ---------------------------------------------------------------------------
// Truncated power series (Taylor coefficients, ascending).
// ---------------------------------------------------------------------------
struct power_series {
  std::vector<cd> coeffs;

  cd eval(cd z) const {
    cd v{0.0, 0.0};
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * z + coeffs[k];
    return v;
  }
};

// f_k(z) = m z^k sum_n a_{m n + k} z^{m n}: the residue class k mod m of the
// coefficient sequence, scaled by m.  Summing over k recovers m * f.
inline power_series residue_component(const power_series& f, int m, int k) {
  if (m < 1 || k < 0 || k >= m) throw std::invalid_argument("residue_component: need 0 <= k < m");
  power_series out;
  out.coeffs.assign(f.coeffs.size(), cd{0.0, 0.0});
  for (std::size_t idx = static_cast<std::size_t>(k); idx < f.coeffs.size(); idx += m)
    out.coeffs[idx] = static_cast<double>(m) * f.coeffs[idx];
  return out;
}

// g_k(z) = m sum_n a_{m n + k} z^{n + 1}; satisfies g_k(z^m) = z^{m-k} f_k(z).
inline power_series g_series(const power_series& f, int m, int k) {
  if (m < 1 || k < 0 || k >= m) throw std::invalid_argument("g_series: need 0 <= k < m");
  power_series out;
  std::size_t terms = 0;
  for (std::size_t idx = static_cast<std::size_t>(k); idx < f.coeffs.size(); idx += m) ++terms;
  out.coeffs.assign(terms + 1, cd{0.0, 0.0});
  std::size_t n = 0;
  for (std::size_t idx = static_cast<std::size_t>(k); idx < f.coeffs.size(); idx += m, ++n)
    out.coeffs[n + 1] = static_cast<double>(m) * f.coeffs[idx];
  return out;
}

// ---------------------------------------------------------------------------
// Elementary factors E_0(z) = 1 - z, E_k(z) = (1-z) exp(z + ... + z^k / k).
// ---------------------------------------------------------------------------
inline cd elementary_factor(int k, cd z) {
  if (k < 0) throw std::invalid_argument("elementary_factor: k >= 0");
  cd expo{0.0, 0.0};
  cd zp{1.0, 0.0};
  for (int j = 1; j <= k; ++j) {
    zp *= z;
    expo += zp / static_cast<double>(j);
  }
  return (1.0 - z) * std::exp(expo);
}

// Complex log of E_p(u) (any branch; only exp and Re are consumed).
inline cd log_elementary_factor(int p, cd u) {
  cd expo{0.0, 0.0};
  cd up{1.0, 0.0};
  for (int j = 1; j <= p; ++j) {
    up *= u;
    expo += up / static_cast<double>(j);
  }
  return std::log(1.0 - u) + expo;
}

// ---------------------------------------------------------------------------
// Zero sets.  The optional power tail records that the sequence continues
// past the stored prefix with |z_n| >= scale * n^power; it is what makes the
// truncation bound of a canonical product a certificate instead of a guess.
// ---------------------------------------------------------------------------
struct power_tail {
  double scale = 1.0;
  double power = 1.0;
};

struct zero_set {
  std::vector<cd> zeros;  // nonzero, sorted by modulus
  int origin_multiplicity = 0;
  std::optional<power_tail> tail;

  void sort_by_modulus() {
    std::stable_sort(zeros.begin(), zeros.end(),
                     [](const cd& u, const cd& v) { return std::abs(u) < std::abs(v); });
  }
  void validate() const {
    for (const auto& z : zeros)
      if (z == cd{0.0, 0.0})
        throw std::invalid_argument("zero_set: explicit zeros must be nonzero (use origin_multiplicity)");
  }
};

struct product_result {
  scaled_complex value;
  double tail_log_bound = 0.0;  // |log of the omitted tail| certified bound
  bool exact_zero = false;
};

// Canonical product prod E_p(z / z_n) over the stored zeros, exact in log
// space, plus a certified bound on the omitted tail when a power tail is
// declared.  Uses |log E_p(u)| <= 2 |u|^{p+1} for |u| <= 1/2; stored factors
// are always multiplied exactly whatever their modulus.
inline product_result canonical_product(const zero_set& zs, int p, cd z, double tail_tol = 1e-6) {
  if (p < 0) throw std::invalid_argument("canonical_product: genus must be >= 0");
  product_result res;
  const std::size_t n_stored = zs.zeros.size();
  cd log_acc{0.0, 0.0};
  for (const auto& zn : zs.zeros) {
    const cd u = z / zn;
    if (u == cd{1.0, 0.0}) {
      res.exact_zero = true;  // a listed zero is exact whatever the tail does
      res.value = scaled_complex::zero();
      return res;
    }
    log_acc += log_elementary_factor(p, u);
  }
  if (zs.origin_multiplicity > 0 && z == cd{0.0, 0.0}) {
    res.exact_zero = true;
    res.value = scaled_complex::zero();
    return res;
  }
  if (zs.tail) {
    const double az = std::abs(z);
    const double start = zs.tail->scale * std::pow(static_cast<double>(n_stored + 1), zs.tail->power);
    const double pw = zs.tail->power * (p + 1);
    if (pw <= 1.0)
      throw std::invalid_argument("canonical_product: declared tail does not converge at this genus");
    if (az > 0.5 * start) {
      // the |u| <= 1/2 bound does not apply past the stored zeros
      res.tail_log_bound = std::numeric_limits<double>::infinity();
    } else {
      // 2 sum_{n > N} (|z| / (scale n^power))^{p+1} <= 2 (|z|/scale)^{p+1} N^{1-pw} / (pw - 1)
      res.tail_log_bound = 2.0 * std::pow(az / zs.tail->scale, static_cast<double>(p + 1)) *
                           std::pow(static_cast<double>(n_stored), 1.0 - pw) / (pw - 1.0);
    }
    if (res.tail_log_bound > tail_tol)
      throw std::invalid_argument("canonical_product: tail bound exceeds the requested tolerance; supply more zeros");
  }
  res.value = scaled_complex{cd{1.0, 0.0}, log_acc};
  if (zs.origin_multiplicity > 0)
    res.value = res.value * scaled_complex{cd{1.0, 0.0}, static_cast<double>(zs.origin_multiplicity) * std::log(z)};
  return res;
}

// log|prod E_p(z/z_n)| without complex logs; the fast path for the growth
// estimators (they only consume magnitudes).  Returns -inf at a zero.
inline double canonical_log_abs(const zero_set& zs, int p, cd z) {
  double acc = 0.0;
  for (const auto& zn : zs.zeros) {
    const cd u = z / zn;
    const double n1u = std::norm(1.0 - u);
    if (n1u == 0.0) return -std::numeric_limits<double>::infinity();
    double re_poly = 0.0;
    cd up{1.0, 0.0};
    for (int j = 1; j <= p; ++j) {
      up *= u;
      re_poly += up.real() / static_cast<double>(j);
    }
    acc += 0.5 * std::log(n1u) + re_poly;
  }
  if (zs.origin_multiplicity > 0) {
    const double az = std::abs(z);
    if (az == 0.0) return -std::numeric_limits<double>::infinity();
    acc += zs.origin_multiplicity * std::log(az);
  }
  return acc;
}

// log|prod (1 - z^4 / lambda_n^4)|, same contract.
inline double quartic_log_abs(const std::vector<double>& lambdas, cd z) {
  const cd z4 = z * z * z * z;
  double acc = 0.0;
  for (double lam : lambdas) {
    const double l4 = lam * lam * lam * lam;
    const double nf = std::norm(1.0 - z4 / l4);
    if (nf == 0.0) return -std::numeric_limits<double>::infinity();
    acc += 0.5 * std::log(nf);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Convergence exponent and genus from a finite sample of moduli.
// ---------------------------------------------------------------------------
struct convergence_result {
  double exponent = 0.0;
  int genus = 0;
  bool low_confidence = false;
};

inline convergence_result convergence_exponent(const zero_set& zs) {
  convergence_result res;
  const std::size_t n = zs.zeros.size();
  if (n < 2) throw std::invalid_argument("convergence_exponent: need at least 2 zeros");
  res.low_confidence = n < 100;
  std::vector<double> mod(n);
  for (std::size_t i = 0; i < n; ++i) mod[i] = std::abs(zs.zeros[i]);
  std::sort(mod.begin(), mod.end());
  // slope of log n against log |z_n| over the top decade of moduli
  const double mmax = mod.back();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (mod[i] < mmax / 10.0 || mod[i] <= 0.0) continue;
    const double x = std::log(mod[i]);
    const double y = std::log(static_cast<double>(i + 1));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++used;
  }
  if (used < 2) throw std::invalid_argument("convergence_exponent: moduli do not span a usable window");
  const double un = static_cast<double>(used);
  const double denom = un * sxx - sx * sx;
  res.exponent = std::abs(denom) > 1e-30 ? (un * sxy - sx * sy) / denom : 0.0;
  if (res.exponent < 0.0) res.exponent = 0.0;

  // genus: smallest integer alpha whose partial sums look convergent —
  // the second half of the sample must contribute a vanishing share.
  int alpha = 0;
  for (int cand = 1; cand <= 16; ++cand) {
    double s_half = 0.0, s_full = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double term = std::pow(mod[i], -static_cast<double>(cand));
      s_full += term;
      if (i < n / 2) s_half += term;
    }
    if (s_full - s_half < 0.05 * s_full) {
      alpha = cand;
      break;
    }
  }
  if (alpha == 0) throw std::invalid_argument("convergence_exponent: no genus <= 15 detected");
  res.genus = alpha - 1;
  return res;
}

// ---------------------------------------------------------------------------
// Growth estimators.  All of them consume log |F| evaluations, so functions
// of order 2 can be probed at radii where the values themselves overflow.
// Every estimator is a declared finite-grid proxy for a limsup.
// ---------------------------------------------------------------------------
using log_abs_fn = std::function<double(cd)>;

struct indicator_result {
  double value = 0.0;
  bool truncated = false;  // non-finite evaluations were skipped
  std::vector<double> grid_used;
};

// max over the top half of the grid of log|F(r e^{i theta})| / r^rho.
inline indicator_result indicator_estimate(const log_abs_fn& f, double rho, double theta,
                                           const std::vector<double>& r_grid) {
  if (r_grid.size() < 2) throw std::invalid_argument("indicator_estimate: need at least 2 radii");
  indicator_result res;
  res.value = -std::numeric_limits<double>::infinity();
  const cd dir = std::exp(cd{0.0, theta});
  for (std::size_t i = r_grid.size() / 2; i < r_grid.size(); ++i) {
    const double r = r_grid[i];
    const double la = f(r * dir);
    if (!std::isfinite(la)) {
      res.truncated = true;
      continue;
    }
    res.grid_used.push_back(r);
    res.value = std::max(res.value, la / std::pow(r, rho));
  }
  if (res.grid_used.empty()) throw std::invalid_argument("indicator_estimate: no finite evaluations on the grid");
  return res;
}

struct order_type_result {
  double order = 0.0;
  double type = 0.0;
  bool truncated = false;
};

// log max-modulus on the circle of radius r, scanned over equispaced angles.
inline double log_max_modulus(const log_abs_fn& f, double r, int angles = 256) {
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < angles; ++k) {
    const double th = 2.0 * pi * k / angles;
    const double la = f(r * std::exp(cd{0.0, th}));
    if (std::isfinite(la)) best = std::max(best, la);
  }
  return best;
}

// type proxy at a fixed order: max over the top decade of log M(r) / r^rho.
inline double type_estimate(const log_abs_fn& f, double rho, const std::vector<double>& r_grid,
                            int angles = 256) {
  double best = -std::numeric_limits<double>::infinity();
  const double rmax = *std::max_element(r_grid.begin(), r_grid.end());
  for (double r : r_grid) {
    if (r < rmax / 10.0) continue;
    const double lm = log_max_modulus(f, r, angles);
    if (std::isfinite(lm)) best = std::max(best, lm / std::pow(r, rho));
  }
  return best;
}

inline order_type_result order_type_estimate(const log_abs_fn& f, const std::vector<double>& r_grid,
                                             int angles = 256) {
  if (r_grid.size() < 3) throw std::invalid_argument("order_type_estimate: need at least 3 radii");
  order_type_result res;
  std::vector<std::pair<double, double>> pts;  // (log r, log log M)
  const double rmax = *std::max_element(r_grid.begin(), r_grid.end());
  for (double r : r_grid) {
    if (r < rmax / 10.0) continue;
    const double lm = log_max_modulus(f, r, angles);
    if (!std::isfinite(lm)) {
      res.truncated = true;
      continue;
    }
    if (lm <= 1.0) continue;  // below the loglog regime
    pts.push_back({std::log(r), std::log(lm)});
  }
  if (pts.size() < 2) throw std::invalid_argument("order_type_estimate: too few usable radii");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  res.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  res.type = type_estimate(f, res.order, r_grid, angles);
  return res;
}

// Gap criterion: with H measured at pi/4, 5pi/4, -pi/4, -5pi/4 and spacing a,
// vanishing on a Z^{1/2} forces f == 0 iff
//   max(H(pi/4), H(5pi/4)) + max(H(-pi/4), H(-5pi/4)) < 2 pi / a^2 (strictly).
inline bool carlson_gap(double h_quarter, double h_5quarter, double h_neg_quarter, double h_neg5quarter,
                        double a) {
  if (a <= 0.0) throw std::invalid_argument("carlson_gap: a must be > 0");
  return std::max(h_quarter, h_5quarter) + std::max(h_neg_quarter, h_neg5quarter) < 2.0 * pi / (a * a);
}

// ---------------------------------------------------------------------------
// prod (1 - z^4 / lambda_n^4): the genus-2 four-ray product collapses to this
// closed form.  Tail certified from the fitted uniform density of lambda_n.
// ---------------------------------------------------------------------------
inline product_result quartic_line_product(const std::vector<double>& lambdas, cd z,
                                           double tail_tol = 1e-3) {
  if (lambdas.empty()) throw std::invalid_argument("quartic_line_product: empty zero sequence");
  for (std::size_t i = 1; i < lambdas.size(); ++i)
    if (lambdas[i] <= lambdas[i - 1])
      throw std::invalid_argument("quartic_line_product: lambdas must be strictly increasing");
  product_result res;
  const cd z4 = z * z * z * z;
  cd log_acc{0.0, 0.0};
  for (double lam : lambdas) {
    const double l4 = lam * lam * lam * lam;
    const cd factor = 1.0 - z4 / l4;
    if (factor == cd{0.0, 0.0}) {
      res.exact_zero = true;
      res.value = scaled_complex::zero();
      return res;
    }
    log_acc += std::log(factor);
  }
  // certified tail: |z|^4 / lam^4 <= 1/2 past the stored prefix, and
  // lam_n >= a_min n^{1/2} with a_min fitted on the last quarter.
  const std::size_t n = lambdas.size();
  double a_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = (3 * n) / 4; i < n; ++i)
    a_min = std::min(a_min, lambdas[i] / std::sqrt(static_cast<double>(i + 1)));
  const double az = std::abs(z);
  if (az > 0.5 * lambdas.back())
    throw std::invalid_argument("quartic_line_product: |z| too large for the stored zeros (need |z| <= lambda_N / 2)");
  const double q = std::pow(az / a_min, 4.0);
  res.tail_log_bound = 2.0 * q / static_cast<double>(n);
  if (res.tail_log_bound > tail_tol)
    throw std::invalid_argument("quartic_line_product: tail bound exceeds the requested tolerance");
  res.value = scaled_complex{cd{1.0, 0.0}, log_acc};
  return res;
}

// ---------------------------------------------------------------------------
// Serialization.
// ---------------------------------------------------------------------------
inline ordered_json to_json(const power_series& f) {
  ordered_json coeffs = ordered_json::array();
  for (const auto& c : f.coeffs) coeffs.push_back(complex_to_json(c));
  return ordered_json{{"coeffs", coeffs}};
}

inline power_series power_series_from_json(const ordered_json& j) {
  power_series f;
  for (const auto& c : j.at("coeffs")) f.coeffs.push_back(complex_from_json(c));
  return f;
}

inline ordered_json to_json(const zero_set& zs) {
  ordered_json zeros = ordered_json::array();
  for (const auto& z : zs.zeros) zeros.push_back(complex_to_json(z));
  ordered_json j{{"zeros", zeros}, {"origin_multiplicity", zs.origin_multiplicity}};
  if (zs.tail) j["tail"] = {{"scale", zs.tail->scale}, {"power", zs.tail->power}};
  return j;
}

inline zero_set zero_set_from_json(const ordered_json& j) {
  zero_set zs;
  for (const auto& z : j.at("zeros")) zs.zeros.push_back(complex_from_json(z));
  zs.origin_multiplicity = j.value("origin_multiplicity", 0);
  if (j.contains("tail")) zs.tail = power_tail{j["tail"].at("scale").get<double>(), j["tail"].at("power").get<double>()};
  zs.validate();
  return zs;
}

}  // namespace gpr
