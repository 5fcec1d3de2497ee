#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gpr/moments.hpp"
#include "gpr/signal.hpp"

namespace gpr {

// ---------------------------------------------------------------------------
// Closed-form transforms.  Every operation reduces to poly_gauss_integral
// per atom; no quadrature anywhere.
// ---------------------------------------------------------------------------

inline cd atom_eval(const poly_gauss_atom& a, cd s) { return a.eval(s); }

// <f, g> = integral f conj(g): per atom pair the integrand is again a
// poly-Gauss atom with parameters (g1 + conj g2, b1 + conj b2, d1 + conj d2).
inline scaled_complex inner_product_scaled(const signal& f, const signal& g) {
  std::vector<scaled_complex> terms;
  terms.reserve(f.atoms.size() * g.atoms.size());
  for (const auto& af : f.atoms) {
    for (const auto& ag : g.atoms) {
      const auto agc = ag.conjugated();
      const cd a = af.gamma + agc.gamma;
      if (a.real() <= 0.0)
        throw std::domain_error("inner_product: combined quadratic exponent has Re <= 0");
      std::vector<cd> poly(af.poly.size() + agc.poly.size() - 1, cd{0.0, 0.0});
      for (std::size_t i = 0; i < af.poly.size(); ++i)
        for (std::size_t j = 0; j < agc.poly.size(); ++j) poly[i + j] += af.poly[i] * agc.poly[j];
      terms.push_back(poly_gauss_integral(poly, a, af.beta + agc.beta, af.delta + agc.delta));
    }
  }
  return scaled_sum(terms);
}

inline cd inner_product(const signal& f, const signal& g) { return inner_product_scaled(f, g).value(); }

inline double norm(const signal& f) {
  if (f.empty()) return 0.0;
  const double n2 = inner_product(f, f).real();
  return n2 > 0.0 ? std::sqrt(n2) : 0.0;
}

// V_phi f(t,w) = integral f(s) exp(-pi (s-t)^2) exp(-2 pi i s w) ds.
inline scaled_complex gabor_scaled(const signal& f, double t, double w) {
  std::vector<scaled_complex> terms;
  terms.reserve(f.atoms.size());
  const cd iw{0.0, w};
  for (const auto& a : f.atoms)
    terms.push_back(poly_gauss_integral(a.poly, a.gamma + 1.0, a.beta + t - iw, a.delta - pi * t * t));
  return scaled_sum(terms);
}

inline cd gabor(const signal& f, double t, double w) { return gabor_scaled(f, t, w).value(); }

// hat h_f(z) = integral exp(-pi s^2) f(s) exp(-2 pi i s z) ds, entire in z.
inline scaled_complex hat_h_scaled(const signal& f, cd z) {
  std::vector<scaled_complex> terms;
  terms.reserve(f.atoms.size());
  const cd iz = cd{0.0, 1.0} * z;
  for (const auto& a : f.atoms)
    terms.push_back(poly_gauss_integral(a.poly, a.gamma + 1.0, a.beta - iz, a.delta));
  return scaled_sum(terms);
}

inline cd hat_h(const signal& f, cd z) { return hat_h_scaled(f, z).value(); }

// Bargmann transform Bf(z) = 2^{1/4} integral f(s) exp(2 pi s z - pi s^2 - pi z^2/2) ds.
inline scaled_complex bargmann_scaled(const signal& f, cd z) {
  std::vector<scaled_complex> terms;
  terms.reserve(f.atoms.size());
  for (const auto& a : f.atoms)
    terms.push_back(poly_gauss_integral(a.poly, a.gamma + 1.0, a.beta + z, a.delta - pi * z * z / 2.0));
  return scaled_sum(terms) * std::pow(2.0, 0.25);
}

inline cd bargmann(const signal& f, cd z) { return bargmann_scaled(f, z).value(); }

// Entire extension F_f of x |-> |hat h_f(z0 + x e^{i theta})|^2.  Writing
// f~ for the modulation of f by exp(-2 pi i s z0), the double integral over
// (s, t) factors:
//   F_f(z) = hat h_{f~}(z e^{i theta}) * hat h_{conj f~}(-z e^{-i theta}),
// and on the real axis the second factor is the conjugate of the first.
inline scaled_complex ff_extension_scaled(const signal& f, double theta, cd z0, cd z) {
  const cd i{0.0, 1.0};
  const signal ft = f.modulated(-i * z0);
  const cd ez = std::exp(i * theta);
  return hat_h_scaled(ft, z * ez) * hat_h_scaled(ft.conjugated(), -z / ez);
}

inline cd ff_extension(const signal& f, double theta, cd z0, cd z) {
  return ff_extension_scaled(f, theta, z0, z).value();
}

// |V_phi f| over a point list, order preserved.
template <typename PointRange>
inline std::vector<std::pair<std::pair<double, double>, double>> magnitude_samples(const signal& f,
                                                                                   const PointRange& pts) {
  std::vector<std::pair<std::pair<double, double>, double>> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back({{p.first, p.second}, std::abs(gabor(f, p.first, p.second))});
  return out;
}

// ---------------------------------------------------------------------------
// Hermite basis.  h_n(s) = c_n H_n(sqrt(2 pi) s) exp(-pi s^2) with the
// constants picked so <h_n, h_m> = delta_{nm}; h_0 = 2^{1/4} phi.
// ---------------------------------------------------------------------------
inline std::vector<signal> hermite_basis(int n_funcs) {
  std::vector<signal> basis;
  basis.reserve(n_funcs);
  std::vector<cd> prev;                       // scaled polynomial of h_{n-1}
  std::vector<cd> cur{cd{std::pow(2.0, 0.25), 0.0}};  // h_0
  const double s2pi = std::sqrt(2.0 * pi);
  for (int n = 0; n < n_funcs; ++n) {
    poly_gauss_atom a;
    a.poly = cur;
    basis.push_back(signal{{a}, 1});
    // normalized recurrence: p_{n+1} = sqrt(2/(n+1)) sqrt(2 pi) s p_n - sqrt(n/(n+1)) p_{n-1}
    std::vector<cd> next(cur.size() + 1, cd{0.0, 0.0});
    const double c1 = std::sqrt(2.0 / (n + 1.0)) * s2pi;
    for (std::size_t k = 0; k < cur.size(); ++k) next[k + 1] += c1 * cur[k];
    if (!prev.empty()) {
      const double c2 = std::sqrt(n / (n + 1.0));
      for (std::size_t k = 0; k < prev.size(); ++k) next[k] -= c2 * prev[k];
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Inverse map for Gaussian-shaped hat h.  Given q, l, logC with
// |q - pi/2| < pi/2 there is exactly one Gaussian atom p with
//   hat h_p(z) = C exp(-q z^2 + l z),
// namely gamma = pi/q - 1, beta = i l / (2 q),
// delta = log C + (1/2) log(pi/q) - q beta^2.
// This is the constructive replacement for the Fock-space existence step:
// the admissible disk |q - pi/2| < pi/2 is the image of {Re gamma > 0}.
// ---------------------------------------------------------------------------
inline signal signal_from_hat_gaussian(cd q, cd l, cd log_c) {
  const cd i{0.0, 1.0};
  if (std::abs(q - cd{pi / 2.0, 0.0}) >= pi / 2.0)
    throw std::domain_error("signal_from_hat_gaussian: q outside the disk |q - pi/2| < pi/2 (not L^2)");
  poly_gauss_atom a;
  a.gamma = pi / q - 1.0;
  a.beta = i * l / (2.0 * q);
  a.delta = log_c + 0.5 * (std::log(pi) - std::log(q)) - q * a.beta * a.beta;
  signal f{{a}, 1};
  f.validate();
  return f;
}

// ---------------------------------------------------------------------------
// Separable transforms for multivariate signals.
// ---------------------------------------------------------------------------
inline scaled_complex gabor_scaled(const multi_signal& f, const std::vector<double>& t,
                                   const std::vector<double>& w) {
  if (static_cast<int>(t.size()) != f.dim() || static_cast<int>(w.size()) != f.dim())
    throw std::invalid_argument("gabor: point dimension does not match the signal");
  scaled_complex v = scaled_complex::from_value(cd{1.0, 0.0});
  for (int d = 0; d < f.dim(); ++d) v = v * gabor_scaled(f.factors[d], t[d], w[d]);
  return v;
}

inline cd gabor(const multi_signal& f, const std::vector<double>& t, const std::vector<double>& w) {
  return gabor_scaled(f, t, w).value();
}

inline cd inner_product(const multi_signal& f, const multi_signal& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("inner_product: dimension mismatch");
  cd v{1.0, 0.0};
  for (int d = 0; d < f.dim(); ++d) v *= inner_product(f.factors[d], g.factors[d]);
  return v;
}

inline double norm(const multi_signal& f) {
  double n2 = 1.0;
  for (const auto& g : f.factors) {
    const double x = norm(g);
    n2 *= x * x;
  }
  return std::sqrt(n2);
}

}  // namespace gpr
