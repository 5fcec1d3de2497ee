#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpr/scaled.hpp"

namespace gpr {

using ordered_json = nlohmann::ordered_json;

// One term P(s) * exp(-pi gamma s^2 + 2 pi beta s + delta).  The class is
// closed under products, conjugation on the real line, complex translation
// and every transform used here, which is what makes exact evaluation work.
struct poly_gauss_atom {
  std::vector<cd> poly{cd{1.0, 0.0}};  // ascending degree
  cd gamma{1.0, 0.0};
  cd beta{0.0, 0.0};
  cd delta{0.0, 0.0};

  bool in_l2() const { return gamma.real() > 0.0; }

  void trim() {
    while (!poly.empty() && poly.back() == cd{0.0, 0.0}) poly.pop_back();
  }

  cd eval(cd s) const {
    cd p{0.0, 0.0};
    for (std::size_t k = poly.size(); k-- > 0;) p = p * s + poly[k];
    return p * std::exp(-pi * gamma * s * s + 2.0 * pi * beta * s + delta);
  }

  // s |-> conj(atom(conj(s))); agrees with pointwise conjugation on the real line.
  poly_gauss_atom conjugated() const {
    poly_gauss_atom a;
    a.poly.resize(poly.size());
    for (std::size_t k = 0; k < poly.size(); ++k) a.poly[k] = std::conj(poly[k]);
    a.gamma = std::conj(gamma);
    a.beta = std::conj(beta);
    a.delta = std::conj(delta);
    return a;
  }

  // atom(s - u) as an atom (complex shift; polynomial part recomposed).
  poly_gauss_atom shifted(cd u) const {
    poly_gauss_atom a;
    a.gamma = gamma;
    // exp(-pi g (s-u)^2 + 2 pi b (s-u) + d)
    //   = exp(-pi g s^2 + 2 pi (b + g u) s + d - pi g u^2 - 2 pi b u)
    a.beta = beta + gamma * u;
    a.delta = delta - pi * gamma * u * u - 2.0 * pi * beta * u;
    // P(s-u) by synthetic recomposition
    a.poly.assign(poly.size(), cd{0.0, 0.0});
    std::vector<cd> pw{cd{1.0, 0.0}};  // (s-u)^k coefficients
    for (std::size_t k = 0; k < poly.size(); ++k) {
      for (std::size_t j = 0; j < pw.size(); ++j) a.poly[j] += poly[k] * pw[j];
      if (k + 1 < poly.size()) {
        pw.push_back(cd{0.0, 0.0});
        for (std::size_t j = pw.size(); j-- > 1;) pw[j] = pw[j - 1] - u * pw[j];
        pw[0] = -u * pw[0];
      }
    }
    return a;
  }
};

struct signal {
  std::vector<poly_gauss_atom> atoms;
  int dim = 1;

  static signal zero() { return {}; }

  // Gaussian window phi(s) = exp(-pi s^2).
  static signal gaussian() {
    signal f;
    f.atoms.push_back(poly_gauss_atom{});
    return f;
  }

  bool empty() const { return atoms.empty(); }

  cd eval(cd s) const {
    cd v{0.0, 0.0};
    for (const auto& a : atoms) v += a.eval(s);
    return v;
  }

  signal conjugated() const {
    signal g;
    g.dim = dim;
    g.atoms.reserve(atoms.size());
    for (const auto& a : atoms) g.atoms.push_back(a.conjugated());
    return g;
  }

  signal scaled_by(cd s) const {
    signal g = *this;
    if (s == cd{0.0, 0.0}) return zero();
    for (auto& a : g.atoms)
      for (auto& c : a.poly) c *= s;
    return g;
  }

  signal operator+(const signal& o) const {
    signal g = *this;
    g.atoms.insert(g.atoms.end(), o.atoms.begin(), o.atoms.end());
    return g;
  }

  // Multiply every exponent by exp(2 pi w s): the modulation used to house
  // f~(s) = exp(-2 pi i s z0) f(s).
  signal modulated(cd w) const {
    signal g = *this;
    for (auto& a : g.atoms) a.beta += w;
    return g;
  }

  void validate() const {
    for (const auto& a : atoms) {
      if (!a.in_l2())
        throw std::domain_error("signal: atom has Re gamma = " + std::to_string(a.gamma.real()) +
                                " <= 0 and is not square integrable");
      if (static_cast<int>(a.poly.size()) - 1 > 64)
        throw std::invalid_argument("signal: polynomial degree above 64 is not supported");
    }
  }
};

// Separable d-dimensional signal: product of one-dimensional factors.
struct multi_signal {
  std::vector<signal> factors;

  int dim() const { return static_cast<int>(factors.size()); }
};

inline ordered_json complex_to_json(cd z) { return ordered_json::array({z.real(), z.imag()}); }

inline cd complex_from_json(const ordered_json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("complex value must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline ordered_json to_json(const poly_gauss_atom& a) {
  ordered_json poly = ordered_json::array();
  for (const auto& c : a.poly) poly.push_back(complex_to_json(c));
  return ordered_json{{"poly", poly},
                      {"gamma", complex_to_json(a.gamma)},
                      {"beta", complex_to_json(a.beta)},
                      {"delta", complex_to_json(a.delta)}};
}

inline poly_gauss_atom atom_from_json(const ordered_json& j) {
  poly_gauss_atom a;
  a.poly.clear();
  for (const auto& c : j.at("poly")) a.poly.push_back(complex_from_json(c));
  a.gamma = complex_from_json(j.at("gamma"));
  a.beta = complex_from_json(j.at("beta"));
  a.delta = complex_from_json(j.at("delta"));
  return a;
}

inline ordered_json to_json(const signal& f) {
  ordered_json atoms = ordered_json::array();
  for (const auto& a : f.atoms) atoms.push_back(to_json(a));
  return ordered_json{{"dim", f.dim}, {"atoms", atoms}};
}

inline signal signal_from_json(const ordered_json& j) {
  signal f;
  f.dim = j.at("dim").get<int>();
  for (const auto& a : j.at("atoms")) f.atoms.push_back(atom_from_json(a));
  f.validate();
  return f;
}

inline ordered_json to_json(const multi_signal& f) {
  ordered_json factors = ordered_json::array();
  for (const auto& g : f.factors) factors.push_back(to_json(g));
  return ordered_json{{"dim", f.dim()}, {"factors", factors}};
}

inline multi_signal multi_signal_from_json(const ordered_json& j) {
  multi_signal f;
  for (const auto& g : j.at("factors")) f.factors.push_back(signal_from_json(g));
  return f;
}

}  // namespace gpr
