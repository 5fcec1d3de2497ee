#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gpr/entire.hpp"
#include "gpr/sampling.hpp"
#include "gpr/transforms.hpp"

namespace gpr {

// ---------------------------------------------------------------------------
// Entire multipliers Q that take real values on the Gamma* of a sampling
// geometry.  Each variant matches one construction family.
// ---------------------------------------------------------------------------

// Q(z) = exp{c e^{i alpha} (z - z0)^2}, 0 < c < pi.
struct chirp_exp {
  double c = 0.0;
  double alpha = 0.0;
  cd z0{0.0, 0.0};
};

// Q(z) = exp{n pi (z - z3) e^{-i theta0} / d1}.
struct line_exp {
  long long n = 1;
  double d1 = 1.0;
  cd z3{0.0, 0.0};
  double theta0 = 0.0;
};

// Q(z) = sum_{j=0}^{2q-1} exp{(z - z0) e^{-i (theta2 + p j pi / q)}}.
struct rational_angle_sum {
  long long p = 1;
  long long q = 1;
  double theta2 = 0.0;
  cd z0{0.0, 0.0};
};

// Q = canonical product over a zero set covering Gamma*.
struct canonical_q {
  zero_set zeros;
  int genus = 1;
};

using q_multiplier = std::variant<chirp_exp, line_exp, rational_angle_sum, canonical_q>;

inline void validate(const chirp_exp& q) {
  if (!(q.c > 0.0 && q.c < pi))
    throw std::invalid_argument("chirp_exp: need 0 < c < pi, got c = " + std::to_string(q.c));
}

inline scaled_complex q_eval(const q_multiplier& q, cd z) {
  if (const auto* ch = std::get_if<chirp_exp>(&q)) {
    const cd d = z - ch->z0;
    return scaled_complex{cd{1.0, 0.0}, ch->c * std::exp(cd{0.0, ch->alpha}) * d * d};
  }
  if (const auto* le = std::get_if<line_exp>(&q)) {
    const cd w = static_cast<double>(le->n) * pi * std::exp(cd{0.0, -le->theta0}) / le->d1;
    return scaled_complex{cd{1.0, 0.0}, w * (z - le->z3)};
  }
  if (const auto* rs = std::get_if<rational_angle_sum>(&q)) {
    std::vector<scaled_complex> terms;
    terms.reserve(static_cast<std::size_t>(2 * rs->q));
    for (long long j = 0; j < 2 * rs->q; ++j) {
      const double phase = rs->theta2 + static_cast<double>(rs->p * j) * pi / static_cast<double>(rs->q);
      terms.push_back(scaled_complex{cd{1.0, 0.0}, (z - rs->z0) * std::exp(cd{0.0, -phase})});
    }
    return scaled_sum(terms);
  }
  const auto& cq = std::get<canonical_q>(q);
  return canonical_product(cq.zeros, cq.genus, z, std::numeric_limits<double>::infinity()).value;
}

struct realness_report {
  double max_imag_ratio = 0.0;
  cd worst_point{0.0, 0.0};
  bool pass = true;
};

// max over Gamma* of |Im Q| / (1 + |Q|), evaluated in scaled space so that
// exponentially large Q degrades to |sin(arg Q)| instead of overflowing.
inline realness_report q_realness_check(const q_multiplier& q, const std::vector<cd>& gs, double tol) {
  realness_report rep;
  for (const auto& z : gs) {
    const scaled_complex v = q_eval(q, z);
    double ratio = 0.0;
    if (!v.is_zero()) {
      const double la = v.log_abs();
      const double arg = std::arg(v.mantissa) + v.exponent.imag();
      const double s = std::abs(std::sin(arg));
      const double frac = la > 0.0 ? 1.0 / (1.0 + std::exp(-la)) : std::exp(la) / (1.0 + std::exp(la));
      ratio = s * frac;
    }
    if (ratio > rep.max_imag_ratio) {
      rep.max_imag_ratio = ratio;
      rep.worst_point = z;
    }
  }
  rep.pass = rep.max_imag_ratio <= tol;
  return rep;
}

// ---------------------------------------------------------------------------
// Named parameterizations of the chirp multiplier on two square-root
// rays through z0 with directions theta1, theta2 (spacing a > 1):
//   case 3: alpha = pi/2 - t1 - t2, c a^2 |cos(t1 - t2)| = pi
//   case 4: alpha = -t1 - t2,       c a^2 |sin(t1 - t2)| = pi
//   case 5: alpha = -2 t2,          c a^2 |sin(2 t1 - 2 t2)| = pi
// ---------------------------------------------------------------------------
inline chirp_exp chirp_for_intersecting(int variant, double theta1, double theta2, double a, cd z0) {
  double trig, alpha;
  switch (variant) {
    case 3:
      trig = std::abs(std::cos(theta1 - theta2));
      alpha = pi / 2.0 - theta1 - theta2;
      break;
    case 4:
      trig = std::abs(std::sin(theta1 - theta2));
      alpha = -theta1 - theta2;
      break;
    case 5:
      trig = std::abs(std::sin(2.0 * (theta1 - theta2)));
      alpha = -2.0 * theta2;
      break;
    default:
      throw std::invalid_argument("chirp_for_intersecting: variant must be 3, 4 or 5");
  }
  if (trig * a * a <= 1.0)
    throw std::invalid_argument("chirp_for_intersecting: need a^2 * |trig(theta1 - theta2)| > 1");
  chirp_exp q{pi / (a * a * trig), alpha, z0};
  validate(q);
  return q;
}

// Three parallel square-root lines, anchors on the perpendicular through z3
// at distances a sqrt(n_l):  Q(z) = exp{i c e^{-2 i theta0} (z - z3)^2}, c = pi/a^2.
inline chirp_exp chirp_for_parallel(double theta0, double a, cd z3) {
  if (a <= 1.0) throw std::invalid_argument("chirp_for_parallel: need a > 1 so that c = pi/a^2 < pi");
  return chirp_exp{pi / (a * a), pi / 2.0 - 2.0 * theta0, z3};
}

// ---------------------------------------------------------------------------
// Counterexample pairs f1 = c1 p1 + c2 p2, f2 = conj(c1) p1 + conj(c2) p2
// with hat h_{p2} = Q hat h_{p1} holding exactly in closed form.
// ---------------------------------------------------------------------------
struct counterexample_pair {
  signal f1, f2;
  signal p1, p2;
  q_multiplier q;
  cd c1{1.0, 0.0}, c2{0.0, 1.0};
  std::string provenance;
  set_descriptor intended;
};

inline void validate_phases(cd c1, cd c2) {
  if (std::abs(std::abs(c1) - 1.0) > 1e-12 || std::abs(std::abs(c2) - 1.0) > 1e-12)
    throw std::invalid_argument("counterexample pair: c1, c2 must be unimodular");
  if (std::abs(std::imag(c1 * std::conj(c2))) < 1e-9)
    throw std::invalid_argument("counterexample pair: c1/c2 must not be real");
}

// Chirp multiplier pair.  hat h_{p1}(z) = exp{-pi z^2/2 - beta e^{i alpha}(z-z0)^2}
// with beta in (c - pi/2, pi/2); multiplying by Q shifts beta to beta - c.
// Both exponents stay inside the admissible disk, so both preimages are
// honest Gaussians.
inline counterexample_pair pair_from_chirp(const chirp_exp& q, cd c1 = cd{1.0, 0.0}, cd c2 = cd{0.0, 1.0},
                                           std::optional<double> beta_opt = std::nullopt) {
  validate(q);
  validate_phases(c1, c2);
  const double beta = beta_opt.value_or(q.c / 2.0);
  if (!(beta > q.c - pi / 2.0 && beta < pi / 2.0))
    throw std::invalid_argument("pair_from_chirp: beta must lie in (c - pi/2, pi/2)");
  const cd eia = std::exp(cd{0.0, q.alpha});
  auto hat_gauss = [&](double b) {
    const cd qq = pi / 2.0 + b * eia;
    const cd ll = 2.0 * b * eia * q.z0;
    const cd lc = -b * eia * q.z0 * q.z0;
    return signal_from_hat_gaussian(qq, ll, lc);
  };
  counterexample_pair out;
  out.q = q;
  out.c1 = c1;
  out.c2 = c2;
  out.p1 = hat_gauss(beta);
  out.p2 = hat_gauss(beta - q.c);
  out.f1 = out.p1.scaled_by(c1) + out.p2.scaled_by(c2);
  out.f2 = out.p1.scaled_by(std::conj(c1)) + out.p2.scaled_by(std::conj(c2));
  return out;
}

// Exponential-type multipliers via the shift law: multiplying hat h by
// exp{w z} translates h by u = i w / (2 pi) in the complex direction, and
// dividing the translated h by exp(-pi s^2) stays in class because the
// quadratic exponent is shift invariant.
inline counterexample_pair pair_from_exponential_q(const q_multiplier& q, double base_width = 1.0,
                                                   cd c1 = cd{1.0, 0.0}, cd c2 = cd{0.0, 1.0}) {
  validate_phases(c1, c2);
  if (base_width <= 0.0) throw std::invalid_argument("pair_from_exponential_q: base width must be > 0");
  std::vector<std::pair<cd, cd>> terms;  // (w, log prefactor)
  if (const auto* le = std::get_if<line_exp>(&q)) {
    const cd w = static_cast<double>(le->n) * pi * std::exp(cd{0.0, -le->theta0}) / le->d1;
    terms.push_back({w, -w * le->z3});
  } else if (const auto* rs = std::get_if<rational_angle_sum>(&q)) {
    for (long long j = 0; j < 2 * rs->q; ++j) {
      const double phase = rs->theta2 + static_cast<double>(rs->p * j) * pi / static_cast<double>(rs->q);
      const cd w = std::exp(cd{0.0, -phase});
      terms.push_back({w, -w * rs->z0});
    }
  } else {
    throw std::invalid_argument("pair_from_exponential_q: Q must be a line_exp or rational_angle_sum");
  }
  const double gamma1 = 1.0 / (base_width * base_width);
  counterexample_pair out;
  out.q = q;
  out.c1 = c1;
  out.c2 = c2;
  poly_gauss_atom base;
  base.gamma = gamma1;
  out.p1 = signal{{base}, 1};
  for (const auto& [w, logpref] : terms) {
    const cd u = cd{0.0, 1.0} * w / (2.0 * pi);
    poly_gauss_atom a;
    a.gamma = gamma1;  // (gamma1 + 1) from h, minus 1 from dividing out exp(-pi s^2)
    a.beta = (gamma1 + 1.0) * u;
    a.delta = -pi * (gamma1 + 1.0) * u * u + logpref;
    if (a.gamma.real() <= 0.0)
      throw std::invalid_argument("pair_from_exponential_q: translated atom leaves L^2 (Re gamma = " +
                                  std::to_string(a.gamma.real()) + " <= 0)");
    out.p2.atoms.push_back(a);
  }
  out.f1 = out.p1.scaled_by(c1) + out.p2.scaled_by(c2);
  out.f2 = out.p1.scaled_by(std::conj(c1)) + out.p2.scaled_by(std::conj(c2));
  return out;
}

// Square-root lattice pair: Q(z) = exp{-i c z^2} with a^2 c and b^2 c both
// in pi Z and 0 < c < pi.  c = k pi / a^2 for the smallest admissible k.
inline counterexample_pair lattice_pair(double a, double b, cd c1 = cd{1.0, 0.0}, cd c2 = cd{0.0, 1.0}) {
  if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("lattice_pair: need a, b > 0");
  std::optional<double> c_found;
  long long k_found = 0;
  for (long long k = 1; k <= 64; ++k) {
    const double c = static_cast<double>(k) * pi / (a * a);
    if (c >= pi * (1.0 - 1e-12)) break;
    const double m = b * b * c / pi;
    if (std::abs(m - std::round(m)) < 1e-9 && std::round(m) >= 1.0) {
      c_found = c;
      k_found = k;
      break;
    }
  }
  if (!c_found)
    throw std::invalid_argument("lattice_pair: no admissible c in (0, pi) with a^2 c and b^2 c in pi Z for a = " +
                                std::to_string(a) + ", b = " + std::to_string(b));
  chirp_exp q{*c_found, -pi / 2.0, cd{0.0, 0.0}};  // c e^{-i pi/2} = -i c
  counterexample_pair out = pair_from_chirp(q, c1, c2);
  out.provenance = "sqrt-lattice chirp pair (a=" + std::to_string(a) + ", b=" + std::to_string(b) +
                   ", c=" + std::to_string(k_found) + "*pi/a^2)";
  out.intended.kind = "sqrt-lattice";
  out.intended.a = a;
  out.intended.b = b;
  return out;
}

// Canonical-product multiplier vanishing on Gamma*: certifies the density
// necessity mechanism at the level of hat h.  No L^2 preimage pair is built
// for it; the magnitude identity on Gamma* is immediate from Q = 0 there.
struct low_density_result {
  canonical_q q;
  convergence_result growth;
  double density_estimate_value = 0.0;
  bool density_below_two = false;
};

inline low_density_result low_density_q(const std::vector<cd>& gs, std::optional<power_tail> tail,
                                        double density_est) {
  zero_set zs;
  for (const auto& z : gs) {
    if (z == cd{0.0, 0.0})
      ++zs.origin_multiplicity;
    else
      zs.zeros.push_back(z);
  }
  zs.sort_by_modulus();
  zs.tail = tail;
  low_density_result out;
  out.growth = convergence_exponent(zs);  // throws on too-short input
  out.q = canonical_q{std::move(zs), out.growth.genus};
  out.density_estimate_value = density_est;
  out.density_below_two = density_est < 2.0;
  return out;
}

// Separable d = 2 pair F_j(s1, s2) = f_j(s1) extra(s2).
inline std::pair<multi_signal, multi_signal> separable_pair(const counterexample_pair& pair,
                                                            const signal& extra) {
  if (extra.empty()) throw std::invalid_argument("separable_pair: extra factor must be nonzero");
  extra.validate();
  multi_signal f1{{pair.f1, extra}};
  multi_signal f2{{pair.f2, extra}};
  return {f1, f2};
}

// min over phases of ||f - e^{i a} g|| = sqrt(||f||^2 + ||g||^2 - 2 |<f,g>|).
inline double nonequivalence_distance(const signal& f, const signal& g) {
  if (f.empty() && g.empty()) return 0.0;
  const double nf2 = f.empty() ? 0.0 : inner_product(f, f).real();
  const double ng2 = g.empty() ? 0.0 : inner_product(g, g).real();
  const double cross = (f.empty() || g.empty()) ? 0.0 : std::abs(inner_product(f, g));
  const double d2 = nf2 + ng2 - 2.0 * cross;
  return d2 > 0.0 ? std::sqrt(d2) : 0.0;
}

inline double nonequivalence_distance(const multi_signal& f, const multi_signal& g) {
  const double nf2 = std::pow(norm(f), 2), ng2 = std::pow(norm(g), 2);
  const double cross = std::abs(inner_product(f, g));
  const double d2 = nf2 + ng2 - 2.0 * cross;
  return d2 > 0.0 ? std::sqrt(d2) : 0.0;
}

// ---------------------------------------------------------------------------
// Serialization.
// ---------------------------------------------------------------------------
inline ordered_json to_json(const q_multiplier& q) {
  if (const auto* ch = std::get_if<chirp_exp>(&q))
    return ordered_json{{"variant", "chirp-exp"}, {"c", ch->c}, {"alpha", ch->alpha}, {"z0", complex_to_json(ch->z0)}};
  if (const auto* le = std::get_if<line_exp>(&q))
    return ordered_json{{"variant", "line-exp"},
                        {"n", le->n},
                        {"d1", le->d1},
                        {"z3", complex_to_json(le->z3)},
                        {"theta0", le->theta0}};
  if (const auto* rs = std::get_if<rational_angle_sum>(&q))
    return ordered_json{{"variant", "rational-angle-sum"},
                        {"p", rs->p},
                        {"q", rs->q},
                        {"theta2", rs->theta2},
                        {"z0", complex_to_json(rs->z0)}};
  const auto& cq = std::get<canonical_q>(q);
  return ordered_json{{"variant", "canonical"}, {"genus", cq.genus}, {"zeros", to_json(cq.zeros)}};
}

inline q_multiplier q_multiplier_from_json(const ordered_json& j) {
  const std::string v = j.at("variant").get<std::string>();
  if (v == "chirp-exp")
    return chirp_exp{j.at("c").get<double>(), j.at("alpha").get<double>(), complex_from_json(j.at("z0"))};
  if (v == "line-exp")
    return line_exp{j.at("n").get<long long>(), j.at("d1").get<double>(), complex_from_json(j.at("z3")),
                    j.at("theta0").get<double>()};
  if (v == "rational-angle-sum")
    return rational_angle_sum{j.at("p").get<long long>(), j.at("q").get<long long>(),
                              j.at("theta2").get<double>(), complex_from_json(j.at("z0"))};
  if (v == "canonical") return canonical_q{zero_set_from_json(j.at("zeros")), j.at("genus").get<int>()};
  throw std::invalid_argument("unknown q_multiplier variant '" + v + "'");
}

inline ordered_json descriptor_to_json(const set_descriptor& d) {
  ordered_json anchors = ordered_json::array();
  for (const auto& p : d.anchors) anchors.push_back({p.first, p.second});
  return ordered_json{{"kind", d.kind},   {"a", d.a},           {"b", d.b},
                      {"nu", d.nu},       {"theta0", d.theta0}, {"theta1", d.theta1},
                      {"theta2", d.theta2}, {"anchors", anchors}};
}

inline set_descriptor descriptor_from_json(const ordered_json& j) {
  set_descriptor d;
  d.kind = j.at("kind").get<std::string>();
  d.a = j.value("a", 0.0);
  d.b = j.value("b", 0.0);
  d.nu = j.value("nu", 0.5);
  d.theta0 = j.value("theta0", 0.0);
  d.theta1 = j.value("theta1", 0.0);
  d.theta2 = j.value("theta2", 0.0);
  if (j.contains("anchors"))
    for (const auto& p : j.at("anchors")) d.anchors.push_back({p[0].get<double>(), p[1].get<double>()});
  return d;
}

inline ordered_json to_json(const counterexample_pair& pair) {
  return ordered_json{{"f1", to_json(pair.f1)},
                      {"f2", to_json(pair.f2)},
                      {"p1", to_json(pair.p1)},
                      {"p2", to_json(pair.p2)},
                      {"q", to_json(pair.q)},
                      {"c1", complex_to_json(pair.c1)},
                      {"c2", complex_to_json(pair.c2)},
                      {"provenance", pair.provenance},
                      {"intended_set", descriptor_to_json(pair.intended)}};
}

inline counterexample_pair pair_from_json(const ordered_json& j) {
  counterexample_pair pair;
  pair.f1 = signal_from_json(j.at("f1"));
  pair.f2 = signal_from_json(j.at("f2"));
  pair.p1 = signal_from_json(j.at("p1"));
  pair.p2 = signal_from_json(j.at("p2"));
  pair.q = q_multiplier_from_json(j.at("q"));
  pair.c1 = complex_from_json(j.at("c1"));
  pair.c2 = complex_from_json(j.at("c2"));
  pair.provenance = j.at("provenance").get<std::string>();
  pair.intended = descriptor_from_json(j.at("intended_set"));
  return pair;
}

}  // namespace gpr
