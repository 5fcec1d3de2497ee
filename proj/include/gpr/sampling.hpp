#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gpr/scaled.hpp"
#include "gpr/signal.hpp"

namespace gpr {

using point2 = std::pair<double, double>;  // (t, w)

// ---------------------------------------------------------------------------
// Rational detection.  Finds the smallest-denominator p/q with
// |x - p/q| <= tol and q <= q_max, via the simplest-fraction-in-interval
// walk (Stern-Brocot).  Reports a flag, never a claim about exact
// irrationality of a float.
// ---------------------------------------------------------------------------
namespace detail {
inline std::pair<long long, long long> simplest_in_interval(double lo, double hi, int depth = 0) {
  const double cl = std::ceil(lo);
  if (cl <= hi || depth > 64) {
    long long p;
    if (lo <= 0.0 && 0.0 <= hi)
      p = 0;
    else if (lo > 0.0)
      p = static_cast<long long>(cl);
    else
      p = static_cast<long long>(std::floor(hi));
    return {p, 1};
  }
  const double a = std::floor(lo);
  const auto [p2, q2] = simplest_in_interval(1.0 / (hi - a), 1.0 / (lo - a), depth + 1);
  return {static_cast<long long>(a) * p2 + q2, p2};
}
}  // namespace detail

inline std::optional<std::pair<long long, long long>> ratio_rationality(double x, long long q_max,
                                                                        double tol) {
  if (!std::isfinite(x) || q_max < 1) return std::nullopt;
  auto [p, q] = detail::simplest_in_interval(x - tol, x + tol);
  if (q < 1 || q > q_max) return std::nullopt;
  if (std::abs(x - static_cast<double>(p) / static_cast<double>(q)) > tol * (1.0 + std::abs(x)))
    return std::nullopt;
  return std::make_pair(p, q);
}

// ---------------------------------------------------------------------------
// Generators.
// ---------------------------------------------------------------------------

// {+- a n^nu : 0 <= n <= n_max}, ascending, zero listed once.
inline std::vector<double> zroot_seq(double nu, double a, long long n_max) {
  if (a <= 0.0 || nu <= 0.0 || n_max < 0) throw std::invalid_argument("zroot_seq: need a > 0, nu > 0, n_max >= 0");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(2 * n_max + 1));
  for (long long n = n_max; n >= 1; --n) out.push_back(-a * std::pow(static_cast<double>(n), nu));
  out.push_back(0.0);
  for (long long n = 1; n <= n_max; ++n) out.push_back(a * std::pow(static_cast<double>(n), nu));
  return out;
}

struct set_descriptor {
  std::string kind = "explicit";  // sqrt-lattice | line | parallel-lines | intersecting-lines | irregular-line | explicit
  double radius = 0.0;
  double a = 0.0, b = 0.0;
  double nu = 0.5;
  double theta0 = 0.0, theta1 = 0.0, theta2 = 0.0;
  std::vector<point2> anchors;   // 3 for parallel-lines; 1 (center/anchor) for line kinds
  std::vector<double> lambdas;   // irregular-line
  ordered_json meta = ordered_json::object();
};

struct sampling_set {
  std::vector<point2> points;
  set_descriptor desc;

  double radius() const { return desc.radius; }
  std::size_t size() const { return points.size(); }
};

// Distance between the theta0-directed lines through anchor_l and anchor_3.
inline double line_distance(point2 anchor_l, point2 anchor_3, double theta0) {
  return std::abs((anchor_l.second - anchor_3.second) * std::sin(theta0) -
                  (anchor_l.first - anchor_3.first) * std::cos(theta0));
}

namespace detail {

// Inclusive-boundary slack used consistently by generators and the counting
// function so both sides of the |point| <= r comparison agree.
inline double upper_n(double lam, double a, double nu) {
  if (lam < 0.0) return -1.0;
  const double x = std::pow(lam / a, 1.0 / nu);
  return std::floor(x * (1.0 + 1e-12) + 1e-9);
}
inline double lower_n(double lam, double a, double nu) {
  if (lam <= 0.0) return 1.0;
  const double x = std::pow(lam / a, 1.0 / nu);
  return std::max(1.0, std::ceil(x * (1.0 - 1e-12) - 1e-9));
}

// Solve |anchor + lambda dir|^2 <= r^2 for the signed line coordinate lambda.
inline bool line_chord(point2 anchor, double theta, double r, double& lo, double& hi) {
  const double dt = std::sin(theta), dw = std::cos(theta);
  const double qd = anchor.first * dt + anchor.second * dw;
  const double q2 = anchor.first * anchor.first + anchor.second * anchor.second;
  const double disc = qd * qd - (q2 - r * r);
  if (disc < 0.0) return false;
  const double sq = std::sqrt(disc);
  lo = -qd - sq;
  hi = -qd + sq;
  return true;
}

// Points of anchor + a Z^nu (sin theta, cos theta) within radius r of the
// origin; emitted by ascending line coordinate.  include_zero controls the
// n = 0 anchor term (unions drop duplicates of a shared anchor).
inline void emit_line_points(std::vector<point2>& out, point2 anchor, double theta, double a, double nu,
                             double r, bool include_zero) {
  double lo, hi;
  if (!line_chord(anchor, theta, r, lo, hi)) return;
  const double dt = std::sin(theta), dw = std::cos(theta);
  // negative branch: lambda = -a n^nu in [lo, hi]  <=>  a n^nu in [-hi, -lo]
  if (-lo > 0.0) {
    const long long nhi = static_cast<long long>(upper_n(-lo, a, nu));
    const long long nlo = static_cast<long long>(lower_n(-hi, a, nu));
    for (long long n = nhi; n >= nlo; --n) {
      const double lam = -a * std::pow(static_cast<double>(n), nu);
      out.push_back({anchor.first + lam * dt, anchor.second + lam * dw});
    }
  }
  if (include_zero && lo <= 0.0 && 0.0 <= hi) out.push_back(anchor);
  if (hi > 0.0) {
    const long long nhi = static_cast<long long>(upper_n(hi, a, nu));
    const long long nlo = static_cast<long long>(lower_n(std::max(lo, 0.0), a, nu));
    for (long long n = nlo; n <= nhi; ++n) {
      const double lam = a * std::pow(static_cast<double>(n), nu);
      out.push_back({anchor.first + lam * dt, anchor.second + lam * dw});
    }
  }
}

inline long long count_line_points(point2 anchor, double theta, double a, double nu, double r,
                                   bool include_zero) {
  double lo, hi;
  if (!line_chord(anchor, theta, r, lo, hi)) return 0;
  long long total = 0;
  if (-lo > 0.0) {
    const long long nhi = static_cast<long long>(upper_n(-lo, a, nu));
    const long long nlo = static_cast<long long>(lower_n(-hi, a, nu));
    if (nhi >= nlo) total += nhi - nlo + 1;
  }
  if (include_zero && lo <= 0.0 && 0.0 <= hi) ++total;
  if (hi > 0.0) {
    const long long nhi = static_cast<long long>(upper_n(hi, a, nu));
    const long long nlo = static_cast<long long>(lower_n(std::max(lo, 0.0), a, nu));
    if (nhi >= nlo) total += nhi - nlo + 1;
  }
  return total;
}

}  // namespace detail

// a Z^{1/2} x b Z^{1/2}, truncated to the closed ball of radius R.
inline sampling_set sqrt_lattice(double a, double b, double r) {
  if (a <= 0.0 || b <= 0.0 || r <= 0.0) throw std::invalid_argument("sqrt_lattice: need a, b, R > 0");
  sampling_set s;
  s.desc.kind = "sqrt-lattice";
  s.desc.a = a;
  s.desc.b = b;
  s.desc.radius = r;
  const double r2 = r * r * (1.0 + 1e-12);
  const long long mmax = static_cast<long long>(std::floor(r2 / (a * a) + 1e-9));
  for (long long m = 0; m <= mmax; ++m) {
    const double tm = a * std::sqrt(static_cast<double>(m));
    const double rem = r2 - a * a * static_cast<double>(m);
    if (rem < 0.0) break;
    const long long nmax = static_cast<long long>(std::floor(rem / (b * b) + 1e-9));
    for (long long n = 0; n <= nmax; ++n) {
      const double wn = b * std::sqrt(static_cast<double>(n));
      s.points.push_back({tm, wn});
      if (n > 0) s.points.push_back({tm, -wn});
      if (m > 0) {
        s.points.push_back({-tm, wn});
        if (n > 0) s.points.push_back({-tm, -wn});
      }
    }
  }
  return s;
}

// Single translated ray pair: anchor + a Z^nu (sin theta, cos theta).
inline sampling_set line_set(point2 anchor, double theta, double a, double nu, double r) {
  if (a <= 0.0 || nu <= 0.0 || r <= 0.0) throw std::invalid_argument("line_set: need a, nu, R > 0");
  sampling_set s;
  s.desc.kind = "line";
  s.desc.a = a;
  s.desc.nu = nu;
  s.desc.theta0 = theta;
  s.desc.anchors = {anchor};
  s.desc.radius = r;
  detail::emit_line_points(s.points, anchor, theta, a, nu, r, true);
  return s;
}

struct line_config {
  double theta0 = 0.0;
  std::vector<point2> anchors;  // exactly 3
  double a = 1.0;
  double nu = 0.5;
};

inline sampling_set parallel_lines_set(const line_config& cfg, double r) {
  if (cfg.anchors.size() != 3) throw std::invalid_argument("parallel_lines_set: exactly 3 anchors required");
  if (cfg.a <= 0.0 || cfg.nu <= 0.0 || r <= 0.0)
    throw std::invalid_argument("parallel_lines_set: need a, nu, R > 0");
  const double d1 = line_distance(cfg.anchors[0], cfg.anchors[2], cfg.theta0);
  const double d2 = line_distance(cfg.anchors[1], cfg.anchors[2], cfg.theta0);
  const double d12 = line_distance(cfg.anchors[0], cfg.anchors[1], cfg.theta0);
  if (d1 <= 0.0 || d2 <= 0.0 || d12 <= 0.0)
    throw std::invalid_argument("parallel_lines_set: coincident lines (d_1, d_2 and the 1-2 distance must be > 0)");
  sampling_set s;
  s.desc.kind = "parallel-lines";
  s.desc.a = cfg.a;
  s.desc.nu = cfg.nu;
  s.desc.theta0 = cfg.theta0;
  s.desc.anchors = cfg.anchors;
  s.desc.radius = r;
  const double ratio = d1 / d2;
  const auto pq = ratio_rationality(ratio, 1000, 1e-9);
  s.desc.meta = ordered_json{{"d1", d1}, {"d2", d2}, {"distance_ratio", ratio}, {"ratio_rational", pq.has_value()}};
  if (pq) {
    s.desc.meta["ratio_p"] = pq->first;
    s.desc.meta["ratio_q"] = pq->second;
  }
  for (const auto& anchor : cfg.anchors)
    detail::emit_line_points(s.points, anchor, cfg.theta0, cfg.a, cfg.nu, r, true);
  return s;
}

inline sampling_set intersecting_lines_set(point2 center, double theta1, double theta2, double a, double nu,
                                           double r) {
  if (a <= 0.0 || nu <= 0.0 || r <= 0.0)
    throw std::invalid_argument("intersecting_lines_set: need a, nu, R > 0");
  const double diff = std::remainder(theta1 - theta2, pi);
  if (std::abs(diff) < 1e-12)
    throw std::invalid_argument("intersecting_lines_set: the two directions coincide");
  sampling_set s;
  s.desc.kind = "intersecting-lines";
  s.desc.a = a;
  s.desc.nu = nu;
  s.desc.theta1 = theta1;
  s.desc.theta2 = theta2;
  s.desc.anchors = {center};
  s.desc.radius = r;
  const double x = (theta1 - theta2) / pi;
  const auto pq = ratio_rationality(x, 1000, 1e-9);
  s.desc.meta = ordered_json{{"angle_over_pi", x}, {"angle_rational", pq.has_value()}};
  if (pq) {
    s.desc.meta["angle_p"] = pq->first;
    s.desc.meta["angle_q"] = pq->second;
  }
  detail::emit_line_points(s.points, center, theta1, a, nu, r, true);
  detail::emit_line_points(s.points, center, theta2, a, nu, r, false);
  return s;
}

// anchor +- lambda_n (sin theta, cos theta) for a caller-supplied increasing
// positive sequence; no n = 0 term.
inline sampling_set irregular_line_set(const std::vector<double>& lambdas, double theta, point2 anchor) {
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (lambdas[i] <= 0.0 || (i > 0 && lambdas[i] <= lambdas[i - 1]))
      throw std::invalid_argument("irregular_line_set: lambdas must be strictly increasing and positive");
  }
  sampling_set s;
  s.desc.kind = "irregular-line";
  s.desc.theta0 = theta;
  s.desc.anchors = {anchor};
  s.desc.lambdas = lambdas;
  const double dt = std::sin(theta), dw = std::cos(theta);
  double rmax = 0.0;
  for (auto it = lambdas.rbegin(); it != lambdas.rend(); ++it)
    s.points.push_back({anchor.first - *it * dt, anchor.second - *it * dw});
  for (double lam : lambdas) s.points.push_back({anchor.first + lam * dt, anchor.second + lam * dw});
  for (const auto& p : s.points) rmax = std::max(rmax, std::hypot(p.first, p.second));
  s.desc.radius = rmax;
  if (!lambdas.empty()) {
    // uniform-density proxy a ~ lambda_n / n^{1/2} at the tail
    const std::size_t n = lambdas.size();
    s.desc.meta["uniform_density_a"] = lambdas[n - 1] / std::sqrt(static_cast<double>(n));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Gamma*: z = x + i y with (y, x) in Lambda, i.e. (t, w) |-> w + i t.
// ---------------------------------------------------------------------------
inline std::vector<cd> gamma_star(const sampling_set& s) {
  std::vector<cd> zs;
  zs.reserve(s.points.size());
  for (const auto& p : s.points) zs.push_back(cd{p.second, p.first});
  return zs;
}

inline std::vector<point2> gamma_star_inverse(const std::vector<cd>& zs) {
  std::vector<point2> pts;
  pts.reserve(zs.size());
  for (const auto& z : zs) pts.push_back({z.imag(), z.real()});
  return pts;
}

// ---------------------------------------------------------------------------
// Counting function n_Lambda(r), computed from the descriptor so radii far
// beyond any materialized truncation stay cheap.
// ---------------------------------------------------------------------------
inline long long counting_function(const set_descriptor& d, double r) {
  if (r < 0.0) throw std::invalid_argument("counting_function: r must be >= 0");
  if (d.kind == "sqrt-lattice") {
    const double r2 = r * r * (1.0 + 1e-12);
    const long long mmax = static_cast<long long>(std::floor(r2 / (d.a * d.a) + 1e-9));
    long long total = 0;
    for (long long m = 0; m <= mmax; ++m) {
      const double rem = r2 - d.a * d.a * static_cast<double>(m);
      if (rem < 0.0) break;
      const long long nmax = static_cast<long long>(std::floor(rem / (d.b * d.b) + 1e-9));
      total += (m == 0 ? 1 : 2) * (2 * nmax + 1);
    }
    return total;
  }
  if (d.kind == "line")
    return detail::count_line_points(d.anchors.at(0), d.theta0, d.a, d.nu, r, true);
  if (d.kind == "parallel-lines") {
    long long total = 0;
    for (const auto& anchor : d.anchors)
      total += detail::count_line_points(anchor, d.theta0, d.a, d.nu, r, true);
    return total;
  }
  if (d.kind == "intersecting-lines") {
    return detail::count_line_points(d.anchors.at(0), d.theta1, d.a, d.nu, r, true) +
           detail::count_line_points(d.anchors.at(0), d.theta2, d.a, d.nu, r, false);
  }
  if (d.kind == "irregular-line") {
    const point2 anchor = d.anchors.at(0);
    const double dt = std::sin(d.theta0), dw = std::cos(d.theta0);
    long long total = 0;
    for (double lam : d.lambdas) {
      for (double sgn : {1.0, -1.0}) {
        const double t = anchor.first + sgn * lam * dt, w = anchor.second + sgn * lam * dw;
        if (t * t + w * w <= r * r * (1.0 + 1e-12)) ++total;
      }
    }
    return total;
  }
  throw std::invalid_argument("counting_function: descriptor of kind '" + d.kind +
                              "' cannot count beyond its stored points");
}

inline long long counting_function(const sampling_set& s, double r) {
  if (s.desc.kind == "explicit" || s.desc.kind.empty()) {
    if (r > s.desc.radius * (1.0 + 1e-12))
      throw std::invalid_argument("counting_function: r exceeds the truncation radius of an explicit set");
    long long total = 0;
    for (const auto& p : s.points)
      if (p.first * p.first + p.second * p.second <= r * r * (1.0 + 1e-12)) ++total;
    return total;
  }
  return counting_function(s.desc, r);
}

// ---------------------------------------------------------------------------
// Density proxy: least-squares slope of log n(r) against log r over the top
// decade of the supplied radii.  A finite-radius stand-in for the limsup.
// ---------------------------------------------------------------------------
inline double density_estimate(const set_descriptor& d, const std::vector<double>& r_values) {
  if (r_values.size() < 2) throw std::invalid_argument("density_estimate: need at least 2 radii");
  std::vector<std::pair<double, double>> pts;  // (log r, log n)
  double rmax = 0.0;
  for (std::size_t i = 0; i < r_values.size(); ++i) {
    if (i > 0 && r_values[i] <= r_values[i - 1])
      throw std::invalid_argument("density_estimate: radii must be increasing");
    rmax = std::max(rmax, r_values[i]);
  }
  for (double r : r_values) {
    if (r < rmax / 10.0) continue;
    const long long n = counting_function(d, r);
    if (n <= 0) continue;
    pts.push_back({std::log(r), std::log(static_cast<double>(n))});
  }
  if (pts.size() < 2) throw std::invalid_argument("density_estimate: too few usable radii in the top decade");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline double density_estimate(const sampling_set& s, const std::vector<double>& r_values) {
  return density_estimate(s.desc, r_values);
}

// ---------------------------------------------------------------------------
// Serialization: JSON {kind, params, R, points:[[t,w],...]}, CSV "t,w".
// ---------------------------------------------------------------------------
inline ordered_json to_json(const sampling_set& s) {
  ordered_json params = ordered_json::object();
  const auto& d = s.desc;
  if (d.kind == "sqrt-lattice") params = {{"a", d.a}, {"b", d.b}};
  if (d.kind == "line")
    params = {{"a", d.a}, {"nu", d.nu}, {"theta0", d.theta0}, {"anchor", {d.anchors[0].first, d.anchors[0].second}}};
  if (d.kind == "parallel-lines") {
    ordered_json anchors = ordered_json::array();
    for (const auto& p : d.anchors) anchors.push_back({p.first, p.second});
    params = {{"a", d.a}, {"nu", d.nu}, {"theta0", d.theta0}, {"anchors", anchors}};
  }
  if (d.kind == "intersecting-lines")
    params = {{"a", d.a},
              {"nu", d.nu},
              {"theta1", d.theta1},
              {"theta2", d.theta2},
              {"center", {d.anchors[0].first, d.anchors[0].second}}};
  if (d.kind == "irregular-line")
    params = {{"theta0", d.theta0}, {"anchor", {d.anchors[0].first, d.anchors[0].second}}, {"lambdas", d.lambdas}};
  if (!d.meta.empty()) params["meta"] = d.meta;
  ordered_json pts = ordered_json::array();
  for (const auto& p : s.points) pts.push_back({p.first, p.second});
  return ordered_json{{"kind", d.kind}, {"params", params}, {"R", d.radius}, {"points", pts}};
}

inline sampling_set sampling_set_from_json(const ordered_json& j) {
  sampling_set s;
  s.desc.kind = j.at("kind").get<std::string>();
  s.desc.radius = j.at("R").get<double>();
  const auto& params = j.at("params");
  auto read_pt = [](const ordered_json& a) { return point2{a[0].get<double>(), a[1].get<double>()}; };
  if (s.desc.kind == "sqrt-lattice") {
    s.desc.a = params.at("a").get<double>();
    s.desc.b = params.at("b").get<double>();
  } else if (s.desc.kind == "line") {
    s.desc.a = params.at("a").get<double>();
    s.desc.nu = params.at("nu").get<double>();
    s.desc.theta0 = params.at("theta0").get<double>();
    s.desc.anchors = {read_pt(params.at("anchor"))};
  } else if (s.desc.kind == "parallel-lines") {
    s.desc.a = params.at("a").get<double>();
    s.desc.nu = params.at("nu").get<double>();
    s.desc.theta0 = params.at("theta0").get<double>();
    for (const auto& p : params.at("anchors")) s.desc.anchors.push_back(read_pt(p));
  } else if (s.desc.kind == "intersecting-lines") {
    s.desc.a = params.at("a").get<double>();
    s.desc.nu = params.at("nu").get<double>();
    s.desc.theta1 = params.at("theta1").get<double>();
    s.desc.theta2 = params.at("theta2").get<double>();
    s.desc.anchors = {read_pt(params.at("center"))};
  } else if (s.desc.kind == "irregular-line") {
    s.desc.theta0 = params.at("theta0").get<double>();
    s.desc.anchors = {read_pt(params.at("anchor"))};
    s.desc.lambdas = params.at("lambdas").get<std::vector<double>>();
  }
  if (params.contains("meta")) s.desc.meta = params.at("meta");
  for (const auto& p : j.at("points")) s.points.push_back(read_pt(p));
  return s;
}

inline std::string to_csv(const sampling_set& s) {
  std::string out = "t,w\n";
  char buf[80];
  for (const auto& p : s.points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.first, p.second);
    out += buf;
  }
  return out;
}

}  // namespace gpr
