#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpr/counterexamples.hpp"
#include "gpr/sampling.hpp"
#include "gpr/transforms.hpp"

namespace gpr {

struct verify_config {
  double tol_equal = 1e-8;      // relative on-set agreement threshold
  double distinct_rel = 1e-2;   // phase distance / max norm threshold
  int witness_grid = 41;        // off-set search grid per axis
  int refine_rounds = 2;

  ordered_json to_json() const {
    return ordered_json{{"tol_equal", tol_equal},
                        {"distinct_rel", distinct_rel},
                        {"witness_grid", witness_grid},
                        {"refine_rounds", refine_rounds}};
  }
};

struct verification_report {
  double on_set_max_dev = 0.0;
  point2 on_set_worst{0.0, 0.0};
  point2 witness_point{0.0, 0.0};
  double witness_dev = 0.0;
  double phase_distance = 0.0;
  double max_norm = 0.0;
  bool equal_on_set = false;
  bool distinct_globally = false;
  bool counterexample_certified = false;
  std::string note;
  ordered_json config = ordered_json::object();
};

namespace detail {
// Symmetric relative deviation of the two Gabor magnitudes at one point.
inline double magnitude_dev(const signal& f, const signal& g, double t, double w) {
  const double mf = std::abs(gabor(f, t, w));
  const double mg = std::abs(gabor(g, t, w));
  return std::abs(mf - mg) / (1.0 + std::max(mf, mg));
}
}  // namespace detail

// Magnitude comparison on a sampling set, with an off-set witness search on
// a grid over the set's bounding box plus local refinement.
inline verification_report compare_profiles(const signal& f, const signal& g, const sampling_set& set,
                                            const verify_config& cfg = {}) {
  verification_report rep;
  rep.config = cfg.to_json();
  for (const auto& p : set.points) {
    const double dev = detail::magnitude_dev(f, g, p.first, p.second);
    if (dev > rep.on_set_max_dev) {
      rep.on_set_max_dev = dev;
      rep.on_set_worst = p;
    }
  }
  rep.equal_on_set = rep.on_set_max_dev <= cfg.tol_equal;

  double t_lo = -1.0, t_hi = 1.0, w_lo = -1.0, w_hi = 1.0;
  if (!set.points.empty()) {
    t_lo = w_lo = std::numeric_limits<double>::infinity();
    t_hi = w_hi = -std::numeric_limits<double>::infinity();
    for (const auto& p : set.points) {
      t_lo = std::min(t_lo, p.first);
      t_hi = std::max(t_hi, p.first);
      w_lo = std::min(w_lo, p.second);
      w_hi = std::max(w_hi, p.second);
    }
    if (t_lo == t_hi) { t_lo -= 1.0; t_hi += 1.0; }
    if (w_lo == w_hi) { w_lo -= 1.0; w_hi += 1.0; }
  }
  const int n = std::max(2, cfg.witness_grid);
  auto scan = [&](double tl, double th, double wl, double wh) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double t = tl + (th - tl) * i / (n - 1);
        const double w = wl + (wh - wl) * j / (n - 1);
        const double dev = detail::magnitude_dev(f, g, t, w);
        if (dev > rep.witness_dev) {
          rep.witness_dev = dev;
          rep.witness_point = {t, w};
        }
      }
    }
  };
  scan(t_lo, t_hi, w_lo, w_hi);
  double span_t = (t_hi - t_lo) / (n - 1), span_w = (w_hi - w_lo) / (n - 1);
  for (int round = 0; round < cfg.refine_rounds; ++round) {
    const auto [ct, cw] = rep.witness_point;
    scan(ct - span_t, ct + span_t, cw - span_w, cw + span_w);
    span_t *= 2.0 / (n - 1);
    span_w *= 2.0 / (n - 1);
  }

  rep.phase_distance = nonequivalence_distance(f, g);
  rep.max_norm = std::max(norm(f), norm(g));
  rep.distinct_globally = rep.phase_distance > cfg.distinct_rel * rep.max_norm;
  rep.counterexample_certified = rep.equal_on_set && rep.distinct_globally && !set.points.empty();
  if (set.points.empty()) rep.note = "empty sampling set: equality holds vacuously, nothing is certified";
  return rep;
}

inline bool equivalence_up_to_phase(const signal& f, const signal& g, double tol) {
  const double mx = std::max(norm(f), norm(g));
  if (mx == 0.0) return true;
  return nonequivalence_distance(f, g) <= tol * mx;
}

// Provenance gate: the factory records the geometry its pair defeats and a
// certification run on a different geometry KIND is rejected.  Parameters may
// differ on purpose — running a lattice pair on a denser lattice is the
// standard negative control and must report equal_on_set = false, not throw.
inline void check_compatible(const counterexample_pair& pair, const sampling_set& set) {
  const auto& want = pair.intended;
  if (want.kind.empty() || want.kind == "explicit") return;  // generic pair, no binding
  if (want.kind != set.desc.kind)
    throw std::invalid_argument("certify_counterexample: pair was built for a '" + want.kind +
                                "' set, got '" + set.desc.kind + "'");
}

inline verification_report certify_counterexample(const counterexample_pair& pair, const sampling_set& set,
                                                  const verify_config& cfg = {}) {
  check_compatible(pair, set);
  verification_report rep = compare_profiles(pair.f1, pair.f2, set, cfg);
  rep.config["provenance"] = pair.provenance;
  return rep;
}

// d = 2 separable comparison on a product of per-axis point lists:
// Lambda = set1 x set2 interpreted as {((t1,t2),(w1,w2))}.
struct product_report {
  double on_set_max_dev = 0.0;
  double phase_distance = 0.0;
  double max_norm = 0.0;
  bool equal_on_set = false;
  bool distinct_globally = false;
};

inline product_report compare_profiles_product(const multi_signal& f, const multi_signal& g,
                                               const std::vector<point2>& pts1,
                                               const std::vector<point2>& pts2,
                                               const verify_config& cfg = {}) {
  if (f.dim() != 2 || g.dim() != 2)
    throw std::invalid_argument("compare_profiles_product: expected 2-dimensional signals");
  product_report rep;
  for (const auto& p1 : pts1) {
    for (const auto& p2 : pts2) {
      const std::vector<double> t{p1.first, p2.first}, w{p1.second, p2.second};
      const double mf = std::abs(gabor(f, t, w));
      const double mg = std::abs(gabor(g, t, w));
      rep.on_set_max_dev = std::max(rep.on_set_max_dev, std::abs(mf - mg) / (1.0 + std::max(mf, mg)));
    }
  }
  rep.equal_on_set = rep.on_set_max_dev <= cfg.tol_equal;
  rep.phase_distance = nonequivalence_distance(f, g);
  rep.max_norm = std::max(norm(f), norm(g));
  rep.distinct_globally = rep.phase_distance > cfg.distinct_rel * rep.max_norm;
  return rep;
}

inline ordered_json to_json(const verification_report& r) {
  return ordered_json{{"on_set_max_dev", r.on_set_max_dev},
                      {"on_set_worst", {r.on_set_worst.first, r.on_set_worst.second}},
                      {"off_set_witness",
                       {{"point", {r.witness_point.first, r.witness_point.second}}, {"dev", r.witness_dev}}},
                      {"phase_distance", r.phase_distance},
                      {"max_norm", r.max_norm},
                      {"flags",
                       {{"equal_on_set", r.equal_on_set},
                        {"distinct_globally", r.distinct_globally},
                        {"counterexample_certified", r.counterexample_certified}}},
                      {"note", r.note},
                      {"config", r.config}};
}

}  // namespace gpr
