// Command-line front end: generate sampling sets, build counterexample
// pairs, verify magnitude agreement, run the reconstruction probe and
// estimate densities.  Structured artifacts are JSON, plot data is CSV.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gpr/gpr.hpp"

namespace {

using gpr::cd;
using gpr::ordered_json;

// Angle literals: plain decimals plus pi forms ("pi", "pi/4", "3pi/4",
// "2*pi/3", "-pi/2", "0.5pi").  Keeps rational multiples of pi exact to the
// last ulp so downstream rationality flags do not drift.
double parse_angle(const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw CLI::ValidationError("angle", "empty angle literal");
  double sign = 1.0;
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') {
    sign = s[0] == '-' ? -1.0 : 1.0;
    ++pos;
  }
  const std::size_t pi_at = s.find("pi", pos);
  if (pi_at == std::string::npos) {
    std::size_t used = 0;
    const double v = std::stod(s.substr(pos), &used);
    if (pos + used != s.size()) throw CLI::ValidationError("angle", "trailing characters in '" + raw + "'");
    return sign * v;
  }
  double num = 1.0;
  if (pi_at > pos) {
    std::string head = s.substr(pos, pi_at - pos);
    if (!head.empty() && head.back() == '*') head.pop_back();
    if (!head.empty()) {
      std::size_t used = 0;
      num = std::stod(head, &used);
      if (used != head.size()) throw CLI::ValidationError("angle", "bad coefficient in '" + raw + "'");
    }
  }
  double den = 1.0;
  std::size_t rest = pi_at + 2;
  if (rest < s.size()) {
    if (s[rest] != '/') throw CLI::ValidationError("angle", "expected '/' after pi in '" + raw + "'");
    std::size_t used = 0;
    den = std::stod(s.substr(rest + 1), &used);
    if (rest + 1 + used != s.size() || den == 0.0)
      throw CLI::ValidationError("angle", "bad denominator in '" + raw + "'");
  }
  return sign * num * gpr::pi / den;
}

gpr::point2 parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("point", "expected 't,w' but got '" + s + "'");
  return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << content;
}

ordered_json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  return ordered_json::parse(f);
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[64];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

cd phase(double angle) { return std::exp(cd{0.0, angle}); }

// -------------------------------------------------------------------------
// gen-set
// -------------------------------------------------------------------------
struct gen_set_opts {
  std::string kind;
  double a = 1.0, b = 1.0, nu = 0.5, radius = 10.0;
  std::string theta0 = "0", theta1 = "0", theta2 = "pi/2";
  std::vector<std::string> anchors;
  std::string center = "0,0";
  std::string lambdas;
  std::string lambda_file;
  std::string out = "set.json";
  std::string csv;
};

int run_gen_set(const gen_set_opts& o) {
  gpr::sampling_set set;
  if (o.kind == "sqrt-lattice") {
    set = gpr::sqrt_lattice(o.a, o.b, o.radius);
  } else if (o.kind == "parallel-lines") {
    if (o.anchors.size() != 3)
      throw std::invalid_argument("parallel-lines needs exactly 3 --anchors 't,w' entries, got " +
                                  std::to_string(o.anchors.size()));
    gpr::line_config cfg;
    cfg.theta0 = parse_angle(o.theta0);
    cfg.a = o.a;
    cfg.nu = o.nu;
    for (const auto& s : o.anchors) cfg.anchors.push_back(parse_point(s));
    set = gpr::parallel_lines_set(cfg, o.radius);
  } else if (o.kind == "intersecting-lines") {
    set = gpr::intersecting_lines_set(parse_point(o.center), parse_angle(o.theta1), parse_angle(o.theta2),
                                      o.a, o.nu, o.radius);
  } else if (o.kind == "irregular-line") {
    std::vector<double> lams;
    if (!o.lambda_file.empty()) {
      std::ifstream f(o.lambda_file);
      if (!f) throw std::runtime_error("cannot open '" + o.lambda_file + "'");
      double x;
      while (f >> x) lams.push_back(x);
    } else {
      lams = parse_double_list(o.lambdas);
    }
    set = gpr::irregular_line_set(lams, parse_angle(o.theta0), parse_point(o.center));
  } else {
    throw std::invalid_argument("unknown set kind '" + o.kind + "'");
  }
  write_file(o.out, gpr::to_json(set).dump(2) + "\n");
  if (!o.csv.empty()) write_file(o.csv, gpr::to_csv(set));
  std::printf("wrote %s (%zu points, kind %s)\n", o.out.c_str(), set.points.size(), set.desc.kind.c_str());
  return 0;
}

// -------------------------------------------------------------------------
// counterexample
// -------------------------------------------------------------------------
struct cx_opts {
  std::string kind;
  double a = 2.0;
  std::optional<double> b;
  double d1 = 1.0, d2 = 2.0;
  std::string theta0 = "0", theta1 = "0", theta2 = "pi/3";
  std::string center = "0,0", anchor3 = "0,0";
  double base_width = 1.0;
  std::string phase1 = "0", phase2 = "pi/2";
  int chirp_case = 0;  // 0: rational-angle sum; 3|4|5: chirp cases
  std::string set_file;  // low-density source
  std::string pair_file; // separable base pair
  std::string extra = "gaussian";
  std::string out = "pair.json";
};

int run_counterexample(const cx_opts& o) {
  const cd c1 = phase(parse_angle(o.phase1));
  const cd c2 = phase(parse_angle(o.phase2));
  if (o.kind == "lattice") {
    const double b = o.b.value_or(o.a);
    auto pair = gpr::lattice_pair(o.a, b, c1, c2);
    write_file(o.out, gpr::to_json(pair).dump(2) + "\n");
    std::printf("wrote %s (%s)\n", o.out.c_str(), pair.provenance.c_str());
    return 0;
  }
  if (o.kind == "parallel") {
    const auto pq = gpr::ratio_rationality(o.d1 / o.d2, 64, 1e-9);
    if (!pq)
      throw std::invalid_argument("parallel counterexample needs d1/d2 rational (p/q with q <= 64); got d1/d2 = " +
                                  std::to_string(o.d1 / o.d2));
    const auto a3 = parse_point(o.anchor3);
    gpr::line_exp q{pq->first, o.d1, cd{a3.second, a3.first}, parse_angle(o.theta0)};
    auto pair = gpr::pair_from_exponential_q(gpr::q_multiplier{q}, o.base_width, c1, c2);
    pair.provenance = "parallel-lines exponential pair (d1=" + std::to_string(o.d1) +
                      ", d2=" + std::to_string(o.d2) + ", n=" + std::to_string(pq->first) + ")";
    pair.intended.kind = "parallel-lines";
    pair.intended.theta0 = q.theta0;
    write_file(o.out, gpr::to_json(pair).dump(2) + "\n");
    std::printf("wrote %s (%s)\n", o.out.c_str(), pair.provenance.c_str());
    return 0;
  }
  if (o.kind == "intersect") {
    const double t1 = parse_angle(o.theta1), t2 = parse_angle(o.theta2);
    const auto ctr = parse_point(o.center);
    const cd z0{ctr.second, ctr.first};
    gpr::counterexample_pair pair;
    if (o.chirp_case != 0) {
      const auto q = gpr::chirp_for_intersecting(o.chirp_case, t1, t2, o.a, z0);
      pair = gpr::pair_from_chirp(q, c1, c2);
      pair.provenance = "intersecting-lines chirp pair (case " + std::to_string(o.chirp_case) +
                        ", a=" + std::to_string(o.a) + ")";
    } else {
      const auto pq = gpr::ratio_rationality((t1 - t2) / gpr::pi, 64, 1e-9);
      if (!pq)
        throw std::invalid_argument(
            "intersect counterexample needs (theta1 - theta2)/pi rational (p/q with q <= 64)");
      gpr::rational_angle_sum q{pq->first, pq->second, t2, z0};
      pair = gpr::pair_from_exponential_q(gpr::q_multiplier{q}, o.base_width, c1, c2);
      pair.provenance = "intersecting-lines rational-angle pair (p=" + std::to_string(pq->first) +
                        ", q=" + std::to_string(pq->second) + ")";
    }
    pair.intended.kind = "intersecting-lines";
    pair.intended.theta1 = t1;
    pair.intended.theta2 = t2;
    pair.intended.anchors = {ctr};
    write_file(o.out, gpr::to_json(pair).dump(2) + "\n");
    std::printf("wrote %s (%s)\n", o.out.c_str(), pair.provenance.c_str());
    return 0;
  }
  if (o.kind == "low-density") {
    if (o.set_file.empty()) throw std::invalid_argument("low-density counterexample needs --set <set.json>");
    const auto set = gpr::sampling_set_from_json(read_json(o.set_file));
    std::vector<double> radii;
    const double rmax = std::max(10.0, set.desc.radius);
    for (int i = 0; i < 16; ++i) radii.push_back(rmax / 10.0 * std::pow(10.0, i / 15.0));
    const double dens = gpr::density_estimate(set, radii);
    std::optional<gpr::power_tail> tail;
    if (set.desc.kind == "line")
      tail = gpr::power_tail{std::pow(0.5, set.desc.nu) * set.desc.a, set.desc.nu};
    const auto res = gpr::low_density_q(gpr::gamma_star(set), tail, dens);
    ordered_json j{{"q", gpr::to_json(gpr::q_multiplier{res.q})},
                   {"density_estimate", res.density_estimate_value},
                   {"density_below_two", res.density_below_two},
                   {"convergence_exponent", res.growth.exponent},
                   {"genus", res.growth.genus},
                   {"low_confidence", res.growth.low_confidence},
                   {"provenance", "low-density canonical product"}};
    write_file(o.out, j.dump(2) + "\n");
    std::printf("wrote %s (density %.3f, genus %d)\n", o.out.c_str(), res.density_estimate_value,
                res.growth.genus);
    return 0;
  }
  if (o.kind == "separable") {
    // default base: the canonical a = b = 2 lattice pair
    const auto base = o.pair_file.empty() ? gpr::lattice_pair(o.a, o.b.value_or(o.a), c1, c2)
                                          : gpr::pair_from_json(read_json(o.pair_file));
    gpr::signal extra;
    if (o.extra == "gaussian") {
      extra = gpr::signal::gaussian();
    } else {
      extra = gpr::signal_from_json(read_json(o.extra));
    }
    const auto [f1, f2] = gpr::separable_pair(base, extra);
    ordered_json j{{"f1", gpr::to_json(f1)},
                   {"f2", gpr::to_json(f2)},
                   {"base_provenance", base.provenance},
                   {"provenance", "separable product pair (d=2)"},
                   {"intended_set", gpr::descriptor_to_json(base.intended)}};
    write_file(o.out, j.dump(2) + "\n");
    std::printf("wrote %s (separable pair over %s)\n", o.out.c_str(), base.provenance.c_str());
    return 0;
  }
  throw std::invalid_argument("unknown counterexample kind '" + o.kind + "'");
}

// -------------------------------------------------------------------------
// verify
// -------------------------------------------------------------------------
struct verify_opts {
  std::string pair_file, set_file;
  double tol = 1e-8;
  double distinct_rel = 1e-2;
  bool strict = false;
  std::string out = "report.json";
};

int run_verify(const verify_opts& o) {
  const auto pj = read_json(o.pair_file);
  if (pj.contains("f1") && pj.at("f1").contains("factors"))
    throw std::invalid_argument("verify expects a 1-dimensional pair; separable pairs are checked on product sets");
  const auto pair = gpr::pair_from_json(pj);
  const auto set = gpr::sampling_set_from_json(read_json(o.set_file));
  gpr::verify_config cfg;
  cfg.tol_equal = o.tol;
  cfg.distinct_rel = o.distinct_rel;
  auto rep = gpr::certify_counterexample(pair, set, cfg);
  ordered_json j = gpr::to_json(rep);
  j["generated_at"] = timestamp();
  write_file(o.out, j.dump(2) + "\n");
  std::printf("wrote %s: on_set_max_dev=%.3e witness_dev=%.3e phase_distance=%.3e certified=%s\n",
              o.out.c_str(), rep.on_set_max_dev, rep.witness_dev, rep.phase_distance,
              rep.counterexample_certified ? "true" : "false");
  if (o.strict && !rep.counterexample_certified) return 2;
  return 0;
}

// -------------------------------------------------------------------------
// probe
// -------------------------------------------------------------------------
struct probe_opts {
  std::string set_file;
  std::string plant_file;    // signal JSON to plant
  std::string pair_file;     // pair JSON as measurement source
  std::string use = "f1";
  std::string meas_file;     // CSV t,w,magnitude
  std::string meas_out;      // optional CSV dump of the measurements used
  int dim = 8;
  int restarts = 16;
  std::uint64_t seed = 0;
  int max_iters = 600;
  int threads = 0;
  std::string out = "probe.json";
};

int run_probe(const probe_opts& o) {
  std::vector<std::pair<gpr::point2, double>> meas;
  std::optional<gpr::signal> planted;
  ordered_json source;
  if (!o.meas_file.empty()) {
    std::ifstream f(o.meas_file);
    if (!f) throw std::runtime_error("cannot open '" + o.meas_file + "'");
    std::string line;
    while (std::getline(f, line)) {
      if (line.empty() || line[0] == 't') continue;  // header
      std::stringstream ss(line);
      std::string a, b, c;
      if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c)) continue;
      meas.push_back({{std::stod(a), std::stod(b)}, std::stod(c)});
    }
    source = {{"measurements", o.meas_file}};
  } else {
    if (o.set_file.empty()) throw std::invalid_argument("probe needs --set (or --measurements)");
    const auto set = gpr::sampling_set_from_json(read_json(o.set_file));
    gpr::signal src;
    if (!o.pair_file.empty()) {
      const auto pair = gpr::pair_from_json(read_json(o.pair_file));
      src = o.use == "f2" ? pair.f2 : pair.f1;
      source = {{"pair", o.pair_file}, {"use", o.use}};
    } else if (!o.plant_file.empty()) {
      src = gpr::signal_from_json(read_json(o.plant_file));
      planted = src;
      source = {{"plant", o.plant_file}};
    } else {
      // seeded random plant in the probe basis
      std::mt19937_64 rng(o.seed ^ 0xabcdef1234567890ULL);
      std::normal_distribution<double> gauss(0.0, 1.0);
      std::vector<cd> c(o.dim);
      for (auto& x : c) x = cd{gauss(rng), gauss(rng)};
      src = gpr::hermite_signal(c);
      planted = src;
      source = {{"plant", "seeded-random"}, {"plant_seed", o.seed}};
    }
    for (const auto& [pt, m] : gpr::magnitude_samples(src, set.points)) meas.push_back({pt, m});
  }
  if (!o.meas_out.empty()) {
    std::string csv = "t,w,magnitude\n";
    char buf[120];
    for (const auto& [pt, m] : meas) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", pt.first, pt.second, m);
      csv += buf;
    }
    write_file(o.meas_out, csv);
  }
  gpr::probe_config cfg;
  cfg.basis_dim = o.dim;
  cfg.restarts = o.restarts;
  cfg.seed = o.seed;
  cfg.max_iters = o.max_iters;
  cfg.threads = o.threads;
  const auto res = gpr::reconstruction_probe(meas, cfg, planted ? &*planted : nullptr);
  ordered_json j = gpr::to_json(res);
  j["source"] = source;
  j["generated_at"] = timestamp();
  write_file(o.out, j.dump(2) + "\n");
  std::printf("wrote %s: best objective %.3e", o.out.c_str(), res.best_objective);
  if (res.relative_error >= 0.0) std::printf(", relative error %.3e", res.relative_error);
  std::printf("\n");
  return 0;
}

// -------------------------------------------------------------------------
// density
// -------------------------------------------------------------------------
struct density_opts {
  std::string set_file;
  double rmin = 10.0, rmax = 1000.0;
  int steps = 20;
  std::string out = "density.csv";
  std::string out_json;
};

int run_density(const density_opts& o) {
  if (o.steps < 2) throw std::invalid_argument("density needs at least 2 steps");
  if (!(o.rmin > 0.0 && o.rmax > o.rmin)) throw std::invalid_argument("density needs 0 < rmin < rmax");
  const auto set = gpr::sampling_set_from_json(read_json(o.set_file));
  std::vector<double> radii;
  for (int i = 0; i < o.steps; ++i)
    radii.push_back(o.rmin * std::pow(o.rmax / o.rmin, static_cast<double>(i) / (o.steps - 1)));
  std::string csv = "r,count\n";
  char buf[80];
  for (double r : radii) {
    std::snprintf(buf, sizeof buf, "%.17g,%lld\n", r, gpr::counting_function(set, r));
    csv += buf;
  }
  write_file(o.out, csv);
  const double slope = gpr::density_estimate(set, radii);
  std::printf("wrote %s; density_estimate %.6f\n", o.out.c_str(), slope);
  if (!o.out_json.empty()) {
    ordered_json j{{"density_estimate", slope},
                   {"rmin", o.rmin},
                   {"rmax", o.rmax},
                   {"steps", o.steps},
                   {"set_kind", set.desc.kind},
                   {"generated_at", timestamp()}};
    write_file(o.out_json, j.dump(2) + "\n");
  }
  return 0;
}

// -------------------------------------------------------------------------
// report: summarize any artifact file
// -------------------------------------------------------------------------
int run_report(const std::string& in) {
  const auto j = read_json(in);
  if (j.contains("points")) {
    std::printf("sampling set: kind=%s R=%g points=%zu\n", j.at("kind").get<std::string>().c_str(),
                j.at("R").get<double>(), j.at("points").size());
    if (j.at("params").contains("meta")) std::printf("meta: %s\n", j["params"]["meta"].dump().c_str());
    return 0;
  }
  if (j.contains("flags")) {
    std::printf("verification report: on_set_max_dev=%.3e witness_dev=%.3e phase_distance=%.3e\n",
                j.at("on_set_max_dev").get<double>(), j.at("off_set_witness").at("dev").get<double>(),
                j.at("phase_distance").get<double>());
    std::printf("flags: equal_on_set=%s distinct_globally=%s certified=%s\n",
                j["flags"]["equal_on_set"].get<bool>() ? "true" : "false",
                j["flags"]["distinct_globally"].get<bool>() ? "true" : "false",
                j["flags"]["counterexample_certified"].get<bool>() ? "true" : "false");
    return 0;
  }
  if (j.contains("restarts")) {
    std::printf("probe result: best objective %.3e over %zu restarts\n", j.at("best_objective").get<double>(),
                j.at("restarts").size());
    if (j.contains("relative_error") && j.at("relative_error").get<double>() >= 0.0)
      std::printf("relative error vs planted: %.3e\n", j.at("relative_error").get<double>());
    return 0;
  }
  if (j.contains("f1")) {
    std::printf("counterexample pair: %s\n", j.value("provenance", std::string("unknown")).c_str());
    if (j.contains("intended_set"))
      std::printf("intended set kind: %s\n", j["intended_set"].value("kind", std::string("?")).c_str());
    return 0;
  }
  if (j.contains("density_estimate")) {
    std::printf("density estimate: %.6f\n", j.at("density_estimate").get<double>());
    return 0;
  }
  std::printf("unrecognized artifact (%zu top-level fields)\n", j.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gabor phase retrieval laboratory"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker thread cap (default: GPR_THREADS or hardware)");

  gen_set_opts gs;
  auto* cmd_gen = app.add_subcommand("gen-set", "generate a sampling set");
  cmd_gen->add_option("--kind", gs.kind, "sqrt-lattice | parallel-lines | intersecting-lines | irregular-line")
      ->required();
  cmd_gen->add_option("--a", gs.a, "spacing a");
  cmd_gen->add_option("--b", gs.b, "spacing b (sqrt-lattice)");
  cmd_gen->add_option("--nu", gs.nu, "exponent nu");
  cmd_gen->add_option("--radius", gs.radius, "truncation radius");
  cmd_gen->add_option("--theta0", gs.theta0, "line direction (pi literals ok)");
  cmd_gen->add_option("--theta1", gs.theta1, "first direction");
  cmd_gen->add_option("--theta2", gs.theta2, "second direction");
  cmd_gen->add_option("--anchors", gs.anchors, "three 't,w' anchors (parallel-lines)");
  cmd_gen->add_option("--center", gs.center, "center/anchor 't,w'");
  cmd_gen->add_option("--lambdas", gs.lambdas, "comma list of increasing positive reals");
  cmd_gen->add_option("--lambda-file", gs.lambda_file, "file with one lambda per line");
  cmd_gen->add_option("--out", gs.out, "output JSON path");
  cmd_gen->add_option("--csv", gs.csv, "optional CSV path");

  cx_opts cx;
  auto* cmd_cx = app.add_subcommand("counterexample", "build a counterexample pair");
  cmd_cx->add_option("--kind", cx.kind, "lattice | parallel | intersect | low-density | separable")->required();
  cmd_cx->add_option("--a", cx.a, "lattice/ray spacing a");
  double cx_b = 0.0;
  auto* bopt = cmd_cx->add_option("--b", cx_b, "lattice spacing b (default: a)");
  cmd_cx->add_option("--d1", cx.d1, "distance line1-line3");
  cmd_cx->add_option("--d2", cx.d2, "distance line2-line3");
  cmd_cx->add_option("--theta0", cx.theta0, "parallel line direction");
  cmd_cx->add_option("--theta1", cx.theta1, "first ray direction");
  cmd_cx->add_option("--theta2", cx.theta2, "second ray direction");
  cmd_cx->add_option("--center", cx.center, "intersection point 't,w'");
  cmd_cx->add_option("--anchor3", cx.anchor3, "reference anchor 't,w'");
  cmd_cx->add_option("--base-width", cx.base_width, "width of the base Gaussian");
  cmd_cx->add_option("--phase1", cx.phase1, "phase of c1 (pi literals ok)");
  cmd_cx->add_option("--phase2", cx.phase2, "phase of c2");
  cmd_cx->add_option("--chirp-case", cx.chirp_case, "intersecting chirp case (3, 4 or 5); 0 = rational-angle sum");
  cmd_cx->add_option("--set", cx.set_file, "source set (low-density)");
  cmd_cx->add_option("--pair", cx.pair_file, "base pair (separable)");
  cmd_cx->add_option("--extra", cx.extra, "extra factor: 'gaussian' or a signal JSON path");
  cmd_cx->add_option("--out", cx.out, "output JSON path");

  verify_opts vo;
  auto* cmd_vf = app.add_subcommand("verify", "compare magnitudes of a pair on a set");
  cmd_vf->add_option("--pair", vo.pair_file, "pair JSON")->required();
  cmd_vf->add_option("--set", vo.set_file, "set JSON")->required();
  cmd_vf->add_option("--tol", vo.tol, "on-set equality tolerance");
  cmd_vf->add_option("--distinct-rel", vo.distinct_rel, "relative phase-distance threshold");
  cmd_vf->add_flag("--strict", vo.strict, "nonzero exit when not certified");
  cmd_vf->add_option("--out", vo.out, "report JSON path");

  probe_opts po;
  auto* cmd_pr = app.add_subcommand("probe", "reconstruction probe on magnitude samples");
  cmd_pr->add_option("--set", po.set_file, "sampling set JSON");
  cmd_pr->add_option("--plant", po.plant_file, "signal JSON to plant");
  cmd_pr->add_option("--pair", po.pair_file, "pair JSON as measurement source");
  cmd_pr->add_option("--use", po.use, "f1 | f2 (with --pair)");
  cmd_pr->add_option("--measurements", po.meas_file, "CSV t,w,magnitude");
  cmd_pr->add_option("--measurements-out", po.meas_out, "write the measurement list as CSV t,w,magnitude");
  cmd_pr->add_option("--dim", po.dim, "basis dimension (<= 16)");
  cmd_pr->add_option("--restarts", po.restarts, "number of restarts");
  cmd_pr->add_option("--seed", po.seed, "rng seed");
  cmd_pr->add_option("--max-iters", po.max_iters, "step budget per restart");
  cmd_pr->add_option("--out", po.out, "result JSON path");

  density_opts dn;
  auto* cmd_dn = app.add_subcommand("density", "counting-function slope estimate");
  cmd_dn->add_option("--set", dn.set_file, "set JSON")->required();
  cmd_dn->add_option("--rmin", dn.rmin, "smallest radius");
  cmd_dn->add_option("--rmax", dn.rmax, "largest radius");
  cmd_dn->add_option("--steps", dn.steps, "number of radii (geometric)");
  cmd_dn->add_option("--out", dn.out, "CSV output path");
  cmd_dn->add_option("--out-json", dn.out_json, "optional JSON summary path");

  std::string report_in;
  auto* cmd_rp = app.add_subcommand("report", "summarize an artifact file");
  cmd_rp->add_option("--in", report_in, "artifact JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_gen->parsed()) return run_gen_set(gs);
    if (cmd_cx->parsed()) {
      if (bopt->count()) cx.b = cx_b;
      return run_counterexample(cx);
    }
    if (cmd_vf->parsed()) return run_verify(vo);
    if (cmd_pr->parsed()) {
      po.threads = threads;
      return run_probe(po);
    }
    if (cmd_dn->parsed()) return run_density(dn);
    if (cmd_rp->parsed()) return run_report(report_in);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
