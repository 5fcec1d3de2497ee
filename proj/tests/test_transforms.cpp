#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gpr/gpr.hpp"
#include "test_util.hpp"

using namespace gpr;
using gpr_test::integrate_line;
using gpr_test::make_rng;
using gpr_test::random_signal;
using gpr_test::ucomplex;
using gpr_test::uni;

namespace {
const double inv_sqrt2 = 0.7071067811865476;    // integral exp(-2 pi s^2) ds
const double two_pow_neg_quarter = 0.8408964152537145;

double rel_dev(cd a, cd b) { return std::abs(a - b) / (1.0 + std::abs(a)); }
}  // namespace

TEST_CASE("atom evaluation") {
  poly_gauss_atom gauss;  // exp(-pi s^2)
  CHECK(atom_eval(gauss, cd{0.0, 0.0}) == cd{1.0, 0.0});
  CHECK(std::abs(atom_eval(gauss, cd{1.0, 0.0}) - std::exp(-pi)) < 1e-15);
  CHECK(signal::zero().eval(cd{0.7, -0.3}) == cd{0.0, 0.0});

  // polynomial factor with a complex shift
  poly_gauss_atom a;
  a.poly = {cd{1.0, 0.0}, cd{0.0, 2.0}};  // 1 + 2 i s
  a.gamma = {1.5, 0.5};
  a.beta = {0.2, -0.1};
  a.delta = {0.0, 0.3};
  const cd s{0.4, 0.2};
  const cd direct = (cd{1.0, 0.0} + cd{0.0, 2.0} * s) *
                    std::exp(-pi * a.gamma * s * s + 2.0 * pi * a.beta * s + a.delta);
  CHECK(std::abs(a.eval(s) - direct) < 1e-14);
}

TEST_CASE("atom complex shift identity") {
  auto rng = make_rng(11);
  for (int i = 0; i < 25; ++i) {
    const auto a = gpr_test::random_atom(rng, 3);
    const cd u = ucomplex(rng, 0.7);
    const auto sh = a.shifted(u);
    for (int j = 0; j < 4; ++j) {
      const cd s = ucomplex(rng, 1.5);
      CHECK(std::abs(sh.eval(s) - a.eval(s - u)) < 1e-10 * (1.0 + std::abs(a.eval(s - u))));
    }
  }
}

TEST_CASE("inner product closed form") {
  const gpr::signal phi = signal::gaussian();
  CHECK(std::abs(inner_product(phi, phi) - inv_sqrt2) < 1e-15);
  CHECK(inner_product(phi, signal::zero()) == cd{0.0, 0.0});

  gpr::signal s_phi;  // s * exp(-pi s^2), odd against phi
  poly_gauss_atom a;
  a.poly = {cd{0.0, 0.0}, cd{1.0, 0.0}};
  s_phi.atoms.push_back(a);
  CHECK(std::abs(inner_product(phi, s_phi)) < 1e-15);

  // independent quadrature oracle
  auto rng = make_rng(42);
  for (int i = 0; i < 12; ++i) {
    const auto f = random_signal(rng);
    const auto g = random_signal(rng);
    const cd closed = inner_product(f, g);
    const cd quad = integrate_line([&](double s) { return f.eval(s) * std::conj(g.eval(s)); });
    CHECK(std::abs(closed - quad) < 1e-9 * (1.0 + std::abs(closed)));
  }
}

TEST_CASE("inner product rejects non-integrable combinations") {
  poly_gauss_atom bad;
  bad.gamma = {-0.1, 0.0};
  gpr::signal f;
  f.atoms.push_back(bad);
  CHECK_THROWS_AS((void)inner_product(f, f), std::domain_error);
}

TEST_CASE("gabor transform") {
  const gpr::signal phi = signal::gaussian();
  CHECK(std::abs(gabor(phi, 0.0, 0.0) - inv_sqrt2) < 1e-15);
  CHECK(gabor(signal::zero(), 0.3, -0.8) == cd{0.0, 0.0});

  // V_phi phi(t,w) = 2^{-1/2} exp(-pi(t^2+w^2)/2) exp(-pi i t w)
  const double t = 1.0, w = 1.0;
  const cd expected = inv_sqrt2 * std::exp(cd{-pi * (t * t + w * w) / 2.0, -pi * t * w});
  CHECK(std::abs(gabor(phi, t, w) - expected) < 1e-15);

  auto rng = make_rng(43);
  for (int i = 0; i < 12; ++i) {
    const auto f = random_signal(rng);
    const double tt = uni(rng, -2.0, 2.0), ww = uni(rng, -2.0, 2.0);
    const cd closed = gabor(f, tt, ww);
    const cd quad = integrate_line([&](double s) {
      return f.eval(s) * std::exp(-pi * (s - tt) * (s - tt)) * std::exp(cd{0.0, -2.0 * pi * s * ww});
    });
    CHECK(std::abs(closed - quad) < 1e-9 * (1.0 + std::abs(closed)));
  }
}

TEST_CASE("hat h entire extension") {
  const gpr::signal phi = signal::gaussian();
  CHECK(std::abs(hat_h(phi, cd{0.0, 0.0}) - inv_sqrt2) < 1e-15);
  CHECK(hat_h(signal::zero(), cd{1.0, 2.0}) == cd{0.0, 0.0});
  // hat h_phi(z) = 2^{-1/2} exp(-pi z^2 / 2); at z = 1+i this is -2^{-1/2}
  CHECK(std::abs(hat_h(phi, cd{1.0, 1.0}) - cd{-inv_sqrt2, 0.0}) < 1e-14);

  auto rng = make_rng(44);
  for (int i = 0; i < 10; ++i) {
    const auto f = random_signal(rng);
    const cd z = ucomplex(rng, 1.5);
    const cd closed = hat_h(f, z);
    const cd quad = integrate_line(
        [&](double s) { return std::exp(-pi * s * s) * f.eval(s) * std::exp(cd{0.0, -2.0 * pi * s} * z); });
    CHECK(std::abs(closed - quad) < 1e-9 * (1.0 + std::abs(closed)));
  }
}

TEST_CASE("gabor to hat h relation") {
  auto rng = make_rng(45);
  for (int i = 0; i < 60; ++i) {
    const auto f = random_signal(rng);
    const double t = uni(rng, -3.0, 3.0), w = uni(rng, -3.0, 3.0);
    const cd lhs = gabor(f, t, w);
    const cd rhs = std::exp(-pi * t * t) * hat_h(f, cd{w, t});
    CHECK(rel_dev(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("bargmann transform") {
  const gpr::signal phi = signal::gaussian();
  auto rng = make_rng(46);
  for (int i = 0; i < 20; ++i) {
    const cd z = ucomplex(rng, 2.0);
    CHECK(std::abs(bargmann(phi, z) - two_pow_neg_quarter) < 1e-12);
  }
  CHECK(bargmann(signal::zero(), cd{0.5, 0.5}) == cd{0.0, 0.0});
  CHECK(std::abs(bargmann(phi, cd{0.0, 0.0}) - two_pow_neg_quarter) < 1e-15);

  for (int i = 0; i < 8; ++i) {
    const auto f = random_signal(rng);
    const cd z = ucomplex(rng, 1.2);
    const cd closed = bargmann(f, z);
    const cd quad = integrate_line([&](double s) {
      return f.eval(s) * std::exp(2.0 * pi * s * z - pi * s * s - pi * z * z / 2.0);
    }) * std::pow(2.0, 0.25);
    CHECK(std::abs(closed - quad) < 1e-9 * (1.0 + std::abs(closed)));
  }
}

TEST_CASE("gabor to bargmann relation") {
  auto rng = make_rng(47);
  for (int i = 0; i < 60; ++i) {
    const auto f = random_signal(rng);
    const double t = uni(rng, -3.0, 3.0), w = uni(rng, -3.0, 3.0);
    const cd z{t, w};
    const cd lhs = gabor(f, t, -w);
    const cd rhs = two_pow_neg_quarter * std::exp(cd{-pi * std::norm(z) / 2.0, pi * t * w}) * bargmann(f, z);
    CHECK(rel_dev(lhs, rhs) < 1e-9);
  }
}

TEST_CASE("linearity of the transforms") {
  auto rng = make_rng(48);
  for (int i = 0; i < 10; ++i) {
    const auto f = random_signal(rng);
    const auto g = random_signal(rng);
    const cd s = ucomplex(rng, 1.0);
    const double t = uni(rng, -2.0, 2.0), w = uni(rng, -2.0, 2.0);
    const cd z = ucomplex(rng, 1.0);
    CHECK(rel_dev(gabor(f + g, t, w), gabor(f, t, w) + gabor(g, t, w)) < 1e-12);
    CHECK(rel_dev(gabor(f.scaled_by(s), t, w), s * gabor(f, t, w)) < 1e-12);
    CHECK(rel_dev(hat_h(f + g, z), hat_h(f, z) + hat_h(g, z)) < 1e-12);
    CHECK(rel_dev(bargmann(f.scaled_by(s), z), s * bargmann(f, z)) < 1e-12);
  }
}

TEST_CASE("cauchy-schwarz bound on the gabor transform") {
  auto rng = make_rng(49);
  for (int i = 0; i < 20; ++i) {
    const auto f = random_signal(rng);
    const double t = uni(rng, -3.0, 3.0), w = uni(rng, -3.0, 3.0);
    CHECK(std::abs(gabor(f, t, w)) <= norm(f) * two_pow_neg_quarter + 1e-12);
  }
}

TEST_CASE("ff extension") {
  const gpr::signal phi = signal::gaussian();
  CHECK(std::abs(ff_extension(phi, 0.0, cd{0.0, 0.0}, cd{0.0, 0.0}) - cd{0.5, 0.0}) < 1e-14);
  CHECK(ff_extension(signal::zero(), 0.7, cd{0.3, 0.1}, cd{1.0, 1.0}) == cd{0.0, 0.0});

  // restriction to the real axis equals |hat h(z0 + x e^{i theta})|^2
  const double x = 0.7, theta = pi / 3.0;
  const cd via_hat = std::norm(hat_h(phi, x * std::exp(cd{0.0, theta})));
  CHECK(std::abs(ff_extension(phi, theta, cd{0.0, 0.0}, cd{x, 0.0}) - via_hat) < 1e-12);

  auto rng = make_rng(50);
  for (int i = 0; i < 40; ++i) {
    const auto f = random_signal(rng);
    const double th = uni(rng, 0.0, 2.0 * pi);
    const cd z0 = ucomplex(rng, 1.0);
    const double xr = uni(rng, -2.0, 2.0);
    const cd val = ff_extension(f, th, z0, cd{xr, 0.0});
    CHECK(std::abs(val.imag()) <= 1e-12 * (1.0 + std::abs(val)));
    CHECK(val.real() >= -1e-12);
    const double ref = std::norm(hat_h(f, z0 + xr * std::exp(cd{0.0, th})));
    CHECK(std::abs(val.real() - ref) <= 1e-10 * (1.0 + ref));
  }
}

TEST_CASE("magnitude samples") {
  const gpr::signal phi = signal::gaussian();
  std::vector<point2> pts{{0.0, 0.0}};
  auto out = magnitude_samples(phi, pts);
  REQUIRE(out.size() == 1);
  CHECK(std::abs(out[0].second - inv_sqrt2) < 1e-14);

  auto zeros = magnitude_samples(signal::zero(), pts);
  CHECK(zeros[0].second == 0.0);
  CHECK(magnitude_samples(phi, std::vector<point2>{}).empty());
}

TEST_CASE("hermite basis is orthonormal") {
  const auto basis = hermite_basis(10);
  for (int m = 0; m < 10; ++m)
    for (int n = m; n < 10; ++n) {
      const cd ip = inner_product(basis[m], basis[n]);
      CHECK(std::abs(ip - (m == n ? cd{1.0, 0.0} : cd{0.0, 0.0})) < 1e-12);
    }
  // h_0 is the normalized Gaussian
  const gpr::signal phi = signal::gaussian();
  CHECK(std::abs(inner_product(basis[0], phi) - std::pow(2.0, 0.25) * inv_sqrt2) < 1e-14);
}

TEST_CASE("gaussian-shaped hat h inversion") {
  auto rng = make_rng(51);
  for (int i = 0; i < 20; ++i) {
    // q inside the admissible disk |q - pi/2| < pi/2
    const double rad = uni(rng, 0.0, 0.45 * pi), ang = uni(rng, 0.0, 2.0 * pi);
    const cd q = pi / 2.0 + rad * std::exp(cd{0.0, ang});
    const cd l = ucomplex(rng, 1.0);
    const cd logc = ucomplex(rng, 0.5);
    const gpr::signal p = signal_from_hat_gaussian(q, l, logc);
    for (int j = 0; j < 4; ++j) {
      const cd z = ucomplex(rng, 1.5);
      const cd want = std::exp(-q * z * z + l * z + logc);
      CHECK(std::abs(hat_h(p, z) - want) < 1e-10 * (1.0 + std::abs(want)));
    }
  }
  CHECK_THROWS_AS((void)signal_from_hat_gaussian(cd{pi, 0.0}, cd{0.0, 0.0}, cd{0.0, 0.0}),
                  std::domain_error);
}

TEST_CASE("moment recurrence degree cap") {
  CHECK_THROWS_AS((void)gauss_moments(cd{1.0, 0.0}, cd{0.0, 0.0}, 65), std::invalid_argument);
  CHECK(gauss_moments(cd{1.0, 0.0}, cd{0.3, 0.1}, 64).size() == 65);
}

TEST_CASE("signal json round trip") {
  auto rng = make_rng(52);
  const auto f = random_signal(rng, 3, 3);
  const auto j = to_json(f);
  const auto g = signal_from_json(j);
  REQUIRE(g.atoms.size() == f.atoms.size());
  for (int i = 0; i < 6; ++i) {
    const cd s = ucomplex(rng, 1.0);
    CHECK(std::abs(f.eval(s) - g.eval(s)) < 1e-14 * (1.0 + std::abs(f.eval(s))));
  }
  CHECK(to_json(g) == j);
}

TEST_CASE("separable transforms factor") {
  auto rng = make_rng(53);
  const auto f1 = random_signal(rng), f2 = random_signal(rng);
  multi_signal f{{f1, f2}};
  const std::vector<double> t{0.4, -0.2}, w{0.1, 0.7};
  const cd lhs = gabor(f, t, w);
  const cd rhs = gabor(f1, t[0], w[0]) * gabor(f2, t[1], w[1]);
  CHECK(rel_dev(lhs, rhs) < 1e-12);
  CHECK(std::abs(inner_product(f, f).real() -
                 inner_product(f1, f1).real() * inner_product(f2, f2).real()) < 1e-12);
}
