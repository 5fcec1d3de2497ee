#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gpr/gpr.hpp"
#include "test_util.hpp"

using namespace gpr;
using gpr_test::make_rng;
using gpr_test::ucomplex;
using gpr_test::uni;

namespace {
zero_set integer_zeros(long long n_max) {
  zero_set zs;
  for (long long n = 1; n <= n_max; ++n) {
    zs.zeros.push_back(cd{static_cast<double>(n), 0.0});
    zs.zeros.push_back(cd{static_cast<double>(-n), 0.0});
  }
  zs.tail = power_tail{0.5, 1.0};  // sorted modulus of the n-th entry is >= n/2
  return zs;
}
}  // namespace

TEST_CASE("elementary factors") {
  CHECK(elementary_factor(0, cd{2.0, 0.0}) == cd{-1.0, 0.0});
  CHECK(std::abs(elementary_factor(1, cd{1.0, 0.0})) == 0.0);
  const cd e2 = elementary_factor(2, cd{0.5, 0.0});
  CHECK(std::abs(e2 - 0.5 * std::exp(0.625)) < 1e-15);

  auto rng = make_rng(3);
  for (int i = 0; i < 20; ++i) {
    const cd z = ucomplex(rng, 0.4);
    const int p = std::uniform_int_distribution<int>(0, 4)(rng);
    CHECK(std::abs(std::exp(log_elementary_factor(p, z)) - elementary_factor(p, z)) < 1e-13);
  }
}

TEST_CASE("residue components and g series") {
  power_series f{{cd{1, 0}, cd{1, 0}, cd{1, 0}, cd{1, 0}}};  // 1 + z + z^2 + z^3
  const auto f0 = residue_component(f, 2, 0);
  CHECK(f0.coeffs == std::vector<cd>{cd{2, 0}, cd{0, 0}, cd{2, 0}, cd{0, 0}});
  const auto f1 = residue_component(f, 2, 1);
  CHECK(f1.coeffs == std::vector<cd>{cd{0, 0}, cd{2, 0}, cd{0, 0}, cd{2, 0}});

  const auto g0 = g_series(f, 2, 0);
  CHECK(g0.coeffs == std::vector<cd>{cd{0, 0}, cd{2, 0}, cd{2, 0}});  // 2(z + z^2)

  // residue class with no coefficients -> zero series
  power_series even{{cd{1, 0}, cd{0, 0}, cd{3, 0}}};
  const auto godd = g_series(even, 2, 1);
  for (const auto& c : godd.coeffs) CHECK(c == cd{0, 0});
}

TEST_CASE("roots of unity partition and g identity on random polynomials") {
  auto rng = make_rng(4);
  for (int rep = 0; rep < 50; ++rep) {
    power_series f;
    f.coeffs.resize(33);
    for (auto& c : f.coeffs) c = ucomplex(rng, 1.0);
    for (int m = 1; m <= 8; ++m) {
      // sum_k f_k = m f at coefficient level
      std::vector<cd> sum(f.coeffs.size(), cd{0, 0});
      for (int k = 0; k < m; ++k) {
        const auto fk = residue_component(f, m, k);
        for (std::size_t i = 0; i < fk.coeffs.size(); ++i) sum[i] += fk.coeffs[i];
      }
      for (std::size_t i = 0; i < sum.size(); ++i)
        CHECK(std::abs(sum[i] - static_cast<double>(m) * f.coeffs[i]) <= 1e-12);
      // g_k(z^m) = z^{m-k} f_k(z) pointwise
      for (int k = 0; k < m; ++k) {
        const auto fk = residue_component(f, m, k);
        const auto gk = g_series(f, m, k);
        const cd z = ucomplex(rng, 0.9);
        const cd zm = std::pow(z, m);
        const cd lhs = gk.eval(zm);
        const cd rhs = std::pow(z, m - k) * fk.eval(z);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
      }
    }
  }
}

TEST_CASE("canonical product against the sine identity") {
  const auto zs = integer_zeros(100000);
  // prod (1 - z^2/n^2) = sin(pi z)/(pi z)
  for (const cd z : {cd{0.5, 0.0}, cd{0.3, 0.2}, cd{-1.7, 0.4}, cd{2.5, -1.1}}) {
    const auto res = canonical_product(zs, 1, z, 1e-3);
    CHECK(!res.exact_zero);
    const cd expect = std::sin(pi * z) / (pi * z);
    const double rel = std::abs(res.value.value() - expect) / std::abs(expect);
    CHECK(rel <= res.tail_log_bound * 1.5 + 1e-10);
  }
  // value at z = 1/2 is 2/pi
  const auto half = canonical_product(zs, 1, cd{0.5, 0.0}, 1e-4);
  CHECK(std::abs(half.value.value() - 2.0 / pi) < 1e-4);

  // empty exponent case: zeros {1}, genus 0, z = 0
  zero_set one;
  one.zeros = {cd{1.0, 0.0}};
  CHECK(canonical_product(one, 0, cd{0.0, 0.0}).value.value() == cd{1.0, 0.0});

  // vanishing at a listed zero
  const auto at_zero = canonical_product(zs, 1, cd{7.0, 0.0}, 1e-4);
  CHECK(at_zero.exact_zero);
  CHECK(at_zero.value.is_zero());
}

TEST_CASE("canonical product vanishing and off-zero behaviour") {
  auto rng = make_rng(5);
  zero_set zs;
  for (int n = 1; n <= 2000; ++n) {
    const double mod = std::pow(n, 0.8);
    const double ang = uni(rng, 0.0, 2.0 * pi);
    zs.zeros.push_back(mod * std::exp(cd{0.0, ang}));
  }
  zs.sort_by_modulus();
  for (int i = 0; i < 10; ++i) {
    const std::size_t idx = std::uniform_int_distribution<std::size_t>(0, 99)(rng);
    CHECK(canonical_product(zs, 1, zs.zeros[idx]).exact_zero);
    CHECK(std::abs(canonical_product(zs, 1, zs.zeros[idx]).value.value()) <= 1e-12);
  }
  // off-zero sample: |value| stays above the certified tail would allow for zero
  for (int i = 0; i < 10; ++i) {
    const cd z = ucomplex(rng, 3.0) + cd{0.37, 0.0};
    double dmin = 1e9;
    for (const auto& zn : zs.zeros) dmin = std::min(dmin, std::abs(z - zn));
    if (dmin < 0.05) continue;
    const auto res = canonical_product(zs, 1, z);
    CHECK(std::abs(res.value.value()) > 0.0);
  }
}

TEST_CASE("log-abs fast paths agree with the full evaluations") {
  auto rng = make_rng(6);
  const auto zs = integer_zeros(500);
  for (int i = 0; i < 10; ++i) {
    const cd z = ucomplex(rng, 5.0) + cd{0.21, 0.13};
    CHECK(canonical_log_abs(zs, 1, z) ==
          doctest::Approx(canonical_product(zs, 1, z, 1e30).value.log_abs()).epsilon(1e-10));
  }
  std::vector<double> lam;
  for (int n = 1; n <= 500; ++n) lam.push_back(std::sqrt(static_cast<double>(n)));
  for (int i = 0; i < 10; ++i) {
    const cd z = ucomplex(rng, 4.0) + cd{0.11, 0.07};
    CHECK(quartic_log_abs(lam, z) ==
          doctest::Approx(quartic_line_product(lam, z, 1e30).value.log_abs()).epsilon(1e-10));
  }
}

TEST_CASE("convergence exponent and genus") {
  // z_n = n: exponent 1, genus 1
  {
    zero_set zs;
    for (int n = 1; n <= 10000; ++n) zs.zeros.push_back(cd{static_cast<double>(n), 0.0});
    const auto res = convergence_exponent(zs);
    CHECK(res.exponent == doctest::Approx(1.0).epsilon(0.02));
    CHECK(res.genus == 1);
    CHECK_FALSE(res.low_confidence);
  }
  // fourth-roots-of-unity pattern with moduli sqrt(n): exponent 2, genus 2
  {
    zero_set zs;
    const cd dirs[4] = {cd{1, 0}, cd{0, 1}, cd{-1, 0}, cd{0, -1}};
    for (int n = 1; n <= 10000; ++n) zs.zeros.push_back(std::sqrt(static_cast<double>(n)) * dirs[n % 4]);
    zs.sort_by_modulus();
    const auto res = convergence_exponent(zs);
    CHECK(res.exponent == doctest::Approx(2.0).epsilon(0.02));
    CHECK(res.genus == 2);
  }
  // geometric moduli: exponent 0, genus 0
  {
    zero_set zs;
    for (int n = 1; n <= 120; ++n) zs.zeros.push_back(cd{std::pow(2.0, n / 8.0), 0.0});
    const auto res = convergence_exponent(zs);
    CHECK(res.exponent < 0.35);
    CHECK(res.genus == 0);
    CHECK(res.low_confidence == false);
  }
  // short input flags low confidence
  {
    zero_set zs;
    for (int n = 1; n <= 50; ++n) zs.zeros.push_back(cd{static_cast<double>(n), 0.0});
    CHECK(convergence_exponent(zs).low_confidence);
  }
}

TEST_CASE("indicator estimates") {
  std::vector<double> grid;
  for (int i = 0; i < 12; ++i) grid.push_back(1.0 + i);
  const log_abs_fn f = [](cd z) { return (z * z).real(); };  // log|e^{z^2}|
  CHECK(indicator_estimate(f, 2.0, 0.0, grid).value == doctest::Approx(1.0));
  CHECK(indicator_estimate(f, 2.0, pi / 4.0, grid).value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(indicator_estimate(f, 2.0, pi / 2.0, grid).value == doctest::Approx(-1.0));
}

TEST_CASE("carlson gap criterion") {
  CHECK(carlson_gap(pi, pi, pi, pi, 0.9));
  CHECK_FALSE(carlson_gap(pi, pi, pi, pi, 1.1));
  CHECK_FALSE(carlson_gap(pi, pi, pi, pi, 1.0));  // strict inequality
  CHECK(carlson_gap(0.0, 0.1, 0.2, 0.0, 2.0));    // 0.3 < 2 pi / 4
}

TEST_CASE("quartic line product") {
  std::vector<double> lam;
  for (int n = 1; n <= 100000; ++n) lam.push_back(std::sqrt(static_cast<double>(n)));

  CHECK(quartic_line_product(lam, cd{lam[0], 0.0}).exact_zero);
  CHECK(quartic_line_product(lam, cd{0.0, lam[4]}).exact_zero);  // i lambda_5 is a zero too
  CHECK(quartic_line_product(lam, cd{0.0, 0.0}).value.value() == cd{1.0, 0.0});

  // diagonal: prod(1 + x^4/n^2) = sinh(pi x^2)/(pi x^2)
  const double x = 1.2;
  const cd zd = x * std::exp(cd{0.0, pi / 4.0});
  const auto res = quartic_line_product(lam, zd, 1e-3);
  const double expect = std::sinh(pi * x * x) / (pi * x * x);
  CHECK(std::abs(std::abs(res.value.value()) - expect) / expect <= res.tail_log_bound * 1.5 + 1e-9);

  // on the imaginary axis the limit is sin(pi x^2)/(pi x^2)
  const auto resi = quartic_line_product(lam, cd{0.0, x}, 1e-3);
  const double expecti = std::sin(pi * x * x) / (pi * x * x);
  CHECK(std::abs(resi.value.value().real() - expecti) <= std::abs(expecti) * resi.tail_log_bound * 1.5 + 1e-6);

  CHECK_THROWS_AS((void)quartic_line_product({1.0, 1.0, 2.0}, cd{0.5, 0.0}), std::invalid_argument);
}

TEST_CASE("order and type estimates") {
  std::vector<double> grid;
  for (int i = 0; i < 16; ++i) grid.push_back(4.0 * std::pow(10.0, i / 15.0));

  const log_abs_fn exp_z = [](cd z) { return z.real(); };
  const auto r1 = order_type_estimate(exp_z, grid, 64);
  CHECK(r1.order == doctest::Approx(1.0).epsilon(0.02));
  CHECK(type_estimate(exp_z, 1.0, grid, 64) == doctest::Approx(1.0).epsilon(0.01));

  const log_abs_fn exp_z2 = [](cd z) { return (z * z).real(); };
  const auto r2 = order_type_estimate(exp_z2, grid, 64);
  CHECK(r2.order == doctest::Approx(2.0).epsilon(0.02));
  CHECK(type_estimate(exp_z2, 2.0, grid, 64) == doctest::Approx(1.0).epsilon(0.01));

  // quartic product with lambda_n = sqrt(n): order 2, type about pi at rho=2
  std::vector<double> lam;
  for (int n = 1; n <= 14400; ++n) lam.push_back(std::sqrt(static_cast<double>(n)));
  const log_abs_fn quart = [&](cd z) { return quartic_log_abs(lam, z); };
  const auto rq = order_type_estimate(quart, grid, 64);
  CHECK(rq.order == doctest::Approx(2.0).epsilon(0.05));
  const double tq = type_estimate(quart, 2.0, grid, 64);
  CHECK(tq > pi - 0.15);
  CHECK(tq <= pi + 0.1);
  // its indicator along the diagonal is pi
  CHECK(indicator_estimate(quart, 2.0, pi / 4.0, grid).value == doctest::Approx(pi).epsilon(0.02));
}

TEST_CASE("counting consistency between zero growth and plane density") {
  // zero set of the quartic product <-> the perpendicular square-root cross
  zero_set zs;
  const cd dirs[4] = {cd{1, 0}, cd{0, 1}, cd{-1, 0}, cd{0, -1}};
  for (int n = 1; n <= 20000; ++n)
    zs.zeros.push_back(std::sqrt(static_cast<double>((n + 3) / 4)) * dirs[n % 4]);
  zs.sort_by_modulus();
  const double rho = convergence_exponent(zs).exponent;

  const auto cross = intersecting_lines_set({0.0, 0.0}, 0.0, pi / 2.0, 1.0, 0.5, 2.0);
  std::vector<double> radii;
  for (int i = 0; i < 16; ++i) radii.push_back(10.0 * std::pow(30.0, i / 15.0));
  const double dens = density_estimate(cross, radii);
  CHECK(std::abs(rho - dens) < 0.1);
}

TEST_CASE("power series json round trip") {
  power_series f{{cd{1.0, -0.5}, cd{0.0, 2.0}, cd{3.0, 0.0}}};
  const auto j = to_json(f);
  const auto g = power_series_from_json(j);
  CHECK(g.coeffs == f.coeffs);

  zero_set zs;
  zs.zeros = {cd{1.0, 2.0}, cd{-3.0, 0.5}};
  zs.origin_multiplicity = 1;
  zs.tail = power_tail{0.7, 0.5};
  const auto jz = to_json(zs);
  const auto back = zero_set_from_json(jz);
  CHECK(back.zeros == zs.zeros);
  CHECK(back.origin_multiplicity == 1);
  REQUIRE(back.tail.has_value());
  CHECK(back.tail->scale == 0.7);
}

TEST_CASE("indicator estimate flags non-finite evaluations") {
  std::vector<double> grid{1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
  const log_abs_fn overflowing = [](cd z) {
    const double v = std::exp(std::abs(z));  // overflows to inf from |z| ~ 710
    return v * std::abs(z) > 1e300 ? std::numeric_limits<double>::infinity() : std::abs(z);
  };
  const log_abs_fn partial = [](cd z) {
    return std::abs(z) > 10.0 ? std::numeric_limits<double>::infinity() : std::abs(z);
  };
  const auto res = indicator_estimate(partial, 1.0, 0.0, grid);
  CHECK(res.truncated);
  CHECK(res.value == doctest::Approx(1.0));
  CHECK_FALSE(indicator_estimate(overflowing, 1.0, 0.0, {1.0, 2.0, 3.0, 4.0}).truncated);
}

TEST_CASE("estimator input validation") {
  CHECK_THROWS_AS((void)indicator_estimate([](cd) { return 0.0; }, 1.0, 0.0, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS((void)carlson_gap(1.0, 1.0, 1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)canonical_product(zero_set{}, -1, cd{0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS((void)residue_component(power_series{}, 2, 2), std::invalid_argument);
}
