#include <catch2/catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include "birkhoff/renorm.hpp"

using namespace birkhoff;

namespace {
const observable g = observable::log_sin();
const rotation_number golden = presets::golden();
}  // namespace

TEST_CASE("f_n on a single cell is the zero function") {
  const auto f = build_f_n(g, golden, 1);  // q_1 = 1
  REQUIRE(f.q == 1);
  CHECK(f.vals == std::vector<double>{0.0});
}

TEST_CASE("f_{n,1} equals f_n bitwise and m = 0 is rejected") {
  const auto a = build_f_n(g, golden, 10);
  const auto b = build_f_nm(g, golden, 10, 1);
  CHECK(a.vals == b.vals);
  CHECK_THROWS_AS(build_f_nm(g, golden, 10, 0), std::invalid_argument);
}

TEST_CASE("telescoping identity is exact over the stored doubles") {
  // (f_{n,m} - f_n) - sum_{j<m} (f_{n,j+1} - f_{n,j}) = 0 in exact rational
  // arithmetic on the stored values
  using rat = boost::multiprecision::cpp_rational;
  const int n = 12, m = 3;
  std::vector<step_function> f;
  for (int j = 1; j <= m; ++j) f.push_back(build_f_nm(g, golden, n, j));
  for (std::int64_t k = 0; k < f[0].q; ++k) {
    const auto ki = static_cast<std::size_t>(k);
    rat r = rat(f[2].vals[ki]) - rat(f[0].vals[ki]);
    r -= rat(f[1].vals[ki]) - rat(f[0].vals[ki]);
    r -= rat(f[2].vals[ki]) - rat(f[1].vals[ki]);
    REQUIRE(r == 0);
  }
}

TEST_CASE("f_n and h_n ignore constant shifts of the observable") {
  const auto shifted = g.shifted(0.5);
  const auto f = build_f_n(g, golden, 14);
  const auto fs = build_f_n(shifted, golden, 14);
  double worst = 0.0;
  for (std::size_t k = 0; k < f.vals.size(); ++k)
    worst = std::max(worst, std::fabs(f.vals[k] - fs.vals[k]));
  CHECK(worst <= 1e-12);
  const auto h = build_h_n(g, golden, 14);
  const auto hs = build_h_n(shifted, golden, 14);
  for (std::size_t k = 0; k < h.vals.size(); ++k)
    worst = std::max(worst, std::fabs(h.vals[k] - hs.vals[k]));
  CHECK(worst <= 1e-12);
}

TEST_CASE("h_n(1-) approaches the reported limit") {
  const auto h18 = build_h_n(g, golden, 18);
  CHECK(h18.at_one_minus() == Catch::Approx(-0.309369).margin(1e-4));
}

TEST_CASE("beta of the zero function is zero") {
  step_function z;
  z.q = 100;
  z.vals.assign(100, 0.0);
  const auto b = build_beta_n(z, golden);
  for (double v : b.vals) CHECK(v == 0.0);
}

TEST_CASE("self-similarity report on a linear ramp has closed-form residuals") {
  // q = 6, vals = k/6: a = 2/6, b = 4/6, c = 5/6.  On the two-point midpoint
  // grid {0.25, 0.75} every residual works out to exactly 1/6.
  step_function ramp;
  ramp.q = 6;
  for (int k = 0; k < 6; ++k) ramp.vals.push_back(k / 6.0);
  const auto rep = beta_selfsimilarity_report(ramp, golden, 2);
  CHECK(rep.a == Catch::Approx(2.0 / 6.0).epsilon(1e-15));
  CHECK(rep.b == Catch::Approx(4.0 / 6.0).epsilon(1e-15));
  CHECK(rep.c == Catch::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(rep.sup_beta1 == Catch::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK(rep.l1_beta1 == Catch::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK(rep.sup_beta2 == Catch::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK(rep.l1_beta2 == Catch::Approx(1.0 / 6.0).epsilon(1e-13));
}

TEST_CASE("degenerate scalings are rejected") {
  step_function z;
  z.q = 6;
  z.vals.assign(6, 0.0);
  CHECK_THROWS_AS(beta_selfsimilarity_report(z, golden), degenerate_scaling);
}

TEST_CASE("period-1 beta combination reduces to build_beta_n") {
  const auto f = build_f_n(g, golden, 10);
  const auto direct = build_beta_n(f, golden);
  const auto combo = build_beta_periodic(f, f, 1, 1, golden);
  CHECK(direct.vals == combo.vals);
  const auto other = build_f_n(g, golden, 11);
  CHECK_THROWS_AS(build_beta_periodic(f, other, 1, 1, golden),
                  dimension_mismatch);
}

TEST_CASE("period-2 combination for (sqrt3-1)/2 is near-monotone") {
  const auto rot = presets::sqrt3_minus_1_over_2();
  const auto fe = build_f_n(g, rot, 12);
  const auto fo = build_f_n(g, rot, 13).resampled(fe.q);
  const auto b = build_beta_periodic(fe, fo, 2, 1, rot);
  CHECK(monotonicity_violation_fraction(b, 1e-3) < 0.05);
}

TEST_CASE("h from the f series: trivial input and tail bound") {
  step_function z;
  z.q = 50;
  z.vals.assign(50, 0.0);
  const auto est = estimate_h_from_f(z, golden, 40);
  for (double v : est.fn.vals) CHECK(v == 0.0);
  const double a = golden.value();
  CHECK(est.tail_bound ==
        Catch::Approx(std::pow(a, 41) / (1.0 - a)).epsilon(1e-12));
  CHECK_THROWS_AS(estimate_h_from_f(z, golden, 0), std::invalid_argument);
}

TEST_CASE("h from f cross-validates build_h_n at moderate depth") {
  const auto f = build_f_n(g, golden, 16);
  const auto h = build_h_n(g, golden, 16);
  const auto est = estimate_h_from_f(f, golden, 40);
  CHECK(compare_on_grid(est.fn, h).sup < 0.02);
}

TEST_CASE("predicted S_{q_n} limit") {
  CHECK(predict_Sqn_limit(-0.30945) == Catch::Approx(1.75687).margin(1e-5));
  CHECK(predict_Sqn_limit(0.0) ==
        Catch::Approx(2.0663162203845906).epsilon(1e-15));
}

TEST_CASE("gamma forms: zero input, dimension checks, near-monotonicity") {
  step_function z;
  z.q = 10;
  z.vals.assign(10, 0.0);
  const auto zz = build_gamma(z, z, golden, 5);
  for (double v : zz.direct.vals) CHECK(v == 0.0);
  for (double v : zz.series.vals) CHECK(v == 0.0);

  step_function other;
  other.q = 11;
  other.vals.assign(11, 0.0);
  CHECK_THROWS_AS(build_gamma(z, other, golden, 5), dimension_mismatch);

  const auto f = build_f_n(g, golden, 16);
  const auto h = build_h_n(g, golden, 16);
  const auto beta = build_beta_n(f, golden);
  const auto gf = build_gamma(h, beta, golden, 40);
  CHECK(compare_on_grid(gf.direct, gf.series).sup < 0.02);
  CHECK(monotonicity_violation_fraction(gf.direct, 1e-3) < 0.05);
}

TEST_CASE("sawtooth renormalization parabolas (measured coefficient)") {
  const auto hk = observable::hecke(true);
  const double c = 0.22360679774997897;  // 1/(2 sqrt 5)
  const auto h16 = build_h_n(hk, golden, 16);
  const auto h17 = build_h_n(hk, golden, 17);
  double sup16 = 0.0, sup17 = 0.0;
  for (std::int64_t k = 0; k < h16.q; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(h16.q);
    sup16 = std::max(sup16, std::fabs(h16.vals[static_cast<std::size_t>(k)] -
                                      c * x * x));
  }
  for (std::int64_t k = 0; k < h17.q; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(h17.q);
    sup17 = std::max(sup17, std::fabs(h17.vals[static_cast<std::size_t>(k)] +
                                      c * x * x));
  }
  CHECK(sup16 < 0.01);
  CHECK(sup17 < 0.01);
  CHECK(h16.at_one_minus() == Catch::Approx(c).margin(5e-4));
}

TEST_CASE("resampling looks up the enclosing coarse cell") {
  step_function f;
  f.q = 3;
  f.vals = {10.0, 20.0, 30.0};
  const auto r = f.resampled(6);
  CHECK(r.vals == std::vector<double>({10.0, 10.0, 20.0, 20.0, 30.0, 30.0}));
  CHECK(f.resampled(3).vals == f.vals);
}

TEST_CASE("monotonicity counter") {
  step_function f;
  f.q = 5;
  f.vals = {0.0, 1.0, 0.5, 2.0, 1.9995};
  CHECK(monotonicity_violation_fraction(f, 1e-3) == Catch::Approx(0.25));
  f.vals = {0.0, 1.0, 2.0, 3.0, 4.0};
  CHECK(monotonicity_violation_fraction(f, 1e-3) == 0.0);
}

TEST_CASE("exceptional set of the floor identity is thin at midpoints") {
  CHECK(exceptional_mass(g, golden, 12, 1) <= 0.01);
}

TEST_CASE("step evaluation conventions") {
  step_function f;
  f.q = 4;
  f.vals = {1.0, 2.0, 3.0, 4.0};
  CHECK(f.eval(0.0) == 1.0);
  CHECK(f.eval(0.26) == 2.0);
  CHECK(f.eval(0.999) == 4.0);
  CHECK(f.at_one_minus() == 4.0);
  CHECK(f.at_midpoint(0, 2) == 2.0);  // x = 0.25 -> cell 1
  CHECK(f.at_midpoint(1, 2) == 4.0);  // x = 0.75 -> cell 3
}
