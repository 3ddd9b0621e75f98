#include <catch2/catch_amalgamated.hpp>

#include "birkhoff/complexprod.hpp"

using namespace birkhoff;

namespace {
const observable g = observable::log_sin();
const rotation_number golden = presets::golden();
}  // namespace

TEST_CASE("rational product: the 13-gon diagonal identity") {
  const auto P = product_P(8, 13, 12);
  CHECK(std::exp(P.log_abs) == Catch::Approx(13.0).margin(1e-10));
  CHECK_THROWS_AS(product_P(8, 13, 13), singular_hit);
  // modulus/real-sum duality at the rational angle
  const auto tr = birkhoff_rational(g, 8, 13, 12);
  CHECK(std::fabs(2.0 * P.log_abs - tr.values.back()) < 1e-12);
}

TEST_CASE("single irrational factor") {
  const auto P = product_P(golden, 1);
  CHECK(2.0 * P.log_abs == Catch::Approx(g(golden.value())).margin(1e-12));
  // check the materialized complex value against 1 - e^{2 pi i alpha}
  const double a = golden.value();
  const std::complex<double> expect =
      1.0 - std::polar(1.0, 2.0 * std::numbers::pi * a);
  CHECK(std::abs(P.value() - expect) < 1e-12);
}

TEST_CASE("modulus duality 2 log|P_K| = S_K along the orbit") {
  const auto conv = golden.convergents(10);
  const auto K = to_int64_checked(conv.back().q);
  const auto P = product_P(golden, K);
  const auto tr = birkhoff_irrational(g, golden, K);
  CHECK(std::fabs(2.0 * P.log_abs - tr.values.back()) < 1e-10);
}

TEST_CASE("F_n: empty leading cell, definitional identity with f_n") {
  const auto F = build_F_n(golden, 10);
  CHECK(F.value(0) == std::complex<double>(1.0, 0.0));
  const auto f = build_f_n(g, golden, 10);
  REQUIRE(F.q == f.q);
  double worst = 0.0;
  for (std::int64_t k = 0; k < F.q; ++k)
    worst = std::max(worst,
                     std::fabs(2.0 * F.log_abs[static_cast<std::size_t>(k)] -
                               f.vals[static_cast<std::size_t>(k)]));
  CHECK(worst < 1e-9);
}

TEST_CASE("F images approach complex conjugates across parity") {
  const auto F14 = build_F_n(golden, 14);
  const auto F15 = build_F_n(golden, 15);
  std::vector<double> gaps(1000);
  for (int i = 0; i < 1000; ++i)
    gaps[static_cast<std::size_t>(i)] =
        std::abs(F14.at_midpoint(i, 1000) - std::conj(F15.at_midpoint(i, 1000)));
  std::sort(gaps.begin(), gaps.end());
  CHECK(gaps[500] < 0.005);
}

TEST_CASE("B_n: trivial input, modulus identity with beta_n") {
  complex_step_function one;
  one.q = 8;
  one.log_abs.assign(8, 0.0);
  one.arg.assign(8, 0.0);
  const auto B1 = build_B_n(one, golden);
  for (std::int64_t k = 0; k < 8; ++k)
    CHECK(std::abs(B1.value(k) - std::complex<double>(1.0, 0.0)) < 1e-15);

  const auto F = build_F_n(golden, 10);
  const auto B = build_B_n(F, golden);
  const auto beta = build_beta_n(build_f_n(g, golden, 10), golden);
  double worst = 0.0;
  for (std::int64_t k = 0; k < B.q; ++k)
    worst = std::max(worst,
                     std::fabs(2.0 * B.log_abs[static_cast<std::size_t>(k)] -
                               beta.vals[static_cast<std::size_t>(k)]));
  CHECK(worst < 1e-6);

  complex_step_function bad = one;
  bad.log_abs[3] = -std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(build_B_n(bad, golden), zero_base);
}

TEST_CASE("polygon diagonal products") {
  CHECK(polygon_diagonal_product(2) == Catch::Approx(2.0).margin(1e-12));
  CHECK(polygon_diagonal_product(5) == Catch::Approx(5.0).margin(1e-10));
  CHECK(polygon_diagonal_product(10946) ==
        Catch::Approx(10946.0).epsilon(1e-7));
  CHECK_THROWS_AS(polygon_diagonal_product(1), std::invalid_argument);
}

TEST_CASE("quadratic-map orbit tracks S_n/2") {
  CHECK(c2_orbit_check(golden, 1) < 1e-12);
  const auto conv = golden.convergents(14);
  CHECK(c2_orbit_check(golden, to_int64_checked(conv.back().q)) < 1e-8);
}
