#include <catch2/catch_amalgamated.hpp>

#include "birkhoff/distribution.hpp"

using namespace birkhoff;

namespace {
const observable g = observable::log_sin();
const rotation_number golden = presets::golden();
}  // namespace

TEST_CASE("histogram bookkeeping: counts, edges, out-of-range") {
  histogram h(0.0, 2.0, 4);
  h.add(0.1);
  h.add(0.5);
  h.add(1.999999);
  h.add(2.0);   // hi edge is out of range (half-open)
  h.add(-0.1);
  CHECK(h.total == 5);
  CHECK(h.out_of_range == 2);
  CHECK(h.counts == std::vector<std::int64_t>({2, 0, 0, 1}));
  CHECK(h.in_range() == 3);
  CHECK(h.bin_center(0) == 0.25);
  CHECK_THROWS_AS(histogram(0.0, 0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(histogram(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("K = 2 yields a single ratio sample") {
  const auto h = ratio_histogram(g, golden, 2, 10, 0.0, 3.0);
  CHECK(h.total == 1);
  CHECK(h.out_of_range == 0);
  std::int64_t n = 0;
  for (auto c : h.counts) n += c;
  CHECK(n == 1);
  CHECK_THROWS_AS(ratio_histogram(g, golden, 1, 10, 0.0, 3.0),
                  std::invalid_argument);
}

TEST_CASE("ratio statistics reject non-zero-mean observables") {
  CHECK_THROWS_AS(
      ratio_histogram(observable::hecke(false), golden, 100, 10, 0.0, 2.0),
      non_zero_mean);
  CHECK_THROWS_AS(
      ratio_histogram(g.shifted(0.5), golden, 100, 10, 0.0, 2.0),
      non_zero_mean);
  CHECK_NOTHROW(
      ratio_histogram(observable::hecke(true), golden, 100, 10, -2.0, 2.0));
}

TEST_CASE("symmetry defect: exact cases") {
  histogram sym(0.0, 2.0, 4);
  sym.counts = {3, 7, 7, 3};
  sym.total = 20;
  CHECK(symmetry_defect(sym) == 0.0);

  histogram delta(0.0, 2.0, 4);
  delta.counts = {0, 9, 0, 0};
  delta.total = 9;
  CHECK(symmetry_defect(delta) == 2.0);

  histogram odd(0.0, 2.0, 5);
  odd.counts = {1, 0, 0, 0, 0};
  odd.total = 1;
  CHECK_THROWS_AS(symmetry_defect(odd), std::invalid_argument);

  histogram empty(0.0, 2.0, 4);
  CHECK_THROWS_AS(symmetry_defect(empty), empty_histogram);
}

TEST_CASE("golden ratio histogram at a small depth") {
  const auto conv = golden.convergents(14);
  const auto K = to_int64_checked(conv.back().q);
  const auto h = ratio_histogram(g, golden, K, 200, 0.0, 2.0);
  CHECK(h.total == K - 1);
  // the only out-of-range samples are the small-k transients
  CHECK(static_cast<double>(h.out_of_range) / static_cast<double>(h.total) <
        0.01);
  const auto h2 = ratio_histogram(g, golden, K, 200, 0.0, 2.0);
  CHECK(h.counts == h2.counts);  // deterministic
}

TEST_CASE("Fourier coefficients: normalization and bounds") {
  const auto fc = fourier_of_ratios(g, golden, 14, 16, true);
  REQUIRE(fc.coeffs.size() == 17);
  CHECK(fc.coeffs[0].real() == 1.0);
  CHECK(fc.coeffs[0].imag() == 0.0);
  for (const auto& z : fc.coeffs) CHECK(std::abs(z) <= 1.0 + 1e-12);
  CHECK_THROWS_AS(fourier_of_ratios(g, golden, 14, -1, true),
                  std::invalid_argument);
}

TEST_CASE("the two ratio normalizations differ but stay close in m") {
  const auto fq = fourier_of_ratios(g, golden, 14, 8, true);
  const auto fk = fourier_of_ratios(g, golden, 14, 8, false);
  bool any_diff = false;
  for (std::size_t i = 1; i < fq.coeffs.size(); ++i)
    if (std::abs(fq.coeffs[i] - fk.coeffs[i]) > 1e-6) any_diff = true;
  CHECK(any_diff);
  CHECK(fq.log_qn_normalization);
  CHECK_FALSE(fk.log_qn_normalization);
}

TEST_CASE("per-block extrema of the ratio trace bracket the envelopes") {
  // block max (just below q_n) nears 2, block min (at q_n) stays positive
  const auto conv = golden.convergents(16);
  const auto q15 = to_int64_checked(conv[14].q);
  const auto q16 = to_int64_checked(conv[15].q);
  double bmax = -1e300, bmin = 1e300;
  scan_irrational(g, golden, q16, {}, [&](std::int64_t k, double s) {
    if (k <= q15 || k < 2) return;
    const double r = s / std::log(static_cast<double>(k));
    bmax = std::max(bmax, r);
    bmin = std::min(bmin, r);
  });
  CHECK(bmax < 2.0);
  CHECK(2.0 - bmax < 0.1);
  CHECK(bmin > 0.0);
}
