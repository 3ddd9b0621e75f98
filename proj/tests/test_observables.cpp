#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "birkhoff/observables.hpp"
#include "birkhoff/rotations.hpp"

using namespace birkhoff;

TEST_CASE("log-singular observable at reference points") {
  const auto g = observable::log_sin();
  CHECK(g(0.5) == Catch::Approx(std::log(4.0)).epsilon(1e-15));
  CHECK(std::fabs(g(1.0 / 6.0)) < 1e-14);
  // direct scalar evaluation at the golden mean
  const double alpha = presets::golden().value();
  CHECK(g(alpha) == Catch::Approx(1.2455190103148602).margin(1e-12));
  CHECK(g.mean() == 0.0);
  CHECK(g.singular_points() == std::vector<double>{0.0});
}

TEST_CASE("exact singular points raise") {
  const auto g = observable::log_sin();
  CHECK_THROWS_AS(g(0.0), singular_point);
  CHECK_THROWS_AS(g.eval_rational(0, 7), singular_point);
  CHECK_THROWS_AS(g.eval_fixed(0), singular_point);
}

TEST_CASE("symmetry g(x) = g(1-x)") {
  const auto g = observable::log_sin();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(1e-6, 0.999999);
  for (int i = 0; i < 200; ++i) {
    const double x = dist(rng);
    CHECK(std::fabs(g(x) - g(1.0 - x)) < 1e-13);
  }
}

TEST_CASE("g(x) - 2 log x approaches log(4 pi^2) at the singularity") {
  const auto g = observable::log_sin();
  const double target = std::log(4.0 * std::numbers::pi * std::numbers::pi);
  CHECK(std::fabs(g(1e-3) - 2.0 * std::log(1e-3) - target) < 1e-4);
  CHECK(std::fabs(g(1e-5) - 2.0 * std::log(1e-5) - target) < 1e-8);
}

TEST_CASE("quadrature over [delta, 1-delta] plus the analytic tail gives mean 0") {
  const auto g = observable::log_sin();
  const double delta = 1e-6;
  boost::math::quadrature::tanh_sinh<double> integ;
  const double body =
      integ.integrate([&](double x) { return g(x); }, delta, 1.0 - delta);
  // each tail integrates 2 log(2 pi x): 2 delta (log(2 pi delta) - 1)
  const double tail =
      2.0 * (2.0 * delta * (std::log(2.0 * std::numbers::pi * delta) - 1.0));
  CHECK(std::fabs(body + tail) < 1e-6);
}

TEST_CASE("sawtooth observable") {
  const auto zm = observable::hecke(true);
  const auto raw = observable::hecke(false);
  CHECK(zm(0.25) == -0.25);
  CHECK(raw(0.25) == 0.25);
  CHECK(zm(0.0) == -0.5);
  CHECK(raw(0.0) == 0.0);
  CHECK(zm.mean() == 0.0);
  CHECK(raw.mean() == 0.5);
  CHECK_FALSE(zm.singular_at_zero());
  CHECK(zm.singular_points().empty());
  CHECK(zm.eval_rational(1, 4) == -0.25);
}

TEST_CASE("log trig polynomial with coefficients (2,-2) equals the log-sin form") {
  const auto g = observable::log_sin();
  const auto tp = observable::log_trig_poly({2.0, -2.0});
  for (double x : {0.01, 0.1, 0.25, 0.5, 0.77, 0.99}) {
    CHECK(tp(x) == Catch::Approx(g(x)).margin(1e-11));
  }
  CHECK(tp.root_count() == 1);
  CHECK(std::fabs(tp.mean()) < 1e-8);
  CHECK_THROWS_AS(tp(0.0), singular_point);
}

TEST_CASE("root-count utility sees rootless polynomials") {
  const auto tp = observable::log_trig_poly({3.0, -1.0});  // r >= 2 > 0
  CHECK(tp.root_count() == 0);
  CHECK(tp(0.0) == Catch::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("constant shift moves values and mean together") {
  const auto g = observable::log_sin().shifted(0.5);
  CHECK(g(0.5) == Catch::Approx(std::log(4.0) + 0.5).epsilon(1e-15));
  CHECK(g.mean() == 0.5);
  const auto h = observable::hecke(true).shifted(-0.25);
  CHECK(h(0.25) == -0.5);
}

TEST_CASE("fixed-point evaluation agrees with the double path") {
  const auto g = observable::log_sin();
  const auto rot = presets::golden();
  for (std::uint64_t j : {1ull, 2ull, 5ull, 100ull}) {
    const auto pt = rot.orbit({}, j);
    CHECK(g.eval_fixed(pt.frac) == Catch::Approx(g(pt.value())).margin(1e-12));
  }
}
