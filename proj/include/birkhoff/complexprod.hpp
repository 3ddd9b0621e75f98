// complexprod.hpp -- complex-product forms of the Birkhoff sums.
//
// P_K = prod_{k=1}^K (1 - e^{2 pi i k alpha}) satisfies 2 log|P_K| = S_K for
// the log-singular observable; |P_{q-1}| at the rational p/q is the polygon
// diagonal product, equal to q.  All products accumulate (log-modulus,
// phase) pairs -- |P_{q_n - 1}| = q_n grows without bound and raw complex
// products would overflow long before the identity tests reach q = 1e5.
//
// F_n is the per-cell partial product of factor ratios between consecutive
// convergents; with g = 2 log|1 - e^{2 pi i x}| the definitional identities
// read f_n = 2 log|F_n| and beta_n = 2 log|B_n| (the factor 2 comes from g,
// not from the products).
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "birkhoff/numerics.hpp"
#include "birkhoff/renorm.hpp"
#include "birkhoff/rotations.hpp"
#include "birkhoff/sums.hpp"

namespace birkhoff {

struct zero_base : std::domain_error {
  using std::domain_error::domain_error;
};

struct log_complex {
  double log_abs = 0.0;
  double arg = 0.0;  // accumulated; reduce() maps to (-pi, pi]

  double arg_principal() const {
    double a = std::remainder(arg, 2.0 * std::numbers::pi);
    return a;
  }
  std::complex<double> value() const {
    const double m = std::exp(log_abs);
    return {m * std::cos(arg_principal()), m * std::sin(arg_principal())};
  }
};

namespace detail {

// log|1 - e^{2 pi i theta}| = log(2 sin(pi theta)) evaluated at the
// symmetric distance; arg(1 - e^{2 pi i theta}) = pi theta - pi/2.
inline double log_abs_factor_rational(std::int64_t m, std::int64_t q) {
  const std::int64_t mm = m <= q - m ? m : q - m;
  return std::log(2.0 * std::sin(std::numbers::pi * static_cast<double>(mm) /
                                 static_cast<double>(q)));
}

inline double log_abs_factor_fixed(uint128 r) {
  return std::log(2.0 *
                  std::sin(std::numbers::pi * fixed_to_double(fixed_dist_to_zero(r))));
}

}  // namespace detail

// P_K at the rational rotation p/q (k p mod q must stay nonzero).
inline log_complex product_P(std::int64_t p, std::int64_t q, std::int64_t K) {
  kahan_accumulator lm, ph;
  std::int64_t m = 0;
  for (std::int64_t k = 1; k <= K; ++k) {
    m += p;
    if (m >= q) m -= q;
    if (m == 0) throw singular_hit(k);
    lm.add(detail::log_abs_factor_rational(m, q));
    ph.add(std::numbers::pi *
           (static_cast<double>(m) / static_cast<double>(q) - 0.5));
  }
  return {lm.value(), ph.value()};
}

// P_K at an irrational rotation, 128-bit fixed-point angles.
inline log_complex product_P(const rotation_number& rot, std::int64_t K) {
  static constexpr uint128 proximity_limit = static_cast<uint128>(1) << 28;
  kahan_accumulator lm, ph;
  uint128 r = 0;
  for (std::int64_t k = 1; k <= K; ++k) {
    r += rot.fixed_point();
    if (fixed_dist_to_zero(r) < proximity_limit) throw singular_hit(k);
    lm.add(detail::log_abs_factor_fixed(r));
    ph.add(std::numbers::pi * (fixed_to_double(r) - 0.5));
  }
  return {lm.value(), ph.value()};
}

// Piecewise-constant complex function on q cells, stored as accumulated
// (log-modulus, phase); vals materialize on demand.
struct complex_step_function {
  std::int64_t q = 0;
  std::vector<double> log_abs;
  std::vector<double> arg;

  std::complex<double> value(std::int64_t k) const {
    const double m = std::exp(log_abs[static_cast<std::size_t>(k)]);
    const double a = arg[static_cast<std::size_t>(k)];
    return {m * std::cos(a), m * std::sin(a)};
  }
  std::complex<double> at_midpoint(int i, int npts) const {
    const auto c = static_cast<std::int64_t>(
        (static_cast<uint128>(2 * i + 1) * static_cast<uint128>(q)) /
        static_cast<uint128>(2 * npts));
    return value(std::min(c, q - 1));
  }
};

// F_n(x) = prod_{k<=[x q_n]} (1 - e(k p_{n+1}/q_{n+1})) / (1 - e(k p_n/q_n))
// on q_n cells, exact rational angles; cell 0 is the empty product.
inline complex_step_function build_F_n(const rotation_number& rot, int n,
                                       int index_offset = 0) {
  if (n < 1) throw std::invalid_argument("build_F_n: n >= 1");
  const auto conv = rot.convergents(n + 1, index_offset);
  const std::int64_t p0 = to_int64_checked(conv[static_cast<std::size_t>(n - 1)].p);
  const std::int64_t q0 = to_int64_checked(conv[static_cast<std::size_t>(n - 1)].q);
  const std::int64_t p1 = to_int64_checked(conv[static_cast<std::size_t>(n)].p);
  const std::int64_t q1 = to_int64_checked(conv[static_cast<std::size_t>(n)].q);
  complex_step_function F;
  F.q = q0;
  F.log_abs.assign(static_cast<std::size_t>(q0), 0.0);
  F.arg.assign(static_cast<std::size_t>(q0), 0.0);
  kahan_accumulator lm, ph;
  std::int64_t m0 = 0, m1 = 0;
  for (std::int64_t k = 1; k < q0; ++k) {
    m0 += p0; if (m0 >= q0) m0 -= q0;
    m1 += p1; if (m1 >= q1) m1 -= q1;
    if (m0 == 0 || m1 == 0) throw singular_hit(k);
    lm.add(detail::log_abs_factor_rational(m1, q1) -
           detail::log_abs_factor_rational(m0, q0));
    ph.add(std::numbers::pi * (static_cast<double>(m1) / static_cast<double>(q1) -
                               static_cast<double>(m0) / static_cast<double>(q0)));
    F.log_abs[static_cast<std::size_t>(k)] = lm.value();
    F.arg[static_cast<std::size_t>(k)] = ph.value();
  }
  return F;
}

// B_n(x) = F_n(alpha x) * F_n(x)^(alpha^2) with the principal branch for the
// power: w^(alpha^2) = exp(alpha^2 (log|w| + i Arg w)).  The modulus is
// branch-independent: 2 log|B_n| = beta_n.
inline complex_step_function build_B_n(const complex_step_function& F,
                                       const rotation_number& rot) {
  const double a2 = rot.value() * rot.value();
  complex_step_function B;
  B.q = F.q;
  B.log_abs.resize(F.log_abs.size());
  B.arg.resize(F.arg.size());
  for (std::int64_t k = 0; k < F.q; ++k) {
    if (!std::isfinite(F.log_abs[static_cast<std::size_t>(k)]))
      throw zero_base("build_B_n: |F_n| vanishes");
    const auto ia = static_cast<std::size_t>(
        rot.scaled_floor(static_cast<std::uint64_t>(k)));
    const std::complex<double> w = F.value(k);
    B.log_abs[static_cast<std::size_t>(k)] =
        F.log_abs[ia] + a2 * F.log_abs[static_cast<std::size_t>(k)];
    B.arg[static_cast<std::size_t>(k)] = F.arg[ia] + a2 * std::arg(w);
  }
  return B;
}

// prod_{j=1}^{q-1} |1 - e^{2 pi i j/q}| = q: the regular q-gon diagonal
// product, computed in log space (paired j <-> q-j halves the work).
inline double polygon_diagonal_product(std::int64_t q) {
  if (q < 2) throw std::invalid_argument("polygon_diagonal_product: q >= 2");
  kahan_accumulator acc;
  const double piq = std::numbers::pi / static_cast<double>(q);
  for (std::int64_t j = 1; 2 * j < q; ++j)
    acc.add(2.0 * std::log(2.0 * std::sin(piq * static_cast<double>(j))));
  if (q % 2 == 0) acc.add(std::log(2.0));
  return std::exp(acc.value());
}

// Iterate T(z,w) = (c z, w (1 - z)) from (z,w) = (c,1) with c = e^{2 pi i
// alpha}, z advanced by genuine complex multiplication, log|w| accumulated in
// log space; returns max_{n<=K} |log|w_n| - S_n/2| against exact-angle sums.
inline double c2_orbit_check(const rotation_number& rot, std::int64_t K) {
  const double a = rot.value();
  const std::complex<double> c{std::cos(2.0 * std::numbers::pi * a),
                               std::sin(2.0 * std::numbers::pi * a)};
  std::complex<double> z = c;
  kahan_accumulator logw, s;
  uint128 r = 0;
  double worst = 0.0;
  for (std::int64_t n = 1; n <= K; ++n) {
    logw.add(std::log(std::abs(1.0 - z)));
    r += rot.fixed_point();
    s.add(2.0 * detail::log_abs_factor_fixed(r));
    worst = std::max(worst, std::fabs(logw.value() - s.value() / 2.0));
    z *= c;
  }
  return worst;
}

}  // namespace birkhoff
