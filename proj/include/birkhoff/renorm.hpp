// renorm.hpp -- rescaled step functions of Birkhoff sums and their
// self-similarity structure.
//
// Everything here lives on the q_n-cell grid: a step_function holds vals[k]
// on [k/q, (k+1)/q), with vals[k] built from the length-k partial sums, so
// vals[0] = 0 is the empty sum and every "(1-)" quantity reads vals[q-1]
// (the k = q cell would be a singular rational sum).
//
// Two grid conventions are used deliberately:
//   - construction (beta, gamma, h-from-f series) indexes cells at left
//     endpoints, floor(alpha^j * k), computed exactly in 128-bit fixed point;
//   - comparison/report grids sample 1000 cell midpoints x_i = (i+0.5)/1000.
// Midpoints are the typical-point convention: at left endpoints the floor
// identity [alpha^j x q_{n+j}] = [x q_n] fails on a measure-zero sliver
// (alpha q_{n+1} = q_n - alpha^{n+2} sits just below q_n), which is exactly
// the exceptional set the renormalization statements carve out.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "birkhoff/numerics.hpp"
#include "birkhoff/observables.hpp"
#include "birkhoff/rotations.hpp"
#include "birkhoff/sums.hpp"

namespace birkhoff {

struct degenerate_scaling : std::domain_error {
  using std::domain_error::domain_error;
};
struct dimension_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct step_function {
  std::int64_t q = 0;
  std::vector<double> vals;

  double eval(double x) const {
    auto k = static_cast<std::int64_t>(x * static_cast<double>(q));
    if (k < 0) k = 0;
    if (k >= q) k = q - 1;
    return vals[static_cast<std::size_t>(k)];
  }
  double at_one_minus() const { return vals.back(); }

  // value at the midpoint grid cell of x_i = (i+0.5)/npts
  double at_midpoint(int i, int npts) const {
    const auto c = static_cast<std::int64_t>(
        (static_cast<unsigned __int128>(2 * i + 1) * static_cast<uint128>(q)) /
        (2 * npts));
    return vals[static_cast<std::size_t>(std::min(c, q - 1))];
  }

  step_function resampled(std::int64_t new_q) const {
    step_function out;
    out.q = new_q;
    out.vals.resize(static_cast<std::size_t>(new_q));
    for (std::int64_t k = 0; k < new_q; ++k) {
      const auto c = static_cast<std::int64_t>(
          (static_cast<unsigned __int128>(k) * static_cast<uint128>(q)) /
          static_cast<uint128>(new_q));
      out.vals[static_cast<std::size_t>(k)] = vals[static_cast<std::size_t>(c)];
    }
    return out;
  }
};

struct limit_estimate {
  double value = 0.0;
  int n_used = 0;
  double cauchy_gap = 0.0;
};

namespace detail {

// prefix sums [S_0 .. S_K] at a rational rotation
inline std::vector<double> rational_prefix(const observable& obs,
                                           const convergent& c,
                                           std::int64_t K) {
  std::vector<double> out(static_cast<std::size_t>(K + 1), 0.0);
  if (K > 0)
    scan_rational(obs, to_int64_checked(c.p), to_int64_checked(c.q), K, 0,
                  [&](std::int64_t k, double s) {
                    out[static_cast<std::size_t>(k)] = s;
                  });
  return out;
}

inline std::vector<double> irrational_prefix(const observable& obs,
                                             const rotation_number& rot,
                                             std::int64_t K) {
  std::vector<double> out(static_cast<std::size_t>(K + 1), 0.0);
  if (K > 0)
    scan_irrational(obs, rot, K, {}, [&](std::int64_t k, double s) {
      out[static_cast<std::size_t>(k)] = s;
    });
  return out;
}

}  // namespace detail

// f_{n,m}(x) = S_[x q_n](p_{n+m}/q_{n+m}) - S_[x q_n](p_n/q_n) on q_n cells.
inline step_function build_f_nm(const observable& obs,
                                const rotation_number& rot, int n, int m,
                                int index_offset = 0) {
  if (n < 1) throw std::invalid_argument("build_f_nm: n >= 1");
  if (m < 1) throw std::invalid_argument("build_f_nm: m >= 1");
  const auto conv = rot.convergents(n + m, index_offset);
  const convergent& base = conv[static_cast<std::size_t>(n - 1)];
  const convergent& far = conv[static_cast<std::size_t>(n + m - 1)];
  const std::int64_t q = to_int64_checked(base.q);
  const auto A = detail::rational_prefix(obs, far, q - 1);
  const auto B = detail::rational_prefix(obs, base, q - 1);
  step_function f;
  f.q = q;
  f.vals.resize(static_cast<std::size_t>(q));
  for (std::int64_t k = 0; k < q; ++k)
    f.vals[static_cast<std::size_t>(k)] =
        A[static_cast<std::size_t>(k)] - B[static_cast<std::size_t>(k)];
  return f;
}

// f_n = f_{n,1}
inline step_function build_f_n(const observable& obs,
                               const rotation_number& rot, int n,
                               int index_offset = 0) {
  return build_f_nm(obs, rot, n, 1, index_offset);
}

// h_n(x) = S_[x q_n](alpha) - S_[x q_n](p_n/q_n): irrational minus rational.
inline step_function build_h_n(const observable& obs,
                               const rotation_number& rot, int n,
                               int index_offset = 0) {
  if (n < 1) throw std::invalid_argument("build_h_n: n >= 1");
  const auto conv = rot.convergents(n, index_offset);
  const convergent& base = conv.back();
  const std::int64_t q = to_int64_checked(base.q);
  const auto A = detail::irrational_prefix(obs, rot, q - 1);
  const auto B = detail::rational_prefix(obs, base, q - 1);
  step_function h;
  h.q = q;
  h.vals.resize(static_cast<std::size_t>(q));
  for (std::int64_t k = 0; k < q; ++k)
    h.vals[static_cast<std::size_t>(k)] =
        A[static_cast<std::size_t>(k)] - B[static_cast<std::size_t>(k)];
  return h;
}

// beta_n(x) = f_n(alpha x) + alpha^2 f_n(x), cell-indexed at left endpoints.
inline step_function build_beta_n(const step_function& f,
                                  const rotation_number& rot) {
  const double a2 = rot.value() * rot.value();
  step_function b;
  b.q = f.q;
  b.vals.resize(f.vals.size());
  for (std::int64_t k = 0; k < f.q; ++k) {
    const auto ia = static_cast<std::size_t>(
        rot.scaled_floor(static_cast<std::uint64_t>(k)));
    b.vals[static_cast<std::size_t>(k)] =
        f.vals[ia] + a2 * f.vals[static_cast<std::size_t>(k)];
  }
  return b;
}

// Period-2 combination beta(x) = q_cf * f(alpha x) + p_cf * alpha^2 * f~(x)
// for alpha = [p_cf, q_cf, p_cf, q_cf, ...].  Both step functions must live
// on the same grid (resample one first).  p_cf = q_cf = 1 reduces to
// build_beta_n with f~ = f.
inline step_function build_beta_periodic(const step_function& f,
                                         const step_function& f_tilde,
                                         std::int64_t p_cf, std::int64_t q_cf,
                                         const rotation_number& rot) {
  if (f.q != f_tilde.q)
    throw dimension_mismatch("build_beta_periodic: grids differ");
  const double a2 = rot.value() * rot.value();
  step_function b;
  b.q = f.q;
  b.vals.resize(f.vals.size());
  for (std::int64_t k = 0; k < f.q; ++k) {
    const auto ia = static_cast<std::size_t>(
        rot.scaled_floor(static_cast<std::uint64_t>(k)));
    b.vals[static_cast<std::size_t>(k)] =
        static_cast<double>(q_cf) * f.vals[ia] +
        static_cast<double>(p_cf) * a2 * f_tilde.vals[static_cast<std::size_t>(k)];
  }
  return b;
}

// Self-similarity comparison of beta with its affine-rescaled halves,
//   beta_1(x) = beta(alpha x) (c/a),
//   beta_2(x) = (beta(alpha + (1-alpha) x) - b) c/(c - b),
// where a = beta(alpha-), b = beta(alpha+), c = beta(1-).  The cell
// i_a = floor(alpha q) contains alpha itself and straddles the jump (it
// carries a spiked intermediate value), so the discrete one-sided limits are
// read one cell away: a = vals[i_a - 1], b = vals[i_a + 1].
struct selfsimilarity_report {
  double a = 0.0, b = 0.0, c = 0.0;
  double sup_beta1 = 0.0, l1_beta1 = 0.0;
  double sup_beta2 = 0.0, l1_beta2 = 0.0;
};

inline selfsimilarity_report beta_selfsimilarity_report(
    const step_function& beta, const rotation_number& rot,
    int grid_points = 1000) {
  const std::int64_t q = beta.q;
  if (q < 3) throw degenerate_scaling("beta grid too coarse");
  const auto ia = static_cast<std::int64_t>(
      rot.scaled_floor(static_cast<std::uint64_t>(q)));
  if (ia < 1 || ia + 1 >= q)
    throw degenerate_scaling("alpha cell has no interior neighbors");
  selfsimilarity_report rep;
  rep.a = beta.vals[static_cast<std::size_t>(ia - 1)];
  rep.b = beta.vals[static_cast<std::size_t>(ia + 1)];
  rep.c = beta.vals.back();
  if (std::fabs(rep.a) < 1e-12 || std::fabs(rep.c - rep.b) < 1e-12 ||
      std::fabs(rep.c) < 1e-12)
    throw degenerate_scaling("beta self-similarity scalings vanish");
  const uint128 F = rot.fixed_point();
  const int N2 = 2 * grid_points;
  kahan_accumulator l1a, l1b;
  for (int i = 0; i < grid_points; ++i) {
    const std::uint64_t t = 2 * static_cast<std::uint64_t>(i) + 1;
    const auto cell = static_cast<std::int64_t>(
        (static_cast<uint128>(t) * static_cast<uint128>(q)) /
        static_cast<uint128>(N2));
    const double v = beta.vals[static_cast<std::size_t>(std::min(cell, q - 1))];
    // floor(alpha * x * q) with x = t/(2N)
    const auto c1 = static_cast<std::int64_t>(
        fixed_scaled_floor(t * static_cast<std::uint64_t>(q), F) /
        static_cast<std::uint64_t>(N2));
    const double v1 = beta.vals[static_cast<std::size_t>(c1)] * (rep.c / rep.a);
    // floor(q*(alpha + (1-alpha)x)) = floor((alpha q (2N - t) + q t)/(2N))
    const std::uint64_t rest = static_cast<std::uint64_t>(N2) - t;
    auto c2 = static_cast<std::int64_t>(
        (fixed_scaled_floor(rest * static_cast<std::uint64_t>(q), F) +
         t * static_cast<std::uint64_t>(q)) /
        static_cast<std::uint64_t>(N2));
    c2 = std::min(c2, q - 1);
    const double v2 = (beta.vals[static_cast<std::size_t>(c2)] - rep.b) *
                      rep.c / (rep.c - rep.b);
    const double r1 = std::fabs(v - v1);
    const double r2 = std::fabs(v - v2);
    rep.sup_beta1 = std::max(rep.sup_beta1, r1);
    rep.sup_beta2 = std::max(rep.sup_beta2, r2);
    l1a.add(r1);
    l1b.add(r2);
  }
  rep.l1_beta1 = l1a.value() / grid_points;
  rep.l1_beta2 = l1b.value() / grid_points;
  return rep;
}

// Partial series h(x) ~ sum_{j=0}^{j_max} f(alpha^j x) on the grid of f,
// with the tail bound alpha^(j_max+1)/(1-alpha) implied by |f(x)| <= x.
struct h_series_estimate {
  step_function fn;
  double tail_bound = 0.0;
};

inline h_series_estimate estimate_h_from_f(const step_function& f,
                                           const rotation_number& rot,
                                           int j_max) {
  if (j_max < 1) throw std::invalid_argument("estimate_h_from_f: j_max >= 1");
  h_series_estimate out;
  out.fn.q = f.q;
  out.fn.vals = f.vals;  // j = 0 term
  uint128 Fj = rot.fixed_point();
  for (int j = 1; j <= j_max; ++j) {
    for (std::int64_t k = 0; k < f.q; ++k) {
      const auto c = static_cast<std::size_t>(
          fixed_scaled_floor(static_cast<std::uint64_t>(k), Fj));
      out.fn.vals[static_cast<std::size_t>(k)] += f.vals[c];
    }
    Fj = fixed_mul(Fj, rot.fixed_point());
  }
  const double a = rot.value();
  out.tail_bound = std::pow(a, j_max + 1) / (1.0 - a);
  return out;
}

// S_{q_n}(alpha) -> log(4 pi^2 / 5) + h(1-)
inline double predict_Sqn_limit(double h_one_minus) {
  return std::log(4.0 * std::numbers::pi * std::numbers::pi / 5.0) +
         h_one_minus;
}

// gamma(x) = h(alpha x) + alpha^2 h(x), together with the series form
// sum_{j>=0} beta(alpha^j x) for cross-checking.  (Expanding h as the f
// series shows the beta series starts at j = 0.)
struct gamma_forms {
  step_function direct;
  step_function series;
};

inline gamma_forms build_gamma(const step_function& h,
                               const step_function& beta,
                               const rotation_number& rot, int j_max) {
  if (h.q != beta.q) throw dimension_mismatch("build_gamma: grids differ");
  gamma_forms out;
  out.direct.q = out.series.q = h.q;
  out.direct.vals.resize(h.vals.size());
  out.series.vals = beta.vals;  // j = 0 term
  const double a2 = rot.value() * rot.value();
  for (std::int64_t k = 0; k < h.q; ++k) {
    const auto ia = static_cast<std::size_t>(
        rot.scaled_floor(static_cast<std::uint64_t>(k)));
    out.direct.vals[static_cast<std::size_t>(k)] =
        h.vals[ia] + a2 * h.vals[static_cast<std::size_t>(k)];
  }
  uint128 Fj = rot.fixed_point();
  for (int j = 1; j <= j_max; ++j) {
    for (std::int64_t k = 0; k < h.q; ++k) {
      const auto c = static_cast<std::size_t>(
          fixed_scaled_floor(static_cast<std::uint64_t>(k), Fj));
      out.series.vals[static_cast<std::size_t>(k)] += beta.vals[c];
    }
    Fj = fixed_mul(Fj, rot.fixed_point());
  }
  return out;
}

// ---- comparison helpers (midpoint grids) ----

struct grid_gap_stats {
  double sup = 0.0;
  double median = 0.0;
  double p90 = 0.0;
  double l1 = 0.0;
};

inline grid_gap_stats compare_on_grid(const step_function& f,
                                      const step_function& g, int npts = 1000) {
  std::vector<double> gaps(static_cast<std::size_t>(npts));
  kahan_accumulator l1;
  grid_gap_stats st;
  for (int i = 0; i < npts; ++i) {
    const double d = std::fabs(f.at_midpoint(i, npts) - g.at_midpoint(i, npts));
    gaps[static_cast<std::size_t>(i)] = d;
    st.sup = std::max(st.sup, d);
    l1.add(d);
  }
  st.l1 = l1.value() / npts;
  std::sort(gaps.begin(), gaps.end());
  st.median = gaps[static_cast<std::size_t>(npts / 2)];
  st.p90 = gaps[static_cast<std::size_t>((npts * 9) / 10)];
  return st;
}

// fraction of adjacent cell pairs with vals[k+1] < vals[k] - tol
inline double monotonicity_violation_fraction(const step_function& f,
                                              double tol = 1e-3) {
  if (f.q < 2) return 0.0;
  std::int64_t bad = 0;
  for (std::int64_t k = 0; k + 1 < f.q; ++k)
    if (f.vals[static_cast<std::size_t>(k + 1)] <
        f.vals[static_cast<std::size_t>(k)] - tol)
      ++bad;
  return static_cast<double>(bad) / static_cast<double>(f.q - 1);
}

// Measure of the set where f_{n,j+1}(x) - f_{n,j}(x) differs from
// f_{n+j}(alpha^j x): the empirical mass of the exceptional set, reported
// but never asserted against.
inline double exceptional_mass(const observable& obs,
                               const rotation_number& rot, int n, int j,
                               double tol = 1e-9, int grid_points = 1000) {
  const auto fnj = build_f_nm(obs, rot, n, j);
  const auto fnj1 = build_f_nm(obs, rot, n, j + 1);
  const auto fpj = build_f_n(obs, rot, n + j);
  const uint128 Fj = rot.power_fixed(j);
  int bad = 0;
  for (int i = 0; i < grid_points; ++i) {
    const std::uint64_t t = 2 * static_cast<std::uint64_t>(i) + 1;
    const auto cell = static_cast<std::int64_t>(
        (static_cast<uint128>(t) * static_cast<uint128>(fnj.q)) /
        static_cast<uint128>(2 * grid_points));
    const double lhs = fnj1.vals[static_cast<std::size_t>(cell)] -
                       fnj.vals[static_cast<std::size_t>(cell)];
    auto cpj = static_cast<std::int64_t>(
        fixed_scaled_floor(t * static_cast<std::uint64_t>(fpj.q), Fj) /
        static_cast<std::uint64_t>(2 * grid_points));
    cpj = std::min(cpj, fpj.q - 1);
    if (std::fabs(lhs - fpj.vals[static_cast<std::size_t>(cpj)]) > tol) ++bad;
  }
  return static_cast<double>(bad) / grid_points;
}

}  // namespace birkhoff
