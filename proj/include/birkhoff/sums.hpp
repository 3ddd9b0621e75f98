// sums.hpp -- Birkhoff sum engines.
//
// Two engines: exact-angle summation at rational rotation numbers (residues
// j*p mod q kept in integer arithmetic) and 128-bit fixed-point summation at
// quadratic irrationals.  Both accumulate with serial Neumaier compensation
// in fixed k-order, so traces are bit-for-bit reproducible across runs.
// Landing exactly on (or, for the irrational engine, within 2^-100 of) a
// singular point raises singular_hit with the offending index -- sums are
// only ever evaluated where they are defined.
#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "birkhoff/numerics.hpp"
#include "birkhoff/observables.hpp"
#include "birkhoff/rotations.hpp"

namespace birkhoff {

struct singular_hit : std::domain_error {
  std::int64_t index;
  explicit singular_hit(std::int64_t k)
      : std::domain_error("orbit hits a singular point at index " +
                          std::to_string(k)),
        index(k) {}
};

inline std::int64_t to_int64_checked(const bigint& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < 0)
    throw std::overflow_error("value does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}

struct trace_meta {
  std::string rotation;
  std::string observable;
  std::string x0 = "0";
  std::int64_t K = 0;
};

struct sum_trace {
  trace_meta meta;
  std::vector<double> values;  // values[k-1] = S_k
  double S(std::int64_t k) const { return k == 0 ? 0.0 : values[static_cast<std::size_t>(k - 1)]; }
};

// Streams (k, S_k) for k = 1..K at the rational rotation p/q, angles
// ((x0_num + j p) mod q)/q exact.
template <class Sink>
void scan_rational(const observable& obs, std::int64_t p, std::int64_t q,
                   std::int64_t K, std::int64_t x0_num, Sink&& sink) {
  if (q <= 0 || p <= 0 || p >= q)
    throw std::invalid_argument("scan_rational: need 0 < p < q");
  if (std::gcd(p, q) != 1)
    throw std::invalid_argument("scan_rational: p/q not in lowest terms");
  const bool singular = obs.singular_at_zero();
  kahan_accumulator acc;
  std::int64_t m = ((x0_num % q) + q) % q;
  for (std::int64_t j = 1; j <= K; ++j) {
    m += p;
    if (m >= q) m -= q;
    if (singular && m == 0) throw singular_hit(j);
    acc.add(obs.eval_rational(m, q));
    sink(j, acc.value());
  }
}

inline sum_trace birkhoff_rational(const observable& obs, std::int64_t p,
                                   std::int64_t q, std::int64_t K,
                                   std::int64_t x0_num = 0) {
  sum_trace tr;
  tr.meta.rotation = std::to_string(p) + "/" + std::to_string(q);
  tr.meta.observable = obs.describe();
  tr.meta.x0 = std::to_string(x0_num) + "/" + std::to_string(q);
  tr.meta.K = K;
  tr.values.reserve(static_cast<std::size_t>(K));
  scan_rational(obs, p, q, K, x0_num,
                [&](std::int64_t, double s) { tr.values.push_back(s); });
  return tr;
}

// Streams (k, S_k) along x0 + j*alpha mod 1.  The angle resolution limit is
// 2^-100: an iterate closer than that to a singular point is reported, never
// evaluated.
template <class Sink>
void scan_irrational(const observable& obs, const rotation_number& rot,
                     std::int64_t K, circle_point x0, Sink&& sink) {
  static constexpr uint128 proximity_limit = static_cast<uint128>(1) << 28;
  const bool singular = obs.singular_at_zero();
  const uint128 step = rot.fixed_point();
  kahan_accumulator acc;
  uint128 r = x0.frac;
  for (std::int64_t j = 1; j <= K; ++j) {
    r += step;  // wrapping: mod 1
    if (singular && fixed_dist_to_zero(r) < proximity_limit) throw singular_hit(j);
    acc.add(obs.eval_fixed(r));
    sink(j, acc.value());
  }
}

inline sum_trace birkhoff_irrational(const observable& obs,
                                     const rotation_number& rot,
                                     std::int64_t K, circle_point x0 = {}) {
  sum_trace tr;
  tr.meta.rotation = rot.describe();
  tr.meta.observable = obs.describe();
  tr.meta.x0 = std::to_string(x0.value());
  tr.meta.K = K;
  tr.values.reserve(static_cast<std::size_t>(K));
  scan_irrational(obs, rot, K, x0,
                  [&](std::int64_t, double s) { tr.values.push_back(s); });
  return tr;
}

// The two envelope subsequences (S_{q_n}, S_{q_n - 1}) of the raw trace,
// captured in one streaming pass without storing the trace.
struct convergent_sums {
  int n = 0;
  bigint q;
  double S_qn = 0.0;
  double S_qn_minus_1 = 0.0;
};

inline std::vector<convergent_sums> subsequence_at_convergents(
    const observable& obs, const rotation_number& rot, int n_max,
    int index_offset = 0, circle_point x0 = {}) {
  const auto conv = rot.convergents(n_max, index_offset);
  std::vector<convergent_sums> out(conv.size());
  std::vector<std::int64_t> qs(conv.size());
  for (std::size_t i = 0; i < conv.size(); ++i) {
    out[i].n = conv[i].n;
    out[i].q = conv[i].q;
    qs[i] = to_int64_checked(conv[i].q);
  }
  const std::int64_t K = qs.back();
  scan_irrational(obs, rot, K, x0, [&](std::int64_t k, double s) {
    for (std::size_t i = 0; i < qs.size(); ++i) {
      if (k == qs[i] - 1) out[i].S_qn_minus_1 = s;  // q_n = 1 leaves S_0 = 0
      if (k == qs[i]) out[i].S_qn = s;
    }
  });
  return out;
}

}  // namespace birkhoff
