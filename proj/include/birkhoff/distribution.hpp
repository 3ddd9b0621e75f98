// distribution.hpp -- empirical distribution of S_k / log k: histogram,
// symmetry diagnostics, Fourier coefficients of the limiting measure.
//
// Ratio statistics start at k = 2 (log 1 = 0).  Out-of-range samples are
// counted, never dropped silently.  The empirical functional is the uniform
// average (1/q_n) sum_k phi(S_k / den); both normalizations den = log k and
// den = log q_n are implemented (the source material uses both).
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "birkhoff/numerics.hpp"
#include "birkhoff/observables.hpp"
#include "birkhoff/rotations.hpp"
#include "birkhoff/sums.hpp"

namespace birkhoff {

struct empty_histogram : std::domain_error {
  using std::domain_error::domain_error;
};
struct non_zero_mean : std::domain_error {
  using std::domain_error::domain_error;
};

struct histogram {
  double lo = 0.0;
  double hi = 0.0;
  int bins = 0;
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;
  std::int64_t out_of_range = 0;

  histogram() = default;
  histogram(double lo_, double hi_, int bins_)
      : lo(lo_), hi(hi_), bins(bins_), counts(static_cast<std::size_t>(bins_), 0) {
    if (bins_ < 1 || !(hi_ > lo_))
      throw std::invalid_argument("histogram: need bins >= 1 and hi > lo");
  }

  void add(double v) {
    ++total;
    if (v >= lo && v < hi) {
      auto b = static_cast<std::int64_t>((v - lo) / (hi - lo) * bins);
      if (b >= bins) b = bins - 1;  // guards the v just below hi edge case
      ++counts[static_cast<std::size_t>(b)];
    } else {
      ++out_of_range;
    }
  }

  std::int64_t in_range() const { return total - out_of_range; }

  // densities normalized to unit in-range mass
  std::vector<double> normalized() const {
    if (in_range() == 0) throw empty_histogram("histogram has no samples");
    std::vector<double> p(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
      p[i] = static_cast<double>(counts[i]) / static_cast<double>(in_range());
    return p;
  }

  double bin_center(int i) const {
    return lo + (hi - lo) * (static_cast<double>(i) + 0.5) / bins;
  }
};

// Histogram of S_k / log k, k = 2..K.  Requires a zero-mean observable:
// g + c shifts the ratio by c k/log k, which diverges, so a non-zero-mean
// observable makes this statistic meaningless and is rejected.
inline histogram ratio_histogram(const observable& obs,
                                 const rotation_number& rot, std::int64_t K,
                                 int bins, double lo, double hi,
                                 circle_point x0 = {}) {
  if (K < 2) throw std::invalid_argument("ratio_histogram: K >= 2");
  if (std::fabs(obs.mean()) > 1e-9)
    throw non_zero_mean("ratio statistics need a zero-mean observable");
  histogram h(lo, hi, bins);
  scan_irrational(obs, rot, K, x0, [&](std::int64_t k, double s) {
    if (k >= 2) h.add(s / std::log(static_cast<double>(k)));
  });
  return h;
}

// L1 distance between the normalized histogram and its reflection about
// (lo+hi)/2; ranges over [0, 2] (2 = reflection-disjoint mass).
inline double symmetry_defect(const histogram& h) {
  if (h.bins % 2 != 0)
    throw std::invalid_argument("symmetry_defect: bins must be even");
  const auto p = h.normalized();  // throws empty_histogram when empty
  kahan_accumulator acc;
  for (int i = 0; i < h.bins; ++i)
    acc.add(std::fabs(p[static_cast<std::size_t>(i)] -
                      p[static_cast<std::size_t>(h.bins - 1 - i)]));
  return acc.value();
}

struct fourier_coeffs {
  int m_max = 0;
  bool log_qn_normalization = true;
  std::vector<std::complex<double>> coeffs;  // rho_0 .. rho_m_max
};

// rho_m = (1/q_n) sum_{k=1}^{q_n} exp(i m S_k / den), den = log q_n or
// log k per flag.  Under the log k flag the k = 1 term uses den = log 2.
inline fourier_coeffs fourier_of_ratios(const observable& obs,
                                        const rotation_number& rot, int n,
                                        int m_max, bool log_qn_norm = true,
                                        int index_offset = 0,
                                        circle_point x0 = {}) {
  if (m_max < 0) throw std::invalid_argument("fourier_of_ratios: m_max >= 0");
  const auto conv = rot.convergents(n, index_offset);
  const std::int64_t q = to_int64_checked(conv.back().q);
  const double logq = std::log(static_cast<double>(q));
  std::vector<double> phase(static_cast<std::size_t>(q));
  scan_irrational(obs, rot, q, x0, [&](std::int64_t k, double s) {
    const double den =
        log_qn_norm ? logq : std::log(static_cast<double>(k < 2 ? 2 : k));
    phase[static_cast<std::size_t>(k - 1)] = s / den;
  });
  fourier_coeffs out;
  out.m_max = m_max;
  out.log_qn_normalization = log_qn_norm;
  out.coeffs.reserve(static_cast<std::size_t>(m_max + 1));
  for (int m = 0; m <= m_max; ++m) {
    kahan_accumulator re, im;
    for (double v : phase) {
      re.add(std::cos(m * v));
      im.add(std::sin(m * v));
    }
    out.coeffs.emplace_back(re.value() / static_cast<double>(q),
                            im.value() / static_cast<double>(q));
  }
  return out;
}

}  // namespace birkhoff
