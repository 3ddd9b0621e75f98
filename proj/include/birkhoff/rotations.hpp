// rotations.hpp -- exact quadratic-irrational rotation numbers, their
// continued fractions and convergents, and guaranteed-precision circle
// positions j*alpha mod 1.
//
// A rotation number is the surd (a + b*sqrt(d))/c in (0,1).  Alongside the
// exact surd we keep a 128-bit fixed-point value F with
// |alpha - F*2^-128| <= 2^-128, computed from an exact integer square root
// with 64 guard bits, so orbit positions carry an absolute error of at most
// (j+1)*2^-128 after j steps -- negligible against the closest singularity
// approach ~1/q_n at any depth this library targets.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "birkhoff/numerics.hpp"

namespace birkhoff {

using bigint = boost::multiprecision::cpp_int;

struct not_irrational : std::domain_error {
  using std::domain_error::domain_error;
};
struct out_of_range_value : std::domain_error {
  using std::domain_error::domain_error;
};

// One continued-fraction approximant p_n/q_n (1-based index).
struct convergent {
  int n = 0;
  bigint p;
  bigint q;
};

// A circle position in [0,1) as a 128-bit fixed-point fraction.
struct circle_point {
  uint128 frac = 0;
  double value() const { return fixed_to_double(frac); }
};

namespace detail {

inline bigint floor_div(const bigint& num, const bigint& den) {
  bigint q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

}  // namespace detail

class rotation_number {
 public:
  // (a + b*sqrt(d))/c; requires d >= 2 non-square, b != 0, c != 0, and the
  // value in (0,1).
  rotation_number(std::int64_t a, std::int64_t b, std::int64_t c,
                  std::int64_t d)
      : a_(a), b_(b), c_(c), d_(d) {
    if (c == 0) throw std::invalid_argument("rotation_number: c must be nonzero");
    if (d < 2) throw not_irrational("rotation_number: d must be >= 2");
    const bigint root = boost::multiprecision::sqrt(bigint(d));
    if (root * root == d)
      throw not_irrational("rotation_number: d is a perfect square");
    if (b == 0) throw not_irrational("rotation_number: b = 0 gives a rational");
    if (c < 0) { a_ = -a_; b_ = -b_; c_ = -c_; }
    compute_fixed_point();
    compute_cf();
  }

  std::int64_t surd_a() const { return a_; }
  std::int64_t surd_b() const { return b_; }
  std::int64_t surd_c() const { return c_; }
  std::int64_t surd_d() const { return d_; }

  uint128 fixed_point() const { return fixed_; }
  double value() const { return fixed_to_double(fixed_); }

  const std::vector<std::int64_t>& cf_preperiod() const { return cf_pre_; }
  const std::vector<std::int64_t>& cf_period() const { return cf_per_; }

  // Partial quotient a_k of [0; a_1, a_2, ...], k >= 1.
  std::int64_t partial_quotient(int k) const {
    if (k < 1) throw std::invalid_argument("partial_quotient: k >= 1");
    const std::size_t i = static_cast<std::size_t>(k - 1);
    if (i < cf_pre_.size()) return cf_pre_[i];
    return cf_per_[(i - cf_pre_.size()) % cf_per_.size()];
  }

  // Convergents 1..n_max.  index_offset shifts the underlying CF index:
  // requested index n refers to convergent n + index_offset, where index 0
  // is the formal (p,q) = (0,1).  offset -1 reproduces the denominator list
  // (1,1,2,3,5,...) with its leading extra 1.
  std::vector<convergent> convergents(int n_max, int index_offset = 0) const {
    if (n_max < 1) throw std::invalid_argument("convergents: n_max >= 1");
    if (1 + index_offset < 0)
      throw std::invalid_argument("convergents: index offset reaches before 0/1");
    std::vector<convergent> out;
    out.reserve(static_cast<std::size_t>(n_max));
    bigint pm1 = 1, pm0 = 0, qm1 = 0, qm0 = 1;  // p_{-1},p_0,q_{-1},q_0
    int emitted = 0;
    if (index_offset <= -1) {
      out.push_back({1, pm0, qm0});
      ++emitted;
    }
    int k = 1;
    while (emitted < n_max) {
      const bigint ak = partial_quotient(k);
      bigint p = ak * pm0 + pm1;
      bigint q = ak * qm0 + qm1;
      pm1 = pm0; pm0 = p;
      qm1 = qm0; qm0 = q;
      if (k >= 1 + index_offset) {
        out.push_back({emitted + 1, pm0, qm0});
        ++emitted;
      }
      ++k;
    }
    return out;
  }

  // x0 + j*alpha mod 1 in fixed point; exact integer multiply-and-wrap, so
  // the only error is j*|epsilon| <= (j+1)*2^-128 in the real value.
  circle_point orbit(circle_point x0, std::uint64_t j) const {
    return {x0.frac + fixed_mul_mod1(j, fixed_)};
  }

  // floor(alpha * k), exact to within the fixed-point resolution.
  std::uint64_t scaled_floor(std::uint64_t k) const {
    return fixed_scaled_floor(k, fixed_);
  }

  // alpha^j as a fixed-point fraction (j >= 1).
  uint128 power_fixed(int j) const {
    uint128 f = fixed_;
    for (int i = 1; i < j; ++i) f = fixed_mul(f, fixed_);
    return f;
  }

  std::string describe() const {
    return "(" + std::to_string(a_) + (b_ < 0 ? "" : "+") + std::to_string(b_) +
           "*sqrt(" + std::to_string(d_) + "))/" + std::to_string(c_);
  }

 private:
  void compute_fixed_point() {
    constexpr int guard = 64;
    const int w = fixed_bits + guard;
    bigint s = boost::multiprecision::sqrt(bigint(d_) << (2 * w));
    bigint num = (bigint(a_) << w) + bigint(b_) * s;
    bigint v = detail::floor_div(num, bigint(c_));
    if (v <= 0 || v >= (bigint(1) << w))
      throw out_of_range_value("rotation_number: value not in (0,1)");
    v >>= guard;
    fixed_ = 0;
    for (int limb = 1; limb >= 0; --limb)
      fixed_ = (fixed_ << 64) |
               static_cast<std::uint64_t>((v >> (64 * limb)) & 0xffffffffffffffffULL);
  }

  // Standard surd CF algorithm on the canonical form (P + sqrt(D))/Q with
  // Q | D - P^2; partial quotients recorded until the (P,Q) state repeats.
  void compute_cf() {
    bigint P, D, Q;
    if (b_ >= 1) {
      P = a_; D = bigint(b_) * b_ * d_; Q = c_;
    } else {
      P = -a_; D = bigint(b_) * b_ * d_; Q = -c_;
    }
    if ((D - P * P) % Q != 0) {
      const bigint absq = Q < 0 ? -Q : Q;
      P *= absq; D *= absq * absq; Q *= absq;
    }
    const bigint sD = boost::multiprecision::sqrt(D);
    auto cf_floor = [&](const bigint& p, const bigint& q) {
      // floor((p + sqrt(D))/q); sqrt(D) irrational so (p + sD) flooring is
      // safe for q > 0, and needs the exact-multiple adjustment for q < 0.
      bigint f = detail::floor_div(p + sD, q);
      if (q < 0 && (p + sD) % q == 0) --f;
      return f;
    };
    // a_0 = 0 for values in (0,1); start the expansion at a_1.
    bigint a0 = cf_floor(P, Q);
    P = a0 * Q - P;
    Q = (D - P * P) / Q;
    std::map<std::pair<bigint, bigint>, std::size_t> seen;
    std::vector<std::int64_t> quots;
    for (std::size_t i = 0; i < 4096; ++i) {
      auto it = seen.find({P, Q});
      if (it != seen.end()) {
        cf_pre_.assign(quots.begin(), quots.begin() + static_cast<long>(it->second));
        cf_per_.assign(quots.begin() + static_cast<long>(it->second), quots.end());
        return;
      }
      seen.emplace(std::make_pair(P, Q), i);
      const bigint ak = cf_floor(P, Q);
      quots.push_back(static_cast<std::int64_t>(ak));
      P = ak * Q - P;
      Q = (D - P * P) / Q;
    }
    throw std::runtime_error("rotation_number: CF period not found");
  }

  std::int64_t a_, b_, c_, d_;
  uint128 fixed_ = 0;
  std::vector<std::int64_t> cf_pre_, cf_per_;
};

// (j*p) mod q in exact integer arithmetic.
inline bigint rational_orbit(const bigint& p, const bigint& q, const bigint& j) {
  bigint r = (j * p) % q;
  if (r < 0) r += q;
  return r;
}

// Named rotation numbers used throughout.
namespace presets {
inline rotation_number golden() { return {-1, 1, 2, 5}; }           // (sqrt5-1)/2
inline rotation_number silver() { return {-1, 1, 1, 2}; }           // sqrt2-1
inline rotation_number sqrt41_minus_6() { return {-6, 1, 1, 41}; }  // cf [2,2,12]
inline rotation_number sqrt3_minus_1_over_2() { return {-1, 1, 2, 3}; }  // cf [2,1]
}  // namespace presets

}  // namespace birkhoff
