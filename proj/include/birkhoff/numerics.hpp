// numerics.hpp -- compensated accumulation and 128-bit fixed-point helpers.
//
// The summation engines promise bit-for-bit deterministic traces, so the
// reference accumulator is strictly serial Neumaier (Kahan-Babuska)
// compensation.  A deterministic pairwise reduction is provided for
// throughput paths; it must agree with the serial path to 1e-10.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace birkhoff {

using uint128 = unsigned __int128;

// Neumaier-compensated serial accumulator.
class kahan_accumulator {
  double sum_ = 0.0;
  double comp_ = 0.0;

 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }
  void reset() noexcept { sum_ = comp_ = 0.0; }
};

// Deterministic pairwise reduction (fixed split points, independent of
// thread count).  Used only by throughput paths, never by reference traces.
inline double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

// ---- 128-bit fixed point ----
//
// A circle position x in [0,1) is stored as an unsigned 128-bit integer F
// with x = F * 2^-128; addition mod 1 is wrapping addition mod 2^128.

inline constexpr int fixed_bits = 128;

// floor(j * F / 2^128) for j, result < 2^64.  This is floor(j * x) when
// F encodes x.
inline std::uint64_t fixed_scaled_floor(std::uint64_t j, uint128 f) {
  const std::uint64_t lo = static_cast<std::uint64_t>(f);
  const std::uint64_t hi = static_cast<std::uint64_t>(f >> 64);
  const uint128 mid = static_cast<uint128>(j) * lo;
  const uint128 top = static_cast<uint128>(j) * hi + (mid >> 64);
  return static_cast<std::uint64_t>(top >> 64);
}

// (j * F) mod 2^128: the orbit step j*x mod 1 in fixed point.
inline uint128 fixed_mul_mod1(std::uint64_t j, uint128 f) {
  return static_cast<uint128>(j) * f;  // wrapping multiply is exact mod 2^128
}

// floor(a * b / 2^128) for two fixed-point fractions: the product of two
// circle coordinates, again in fixed point.  Schoolbook on 64-bit limbs.
inline uint128 fixed_mul(uint128 a, uint128 b) {
  const std::uint64_t a0 = static_cast<std::uint64_t>(a);
  const std::uint64_t a1 = static_cast<std::uint64_t>(a >> 64);
  const std::uint64_t b0 = static_cast<std::uint64_t>(b);
  const std::uint64_t b1 = static_cast<std::uint64_t>(b >> 64);
  const uint128 p00 = static_cast<uint128>(a0) * b0;
  const uint128 p01 = static_cast<uint128>(a0) * b1;
  const uint128 p10 = static_cast<uint128>(a1) * b0;
  const uint128 p11 = static_cast<uint128>(a1) * b1;
  uint128 mid = (p00 >> 64) + static_cast<std::uint64_t>(p01) +
                static_cast<std::uint64_t>(p10);
  return p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
}

inline double fixed_to_double(uint128 f) {
  return std::ldexp(static_cast<double>(f), -fixed_bits);
}

// distance to the nearest integer, in fixed point: min(f, 2^128 - f).
inline uint128 fixed_dist_to_zero(uint128 f) {
  const uint128 neg = static_cast<uint128>(0) - f;
  return f < neg ? f : neg;
}

}  // namespace birkhoff
