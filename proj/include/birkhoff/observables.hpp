// observables.hpp -- the circle observables whose Birkhoff sums are studied.
//
// The principal observable is g(x) = log(2-2cos(2 pi x)) = 2 log|2 sin(pi x)|,
// integrable with a logarithmic singularity at 0.  Near the singularity the
// sin form is evaluated at min(x, 1-x), which keeps the argument small and
// the relative error bounded on both sides of the circle.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "birkhoff/numerics.hpp"

namespace birkhoff {

struct singular_point : std::domain_error {
  using std::domain_error::domain_error;
};

enum class observable_kind { log_sin, hecke, log_trig_poly };

class observable {
 public:
  static observable log_sin() { return observable(observable_kind::log_sin); }

  static observable hecke(bool zero_mean = true) {
    observable o(observable_kind::hecke);
    o.hecke_zero_mean_ = zero_mean;
    o.mean_ = zero_mean ? 0.0 : 0.5;
    return o;
  }

  // g(x) = log(r(x)) with r(x) = c[0] + sum_j c[j] cos(2 pi j x).  The caller
  // is trusted to supply an r with a single root at 0 (see root_count for a
  // numerical check); the mean is computed by quadrature at construction.
  static observable log_trig_poly(std::vector<double> cos_coeffs) {
    if (cos_coeffs.empty())
      throw std::invalid_argument("log_trig_poly: empty coefficient list");
    observable o(observable_kind::log_trig_poly);
    o.coeffs_ = std::move(cos_coeffs);
    o.mean_ = o.quadrature_mean();
    return o;
  }

  observable_kind kind() const { return kind_; }
  bool hecke_zero_mean() const { return hecke_zero_mean_; }
  const std::vector<double>& cos_coeffs() const { return coeffs_; }

  // g + c; the renormalization differences are invariant under this shift.
  observable shifted(double c) const {
    observable o = *this;
    o.shift_ += c;
    return o;
  }

  double mean() const { return mean_ + shift_; }

  bool singular_at_zero() const { return kind_ != observable_kind::hecke; }

  std::vector<double> singular_points() const {
    return singular_at_zero() ? std::vector<double>{0.0} : std::vector<double>{};
  }

  // Evaluate at x in [0,1).  Throws singular_point at an exact singularity.
  double operator()(double x) const {
    switch (kind_) {
      case observable_kind::log_sin: {
        if (x == 0.0) throw singular_point("log_sin at x = 0");
        const double xm = x <= 0.5 ? x : 1.0 - x;
        return eval_log_sin(xm) + shift_;
      }
      case observable_kind::hecke:
        return x - (hecke_zero_mean_ ? 0.5 : 0.0) + shift_;
      case observable_kind::log_trig_poly: {
        const double r = trig_poly(x);
        if (r <= 0.0) throw singular_point("log_trig_poly: r(x) <= 0");
        return std::log(r) + shift_;
      }
    }
    return 0.0;  // unreachable
  }

  // Evaluate at the exact rational angle m/q, 0 <= m < q.
  double eval_rational(std::int64_t m, std::int64_t q) const {
    switch (kind_) {
      case observable_kind::log_sin: {
        if (m == 0) throw singular_point("log_sin at x = 0");
        const std::int64_t mm = m <= q - m ? m : q - m;
        return eval_log_sin(static_cast<double>(mm) / static_cast<double>(q)) +
               shift_;
      }
      case observable_kind::hecke:
        return static_cast<double>(m) / static_cast<double>(q) -
               (hecke_zero_mean_ ? 0.5 : 0.0) + shift_;
      case observable_kind::log_trig_poly: {
        const double r = trig_poly(static_cast<double>(m) / static_cast<double>(q));
        if (r <= 0.0) throw singular_point("log_trig_poly: r(x) <= 0");
        return std::log(r) + shift_;
      }
    }
    return 0.0;
  }

  // Evaluate at a 128-bit fixed-point circle position.
  double eval_fixed(uint128 r) const {
    switch (kind_) {
      case observable_kind::log_sin: {
        const uint128 rm = fixed_dist_to_zero(r);
        if (rm == 0) throw singular_point("log_sin at x = 0");
        return eval_log_sin(fixed_to_double(rm)) + shift_;
      }
      case observable_kind::hecke:
        return fixed_to_double(r) - (hecke_zero_mean_ ? 0.5 : 0.0) + shift_;
      case observable_kind::log_trig_poly: {
        const double rr = trig_poly(fixed_to_double(r));
        if (rr <= 0.0) throw singular_point("log_trig_poly: r(x) <= 0");
        return std::log(rr) + shift_;
      }
    }
    return 0.0;
  }

  // Count zeros of the trigonometric polynomial r on a uniform grid (sign
  // changes plus isolated near-zero minima).  Utility for callers of
  // log_trig_poly; not invoked automatically.
  int root_count(int grid = (1 << 16)) const {
    if (kind_ != observable_kind::log_trig_poly)
      return singular_at_zero() ? 1 : 0;
    int count = 0;
    double prev = trig_poly(0.0);
    bool in_zero_run = std::fabs(prev) < 1e-9;
    if (in_zero_run) ++count;
    for (int i = 1; i <= grid; ++i) {
      const double x = static_cast<double>(i % grid) / grid;
      const double cur = trig_poly(x);
      if (std::fabs(cur) < 1e-9) {
        if (!in_zero_run) { ++count; in_zero_run = true; }
      } else {
        if ((prev < 0.0) != (cur < 0.0) && !in_zero_run) ++count;
        in_zero_run = false;
      }
      prev = cur;
    }
    return count;
  }

  std::string describe() const {
    switch (kind_) {
      case observable_kind::log_sin: return "logsin";
      case observable_kind::hecke:
        return hecke_zero_mean_ ? "hecke(zero-mean)" : "hecke(raw)";
      case observable_kind::log_trig_poly: return "trigpoly";
    }
    return "?";
  }

 private:
  explicit observable(observable_kind k) : kind_(k) {}

  static double eval_log_sin(double xm) {
    return 2.0 * std::log(2.0 * std::sin(std::numbers::pi * xm));
  }

  double trig_poly(double x) const {
    double r = coeffs_[0];
    for (std::size_t j = 1; j < coeffs_.size(); ++j)
      r += coeffs_[j] * std::cos(2.0 * std::numbers::pi * j * x);
    return r;
  }

  // integral of log(r) over [0,1]; tanh_sinh absorbs the log singularities
  // at the endpoints (root at 0 identified with 1).
  double quadrature_mean() const {
    boost::math::quadrature::tanh_sinh<double> integrator;
    auto f = [this](double x) {
      const double r = trig_poly(x);
      return r > 0.0 ? std::log(r) : -745.0;  // clamp instead of -inf at roots
    };
    return integrator.integrate(f, 0.0, 1.0);
  }

  observable_kind kind_;
  bool hecke_zero_mean_ = true;
  std::vector<double> coeffs_;
  double mean_ = 0.0;
  double shift_ = 0.0;
};

}  // namespace birkhoff
