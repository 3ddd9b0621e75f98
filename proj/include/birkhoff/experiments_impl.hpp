// experiments_impl.hpp -- out-of-line definitions for experiments.hpp.
#pragma once

#include <algorithm>
#include <thread>

namespace birkhoff {

namespace detail {

inline std::int64_t qn_int(const std::vector<convergent>& conv, int n) {
  return to_int64_checked(conv[static_cast<std::size_t>(n - 1)].q);
}

inline double pearson_corr(const std::vector<double>& xs,
                           const std::vector<double>& ys) {
  const auto n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
  mx /= n; my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

inline std::vector<double> midgrid_values(const step_function& f, int npts = 1000) {
  std::vector<double> out(static_cast<std::size_t>(npts));
  for (int i = 0; i < npts; ++i) out[static_cast<std::size_t>(i)] = f.at_midpoint(i, npts);
  return out;
}

// exact telescoping residual over the stored doubles, evaluated in rational
// arithmetic: (f_{n,m} - f_n) - sum_{j=1}^{m-1} (f_{n,j+1} - f_{n,j})
inline bool telescoping_exact(const observable& obs, const rotation_number& rot,
                              int n, int m) {
  using rat = boost::multiprecision::cpp_rational;
  std::vector<step_function> f;
  for (int j = 1; j <= m; ++j) f.push_back(build_f_nm(obs, rot, n, j));
  for (std::int64_t k = 0; k < f.front().q; ++k) {
    const auto ki = static_cast<std::size_t>(k);
    rat r = rat(f.back().vals[ki]) - rat(f.front().vals[ki]);
    for (int j = 0; j + 1 < m; ++j)
      r -= rat(f[static_cast<std::size_t>(j + 1)].vals[ki]) -
           rat(f[static_cast<std::size_t>(j)].vals[ki]);
    if (r != 0) return false;
  }
  return true;
}

inline double polygon_log_sum(std::int64_t q) {
  kahan_accumulator acc;
  const double piq = std::numbers::pi / static_cast<double>(q);
  for (std::int64_t j = 1; 2 * j < q; ++j)
    acc.add(2.0 * std::log(2.0 * std::sin(piq * static_cast<double>(j))));
  if (q % 2 == 0) acc.add(std::log(2.0));
  return acc.value();
}

// worst relative polygon-identity error over 2 <= q <= q_max, strided
// across hardware threads (per-q values are independent, so the reduction
// is deterministic).
inline double polygon_sweep_worst_rel(std::int64_t q_max) {
  const unsigned nt = std::max(1u, std::thread::hardware_concurrency());
  std::vector<double> worst(nt, 0.0);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      double w = 0.0;
      for (std::int64_t q = 2 + static_cast<std::int64_t>(t); q <= q_max;
           q += nt)
        w = std::max(w, std::fabs(std::expm1(
                            polygon_log_sum(q) -
                            std::log(static_cast<double>(q)))));
      worst[t] = w;
    });
  }
  for (auto& th : pool) th.join();
  return *std::max_element(worst.begin(), worst.end());
}

}  // namespace detail

inline double rational_engine_vs_bf256_worst(int q_max) {
  namespace mp = boost::multiprecision;
  using bf256 = mp::number<mp::cpp_bin_float<256, mp::digit_base_2>>;
  const bf256 two_pi = 2 * boost::math::constants::pi<bf256>();
  const observable g = observable::log_sin();
  const double alpha = presets::golden().value();

  auto reference_gaps = [&](std::int64_t p, std::int64_t q) {
    const std::int64_t K = q - 1;
    const std::int64_t mid = std::max<std::int64_t>(1, K / 2);
    double s_mid = 0.0, s_end = 0.0;
    scan_rational(g, p, q, K, 0, [&](std::int64_t k, double s) {
      if (k == mid) s_mid = s;
      if (k == K) s_end = s;
    });
    bf256 ref = 0;
    double gap = 0.0;
    std::int64_t m = 0;
    for (std::int64_t j = 1; j <= K; ++j) {
      m += p;
      if (m >= q) m -= q;
      const bf256 x = bf256(m) / q;
      ref += log(2 - 2 * cos(two_pi * x));
      if (j == mid) gap = std::fabs(s_mid - static_cast<double>(ref));
      if (j == K) gap = std::max(gap, std::fabs(s_end - static_cast<double>(ref)));
    }
    return gap;
  };

  double worst = 0.0;
  for (std::int64_t q = 2; q <= q_max; ++q) {
    std::int64_t p = std::clamp<std::int64_t>(
        static_cast<std::int64_t>(std::lround(alpha * static_cast<double>(q))),
        1, q - 1);
    for (std::int64_t d = 0; d < q; ++d) {  // nearest coprime numerator
      if (p - d >= 1 && std::gcd(p - d, q) == 1) { p -= d; break; }
      if (p + d <= q - 1 && std::gcd(p + d, q) == 1) { p += d; break; }
    }
    worst = std::max(worst, reference_gaps(p, q));
  }
  const auto conv = presets::golden().convergents(11);
  for (const auto& c : conv) {
    const std::int64_t q = to_int64_checked(c.q);
    if (q < 2 || q > q_max) continue;
    worst = std::max(worst, reference_gaps(to_int64_checked(c.p), q));
  }
  return worst;
}

inline std::map<std::string, double> compute_measurements() {
  std::map<std::string, double> m;
  const rotation_number golden = presets::golden();
  const observable logsin = observable::log_sin();
  const auto conv = golden.convergents(26);
  auto qn = [&](int n) { return detail::qn_int(conv, n); };

  // -- sums: envelope subsequences, one streaming pass to q_24
  const auto sub = subsequence_at_convergents(logsin, golden, 24);
  auto S_qn = [&](int n) { return sub[static_cast<std::size_t>(n - 1)].S_qn; };
  auto S_qn_1 = [&](int n) {
    return sub[static_cast<std::size_t>(n - 1)].S_qn_minus_1;
  };
  m["sums.S_q14"] = S_qn(14);
  m["sums.S_q18"] = S_qn(18);
  m["sums.S_q20"] = S_qn(20);
  m["sums.S_cauchy.18_20"] = std::fabs(S_qn(20) - S_qn(18));
  m["sums.upper_envelope.n20"] =
      S_qn_1(20) / std::log(static_cast<double>(qn(20)));
  m["sums.Xq_dev.n20"] = std::fabs(S_qn(20) - S_qn_1(20) +
                                   2.0 * std::log(static_cast<double>(qn(20))) -
                                   log_4pi2_over_5);
  {
    // The deviation from the limit is -c_parity * alpha^(2n+2) with
    // different constants for even and odd n (the sign of q_n alpha - p_n
    // enters), so the gaps decrease strictly within each parity class.
    auto dev = [&](int n) {
      return std::fabs(S_qn(n) - S_qn_1(n) +
                       2.0 * std::log(static_cast<double>(qn(n))) -
                       log_4pi2_over_5);
    };
    bool dec = true;
    for (int n = 12; n <= 20; ++n)
      if (!(dev(n) < dev(n - 2))) dec = false;
    m["sums.Xq_gaps_decreasing"] = dec ? 1.0 : 0.0;
  }

  // -- ratio extrema and per-block statistics, one pass to q_24
  {
    double mx20 = -1e300, mn20 = 1e300;
    std::vector<double> block_max(25, -1e300), block_min(25, 1e300);
    std::vector<std::int64_t> qlist(25);
    for (int n = 1; n <= 24; ++n) qlist[static_cast<std::size_t>(n)] = qn(n);
    int blk = 1;
    scan_irrational(logsin, golden, qn(24), {}, [&](std::int64_t k, double s) {
      if (k < 2) return;
      const double r = s / std::log(static_cast<double>(k));
      if (k <= qn(20)) { mx20 = std::max(mx20, r); mn20 = std::min(mn20, r); }
      while (blk < 24 && k > qlist[static_cast<std::size_t>(blk)]) ++blk;
      block_max[static_cast<std::size_t>(blk)] =
          std::max(block_max[static_cast<std::size_t>(blk)], r);
      block_min[static_cast<std::size_t>(blk)] =
          std::min(block_min[static_cast<std::size_t>(blk)], r);
    });
    m["sums.ratio_max.q20"] = mx20;
    m["sums.ratio_min.q20"] = mn20;
    bool up_ok = true, lo_ok = true;
    for (int n = 18; n <= 24; ++n) {
      const double bm = block_max[static_cast<std::size_t>(n)];
      if (!(bm < 2.0 && 2.0 - bm < 0.05)) up_ok = false;
      if (n > 18 && !(bm > block_max[static_cast<std::size_t>(n - 1)])) up_ok = false;
      const double bn = block_min[static_cast<std::size_t>(n)];
      if (!(bn > 0.0)) lo_ok = false;
      if (n > 18 && !(bn < block_min[static_cast<std::size_t>(n - 1)])) lo_ok = false;
    }
    m["sums.block_limsup_probe"] = up_ok ? 1.0 : 0.0;
    m["sums.block_liminf_probe"] = lo_ok ? 1.0 : 0.0;
  }

  // -- diagonal identity sweep (golden convergents q <= 1e5)
  {
    double worst = 0.0;
    for (const auto& c : conv) {
      const std::int64_t q = to_int64_checked(c.q);
      if (q < 2 || q > 100000) continue;
      double last = 0.0;
      scan_rational(logsin, to_int64_checked(c.p), q, q - 1, 0,
                    [&](std::int64_t, double s) { last = s; });
      worst = std::max(worst,
                       std::fabs(last - 2.0 * std::log(static_cast<double>(q))));
    }
    m["sums.diag_worst_gap"] = worst;
  }

  // -- offset sensitivity: x0 = 1/2
  {
    const auto tr = birkhoff_irrational(logsin, golden, qn(14),
                                        {static_cast<uint128>(1) << 127});
    m["sums.offset_half.dev"] = std::fabs(tr.values.back() - reported_Sqn_limit);
  }

  // -- determinism and the pairwise throughput path
  {
    const auto t1 = birkhoff_irrational(logsin, golden, qn(14));
    const auto t2 = birkhoff_irrational(logsin, golden, qn(14));
    m["sums.determinism"] = (t1.values == t2.values) ? 1.0 : 0.0;
    std::vector<double> terms(t1.values.size());
    terms[0] = t1.values[0];
    for (std::size_t i = 1; i < terms.size(); ++i)
      terms[i] = t1.values[i] - t1.values[i - 1];
    m["sums.pairwise_vs_kahan"] =
        std::fabs(pairwise_sum(terms) - t1.values.back());
  }

  // -- renorm: f_n family
  const auto f24 = build_f_n(logsin, golden, 24);
  const auto f25 = build_f_n(logsin, golden, 25);
  {
    double env = 0.0;
    for (std::int64_t k = 1; k < f24.q; ++k)
      env = std::max(env, std::fabs(f24.vals[static_cast<std::size_t>(k)]) /
                              (static_cast<double>(k) / static_cast<double>(f24.q)));
    m["renorm.f_env.n24"] = env;
    m["renorm.f_cauchy_median.n24"] = compare_on_grid(f24, f25).median;
    for (int n : {18, 20, 22}) {
      const auto fa = build_f_n(logsin, golden, n);
      const auto fb = build_f_n(logsin, golden, n + 1);
      m["renorm.f_cauchy_median.n" + std::to_string(n)] =
          compare_on_grid(fa, fb).median;
    }
  }

  const auto h24 = build_h_n(logsin, golden, 24);
  m["renorm.h1m.n24"] = h24.at_one_minus();
  {
    const auto f206 = build_f_nm(logsin, golden, 20, 6);
    const auto h20 = build_h_n(logsin, golden, 20);
    m["renorm.fnm_vs_h.sup.n20m6"] = compare_on_grid(f206, h20).sup;
    m["renorm.fnm_equals_f.n20"] =
        (build_f_nm(logsin, golden, 20, 1).vals ==
         build_f_n(logsin, golden, 20).vals)
            ? 1.0
            : 0.0;
  }
  {
    const auto hs = estimate_h_from_f(f24, golden, 40);
    m["renorm.hseries.1m.n24"] = hs.fn.at_one_minus();
    m["renorm.hseries_vs_h.sup.n24"] = compare_on_grid(hs.fn, h24).sup;
    m["renorm.hseries.tail.n24"] = hs.tail_bound;
  }

  const auto beta24 = build_beta_n(f24, golden);
  m["renorm.beta1m.n24"] = beta24.at_one_minus();
  m["renorm.beta_mono.n24"] = monotonicity_violation_fraction(beta24, 1e-3);
  {
    const auto rep24 = beta_selfsimilarity_report(beta24, golden);
    m["renorm.selfsim.a.n24"] = rep24.a;
    m["renorm.selfsim.b.n24"] = rep24.b;
    m["renorm.selfsim.c.n24"] = rep24.c;
    m["renorm.selfsim.sup1.n24"] = rep24.sup_beta1;
    m["renorm.selfsim.l1_1.n24"] = rep24.l1_beta1;
    m["renorm.selfsim.sup2.n24"] = rep24.sup_beta2;
    m["renorm.selfsim.l1_2.n24"] = rep24.l1_beta2;
    const auto f18 = build_f_n(logsin, golden, 18);
    const auto rep18 =
        beta_selfsimilarity_report(build_beta_n(f18, golden), golden);
    m["renorm.selfsim.l1_1.n18"] = rep18.l1_beta1;
    m["renorm.selfsim.l1_2.n18"] = rep18.l1_beta2;
  }
  {
    const auto gf = build_gamma(h24, beta24, golden, 40);
    m["renorm.gamma_forms_sup.n24"] = compare_on_grid(gf.direct, gf.series).sup;
    m["renorm.gamma_mono.n24"] =
        monotonicity_violation_fraction(gf.direct, 1e-3);
  }

  // -- mean invariance and telescoping (exact)
  {
    const observable shifted = logsin.shifted(0.5);
    const auto f16 = build_f_n(logsin, golden, 16);
    const auto f16s = build_f_n(shifted, golden, 16);
    double worst = 0.0;
    for (std::size_t k = 0; k < f16.vals.size(); ++k)
      worst = std::max(worst, std::fabs(f16.vals[k] - f16s.vals[k]));
    const auto h16 = build_h_n(logsin, golden, 16);
    const auto h16s = build_h_n(shifted, golden, 16);
    for (std::size_t k = 0; k < h16.vals.size(); ++k)
      worst = std::max(worst, std::fabs(h16.vals[k] - h16s.vals[k]));
    m["renorm.mean_inv.n16"] = worst;
    m["renorm.telescoping_exact.n16m4"] =
        detail::telescoping_exact(logsin, golden, 16, 4) ? 1.0 : 0.0;
  }

  // -- Hecke renormalization limits
  {
    const observable hk = observable::hecke(true);
    for (int n : {16, 17}) {
      const auto h = build_h_n(hk, golden, n);
      const double c_true = (n % 2 == 0) ? hecke_parabola_coeff
                                         : -hecke_parabola_coeff;
      const double c_rep = (n % 2 == 0) ? -std::numbers::pi / std::sqrt(5.0)
                                        : std::numbers::pi / std::sqrt(5.0);
      double sup_true = 0.0, sup_rep = 0.0;
      for (std::int64_t k = 0; k < h.q; ++k) {
        const double x = static_cast<double>(k) / static_cast<double>(h.q);
        const double v = h.vals[static_cast<std::size_t>(k)];
        sup_true = std::max(sup_true, std::fabs(v - c_true * x * x));
        sup_rep = std::max(sup_rep, std::fabs(v - c_rep * x * x));
      }
      m["renorm.hecke_parab.n" + std::to_string(n)] = sup_true;
      m["renorm.hecke_parab_paper.n" + std::to_string(n)] = sup_rep;
    }
    const auto subh = subsequence_at_convergents(hk, golden, 20);
    m["sums.hecke_cauchy_even"] =
        std::fabs(subh[19].S_qn - subh[17].S_qn);
    m["sums.hecke_cauchy_odd"] =
        std::fabs(subh[18].S_qn - subh[16].S_qn);
  }

  m["renorm.exceptional_mass.n14j1"] =
      exceptional_mass(logsin, golden, 14, 1);

  // -- other rotation numbers
  {
    const rotation_number r3 = presets::sqrt3_minus_1_over_2();
    const auto fe = build_f_n(logsin, r3, 16);
    const auto fo = build_f_n(logsin, r3, 17).resampled(fe.q);
    const auto bper = build_beta_periodic(fe, fo, 2, 1, r3);
    m["renorm.beta_periodic_sqrt3.mono.n16"] =
        monotonicity_violation_fraction(bper, 1e-3);

    const rotation_number silver = presets::silver();
    const auto fs12 = detail::midgrid_values(build_f_n(logsin, silver, 12));
    const auto fs13 = detail::midgrid_values(build_f_n(logsin, silver, 13));
    m["renorm.silver_class_corr"] = detail::pearson_corr(fs12, fs13);

    const rotation_number half_silver(-1, 1, 2, 2);  // (sqrt2-1)/2 = [4,1,...]
    const auto fh12 = detail::midgrid_values(build_f_n(logsin, half_silver, 12));
    auto fh13 = detail::midgrid_values(build_f_n(logsin, half_silver, 13));
    for (auto& v : fh13) v = -v;
    m["renorm.sqrt2half_cross_corr"] = detail::pearson_corr(fh12, fh13);
    auto fh11 = detail::midgrid_values(build_f_n(logsin, half_silver, 11));
    for (auto& v : fh13) v = -v;  // back to f_13
    m["renorm.sqrt2half_class_corr"] = detail::pearson_corr(fh11, fh13);
  }

  // -- distribution
  {
    const auto h24d = ratio_histogram(logsin, golden, qn(24), 200, 0.0, 2.0);
    const auto h18d = ratio_histogram(logsin, golden, qn(18), 200, 0.0, 2.0);
    m["dist.oor_frac.q24"] = static_cast<double>(h24d.out_of_range) /
                             static_cast<double>(h24d.total);
    m["dist.defect.q24"] = symmetry_defect(h24d);
    m["dist.defect.q18"] = symmetry_defect(h18d);
    const auto fq20 = fourier_of_ratios(logsin, golden, 20, 32, true);
    const auto fq24 = fourier_of_ratios(logsin, golden, 24, 32, true);
    const auto fk20 = fourier_of_ratios(logsin, golden, 20, 32, false);
    const auto fk24 = fourier_of_ratios(logsin, golden, 24, 32, false);
    double gq = 0.0, gk = 0.0;
    for (int i = 0; i <= 32; ++i) {
      gq = std::max(gq, std::abs(fq24.coeffs[static_cast<std::size_t>(i)] -
                                 fq20.coeffs[static_cast<std::size_t>(i)]));
      gk = std::max(gk, std::abs(fk24.coeffs[static_cast<std::size_t>(i)] -
                                 fk20.coeffs[static_cast<std::size_t>(i)]));
    }
    m["dist.fourier_stab.logqn"] = gq;
    m["dist.fourier_stab.logk"] = gk;
    m["dist.rho0.n24"] = std::abs(fq24.coeffs[0]);
    double worst_mod = 0.0;
    for (const auto& z : fq24.coeffs) worst_mod = std::max(worst_mod, std::abs(z));
    m["dist.rho_max_mod.n24"] = worst_mod;
  }

  // -- complex products
  {
    for (int n : {10, 14, 20}) {
      const auto P = product_P(golden, qn(n));
      m["cplx.duality.q" + std::to_string(n)] =
          std::fabs(2.0 * P.log_abs - S_qn(n));
    }
    m["cplx.c2.q14"] = c2_orbit_check(golden, qn(14));
    m["cplx.c2.q20"] = c2_orbit_check(golden, qn(20));
    m["cplx.poly.q2"] = polygon_diagonal_product(2);
    m["cplx.poly.q5"] = polygon_diagonal_product(5);
    m["cplx.poly.q10946"] = polygon_diagonal_product(10946);
    m["cplx.P_rational.8_13"] = std::exp(product_P(8, 13, 12).log_abs);

    const auto F15 = build_F_n(golden, 15);
    const auto F16 = build_F_n(golden, 16);
    const auto f15 = build_f_n(logsin, golden, 15);
    double idgap = 0.0;
    for (std::int64_t k = 0; k < F15.q; ++k)
      idgap = std::max(idgap,
                       std::fabs(2.0 * F15.log_abs[static_cast<std::size_t>(k)] -
                                 f15.vals[static_cast<std::size_t>(k)]));
    m["cplx.F_f_identity.n15"] = idgap;
    const auto B15 = build_B_n(F15, golden);
    const auto beta15 = build_beta_n(f15, golden);
    double bgap = 0.0;
    for (std::int64_t k = 0; k < B15.q; ++k)
      bgap = std::max(bgap,
                      std::fabs(2.0 * B15.log_abs[static_cast<std::size_t>(k)] -
                                beta15.vals[static_cast<std::size_t>(k)]));
    m["cplx.B_beta_identity.n15"] = bgap;

    std::int64_t up15 = 0, down16 = 0;
    for (std::int64_t k = 0; k < F15.q; ++k)
      if (F15.value(k).imag() > 1e-15) ++up15;
    for (std::int64_t k = 0; k < F16.q; ++k)
      if (F16.value(k).imag() < -1e-15) ++down16;
    m["cplx.F_lower_viol.n15"] =
        static_cast<double>(up15) / static_cast<double>(F15.q);
    m["cplx.F_upper_viol.n16"] =
        static_cast<double>(down16) / static_cast<double>(F16.q);

    auto conj_median = [&](const complex_step_function& A,
                           const complex_step_function& B) {
      std::vector<double> gaps(1000);
      for (int i = 0; i < 1000; ++i)
        gaps[static_cast<std::size_t>(i)] =
            std::abs(A.at_midpoint(i, 1000) - std::conj(B.at_midpoint(i, 1000)));
      std::sort(gaps.begin(), gaps.end());
      return gaps[500];
    };
    const auto F14 = build_F_n(golden, 14);
    m["cplx.F_conj_median.n15"] = conj_median(F15, F16);
    m["cplx.F_conj_median.n14"] = conj_median(F14, F15);
    m["cplx.B_conj_median.n15"] = conj_median(B15, build_B_n(F16, golden));
  }

  // -- 256-bit brute-force reference for the rational engine
  m["sums.oracle256_worst"] = rational_engine_vs_bf256_worst(200);

  return m;
}

inline std::vector<golden_record> golden_table() {
  using rs = record_source;
  std::vector<golden_record> t;
  auto add = [&](std::string id, double exp_, double tol, rs src,
                 std::string note) {
    t.push_back({std::move(id), exp_, tol, src, std::move(note)});
  };

  // exact values
  add("cplx.poly.q2", 2.0, 1e-12, rs::exact, "single diagonal of the 2-gon");
  add("cplx.P_rational.8_13", 13.0, 1e-10, rs::exact,
      "diagonal product of the 13-gon");
  add("dist.rho0.n24", 1.0, 0.0, rs::exact, "Fourier normalization");
  add("dist.rho_max_mod.n24", 0.5, 0.5 + 1e-12, rs::exact,
      "|rho_m| <= 1 (triangle inequality)");
  add("renorm.fnm_equals_f.n20", 1.0, 0.0, rs::exact, "f_{n,1} == f_n bitwise");
  add("renorm.telescoping_exact.n16m4", 1.0, 0.0, rs::exact,
      "telescoping residual vanishes in exact rational arithmetic");
  add("sums.determinism", 1.0, 0.0, rs::exact, "bit-identical reruns");

  // reported quantitative observations
  add("sums.S_q20", reported_Sqn_limit, 5e-3, rs::reported,
      "limit of S_{q_n} along golden convergents");
  add("sums.S_cauchy.18_20", 0.0, 5e-3, rs::reported, "Cauchy gap of S_{q_n}");
  add("sums.Xq_dev.n20", 0.0, 1e-3, rs::reported,
      "X_{q_n} + 2 log q_n -> log(4 pi^2/5)");
  add("sums.Xq_gaps_decreasing", 1.0, 0.0, rs::reported,
      "successive gaps decrease over n = 10..20");
  add("sums.diag_worst_gap", 0.0, 1e-9, rs::reported,
      "S_{q-1}(p/q) = 2 log q at every golden convergent q <= 1e5");
  add("sums.upper_envelope.n20", 2.0, 0.05, rs::reported,
      "S_{q_n - 1}/log q_n -> 2");
  add("renorm.h1m.n24", reported_h_one_minus, 2e-3, rs::reported,
      "h(1-) = -0.30945");
  add("renorm.beta1m.n24", reported_beta_one_minus, 5e-3, rs::reported,
      "beta(1-) = 0.104");
  add("cplx.duality.q20", 0.0, 1e-8, rs::reported, "2 log|P_K| = S_K");
  add("cplx.poly.q5", 5.0, 5e-10, rs::reported, "5-gon diagonal product");
  add("cplx.poly.q10946", 10946.0, 10946.0 * 1e-7, rs::reported,
      "Fibonacci-gon diagonal product at scale");
  add("cplx.c2.q20", 0.0, 1e-7, rs::reported,
      "log|w_n| = S_n/2 along the quadratic map orbit");
  add("sums.offset_half.dev", 0.55, 0.45, rs::reported,
      "x0 = 1/2 breaks the S_{q_n} limit (deviation must exceed 0.1)");

  // calibrated by the oracle runner (pre-build n-sweeps; margins over the
  // observed values recorded in the provenance file)
  add("sums.oracle256_worst", 0.0, 1e-12, rs::calibrated,
      "rational engine vs 256-bit brute force, q <= 200");
  add("sums.pairwise_vs_kahan", 0.0, 1e-10, rs::calibrated,
      "deterministic pairwise path agrees with compensated serial");
  add("renorm.f_env.n24", 0.0, 1.1, rs::calibrated,
      "|f_n(x)| <= x envelope with 10% headroom (observed 1.048)");
  add("renorm.f_cauchy_median.n24", 0.0, 0.02, rs::calibrated,
      "median grid gap f_24 vs f_25 (observed ~3e-4)");
  add("renorm.fnm_vs_h.sup.n20m6", 0.0, 0.01, rs::calibrated,
      "f_{n,m} approaches h_n (observed 0.0019)");
  add("renorm.hseries.1m.n24", reported_h_one_minus, 3e-3, rs::calibrated,
      "h(1-) via the f-series (observed gap 7e-6)");
  add("renorm.hseries_vs_h.sup.n24", 0.0, 0.02, rs::calibrated,
      "series vs direct h_n on the midpoint grid (observed 0.0101)");
  add("renorm.beta_mono.n24", 0.0, 0.02, rs::calibrated,
      "beta monotonicity-violation mass (observed 0.0032)");
  add("renorm.selfsim.sup1.n24", 0.0, 0.10, rs::calibrated,
      "sup |beta - beta_1| (observed 0.0485)");
  add("renorm.selfsim.l1_1.n24", 0.0, 0.004, rs::calibrated,
      "L1 |beta - beta_1| (observed 0.0014)");
  add("renorm.selfsim.sup2.n24", 0.0, 0.08, rs::calibrated,
      "sup |beta - beta_2| (observed 0.0353)");
  add("renorm.selfsim.l1_2.n24", 0.0, 0.025, rs::calibrated,
      "L1 |beta - beta_2| (observed 0.0121)");
  add("renorm.gamma_forms_sup.n24", 0.0, 0.02, rs::calibrated,
      "gamma direct vs series, midpoint grid (observed 0.0101)");
  add("renorm.gamma_mono.n24", 0.0, 0.05, rs::calibrated,
      "gamma monotonicity-violation mass (observed 0.0023)");
  add("renorm.mean_inv.n16", 0.0, 1e-12, rs::calibrated,
      "f_n, h_n invariant under g + 1/2 (observed 4e-13)");
  add("renorm.hecke_parab.n16", 0.0, 0.01, rs::calibrated,
      "h_16 -> +x^2/(2 sqrt 5) (observed 1.4e-4)");
  add("renorm.hecke_parab.n17", 0.0, 0.01, rs::calibrated,
      "h_17 -> -x^2/(2 sqrt 5) (observed 8.6e-5)");
  add("sums.hecke_cauchy_even", 0.0, 1e-3, rs::calibrated,
      "Hecke S_{q_{2n}} convergent (observed 3.3e-5)");
  add("sums.hecke_cauchy_odd", 0.0, 1e-3, rs::calibrated,
      "Hecke S_{q_{2n+1}} convergent (observed 5.3e-5)");
  add("renorm.beta_periodic_sqrt3.mono.n16", 0.0, 0.05, rs::calibrated,
      "period-2 beta combination monotone (observed 0.0049)");
  add("renorm.silver_class_corr", 1.0, 0.01, rs::calibrated,
      "period-1 silver: f_n single limit class (observed 1.0000)");
  add("renorm.sqrt2half_cross_corr", 0.66, 0.17, rs::calibrated,
      "(sqrt2-1)/2: f_{2n} vs -f_{2n+1} correlation (observed 0.662)");
  add("renorm.sqrt2half_class_corr", 1.0, 0.01, rs::calibrated,
      "(sqrt2-1)/2: within-class convergence (observed 1.0000)");
  add("dist.oor_frac.q24", 0.0, 0.005, rs::calibrated,
      "out-of-range ratio mass (observed 2.7e-5)");
  add("dist.defect.q24", 0.0, 0.70, rs::calibrated,
      "histogram symmetry defect at q_24 (observed 0.6155)");
  add("dist.fourier_stab.logqn", 0.0, 0.10, rs::calibrated,
      "Fourier coefficient stability, log q_n normalization (observed 0.069)");
  add("dist.fourier_stab.logk", 0.0, 0.12, rs::calibrated,
      "Fourier coefficient stability, log k normalization (observed 0.082)");
  add("cplx.F_f_identity.n15", 0.0, 1e-9, rs::calibrated,
      "f_n = 2 log|F_n| definitional identity");
  add("cplx.B_beta_identity.n15", 0.0, 1e-6, rs::calibrated,
      "beta_n = 2 log|B_n| modulus identity (branch-independent)");
  add("cplx.F_lower_viol.n15", 0.0, 0.01, rs::calibrated,
      "odd-n image in the lower half plane (observed violation 0.0010)");
  add("cplx.F_upper_viol.n16", 0.0, 0.01, rs::calibrated,
      "even-n image in the upper half plane (observed 0.0006)");
  add("cplx.F_conj_median.n15", 0.0, 0.005, rs::calibrated,
      "F_15 vs conj F_16 median gap (observed 3.1e-4)");
  add("cplx.B_conj_median.n15", 0.0, 0.005, rs::calibrated,
      "B_15 vs conj B_16 median gap (observed 4.2e-4)");
  add("sums.block_limsup_probe", 1.0, 0.0, rs::calibrated,
      "per-block max of S_k/log k approaches 2 from below within 0.05");
  add("sums.block_liminf_probe", 1.0, 0.0, rs::calibrated,
      "per-block min positive and decreasing toward 0");
  return t;
}

inline void run_oracle(const std::filesystem::path& provenance_path,
                       const std::set<std::string>* subset) {
  nlohmann::json out;
  out["description"] =
      "oracle-observed values backing the calibrated regression records";
  nlohmann::json recs = nlohmann::json::object();
  if (!(subset && subset->empty())) {
    const auto meas = compute_measurements();
    for (const auto& rec : golden_table()) {
      if (rec.source != record_source::calibrated) continue;
      if (subset && !subset->count(rec.id)) continue;
      recs[rec.id] = meas.at(rec.id);
    }
  }
  out["records"] = recs;
  std::filesystem::create_directories(provenance_path.parent_path().empty()
                                          ? "."
                                          : provenance_path.parent_path());
  std::ofstream os(provenance_path);
  os << out.dump(2) << "\n";
}

inline regression_report run_regression(
    const std::filesystem::path& provenance_path) {
  if (!std::filesystem::exists(provenance_path))
    throw missing_provenance("provenance file not found: " +
                             provenance_path.string());
  nlohmann::json prov;
  {
    std::ifstream is(provenance_path);
    is >> prov;
  }
  const auto& prov_recs = prov.at("records");
  const auto meas = compute_measurements();
  regression_report rep;
  for (const auto& rec : golden_table()) {
    evaluated_record ev;
    ev.rec = rec;
    ev.actual = meas.at(rec.id);
    ev.pass = std::fabs(ev.actual - rec.expected) <= rec.tolerance;
    switch (rec.source) {
      case record_source::exact: ++rep.count_exact; break;
      case record_source::reported: ++rep.count_reported; break;
      case record_source::calibrated: {
        ++rep.count_calibrated;
        if (!prov_recs.contains(rec.id))
          throw missing_provenance(
              "calibrated record lacks a provenance entry: " + rec.id);
        // a stale provenance (engine drift since the oracle ran) fails the
        // record even when the locked threshold still holds
        const double observed = prov_recs.at(rec.id).get<double>();
        if (std::fabs(observed - ev.actual) >
            std::max(1e-12, 0.5 * rec.tolerance))
          ev.pass = false;
        break;
      }
    }
    rep.all_pass = rep.all_pass && ev.pass;
    rep.records.push_back(std::move(ev));
  }
  return rep;
}

inline std::vector<criterion_result> run_acceptance() {
  using clock = std::chrono::steady_clock;
  std::vector<criterion_result> out;
  const rotation_number golden = presets::golden();
  const observable logsin = observable::log_sin();
  const auto conv = golden.convergents(24);
  auto qn = [&](int n) { return detail::qn_int(conv, n); };
  const auto meas = compute_measurements();
  auto mv = [&](const std::string& id) { return meas.at(id); };
  char buf[256];
  auto fmt = [&](const char* f, auto... a) {
    std::snprintf(buf, sizeof buf, f, a...);
    return std::string(buf);
  };

  {  // 1: exact diagonal identity, timed
    criterion_result r;
    r.id = 1;
    r.name = "exact diagonal identity S_{q-1}(p/q) = 2 log q";
    const auto t0 = clock::now();
    double worst = 0.0;
    for (const auto& c : conv) {
      const std::int64_t q = to_int64_checked(c.q);
      if (q < 2 || q > 100000) continue;
      double last = 0.0;
      scan_rational(logsin, to_int64_checked(c.p), q, q - 1, 0,
                    [&](std::int64_t, double s) { last = s; });
      worst = std::max(worst,
                       std::fabs(last - 2.0 * std::log(static_cast<double>(q))));
    }
    r.runtime_s = std::chrono::duration<double>(clock::now() - t0).count();
    r.clauses.push_back({"worst gap < 1e-9 over every convergent q <= 1e5",
                         worst < 1e-9, fmt("worst = %.3e", worst)});
    r.clauses.push_back({"runtime < 10 s", r.runtime_s < 10.0,
                         fmt("%.2f s", r.runtime_s)});
    out.push_back(std::move(r));
  }

  {  // 2: limit of S_{q_n}, timed on a dedicated scan
    criterion_result r;
    r.id = 2;
    r.name = "limit of S_{q_n}(alpha)";
    const auto t0 = clock::now();
    double s18 = 0.0, s20 = 0.0;
    scan_irrational(logsin, golden, qn(20), {}, [&](std::int64_t k, double s) {
      if (k == qn(18)) s18 = s;
      if (k == qn(20)) s20 = s;
    });
    r.runtime_s = std::chrono::duration<double>(clock::now() - t0).count();
    r.clauses.push_back({"|S_{q_20} - 1.75687| < 5e-3",
                         std::fabs(s20 - reported_Sqn_limit) < 5e-3,
                         fmt("S_q20 = %.6f", s20)});
    r.clauses.push_back({"|S_{q_20} - S_{q_18}| < 5e-3",
                         std::fabs(s20 - s18) < 5e-3,
                         fmt("gap = %.2e", std::fabs(s20 - s18))});
    r.clauses.push_back({"runtime < 5 s", r.runtime_s < 5.0,
                         fmt("%.2f s", r.runtime_s)});
    out.push_back(std::move(r));
  }

  {  // 3: singularity asymptotic
    criterion_result r;
    r.id = 3;
    r.name = "X_{q_n} + 2 log q_n -> log(4 pi^2/5)";
    r.clauses.push_back({"deviation at n=20 < 1e-3",
                         mv("sums.Xq_dev.n20") < 1e-3,
                         fmt("dev = %.2e", mv("sums.Xq_dev.n20"))});
    r.clauses.push_back(
        {"gaps decreasing over n = 10..20 (within parity classes)",
         mv("sums.Xq_gaps_decreasing") == 1.0,
         "deviation = -c_parity alpha^(2n+2); strict decrease holds at "
         "stride 2"});
    out.push_back(std::move(r));
  }

  {  // 4: envelope constants, as stated (documented spec defect)
    criterion_result r;
    r.id = 4;
    r.name = "envelope constants of S_k/log k";
    r.expected_pass = false;
    const double mx = mv("sums.ratio_max.q20"), mn = mv("sums.ratio_min.q20");
    r.clauses.push_back(
        {"max_{2<=k<=q_20} S_k/log k in [1.9, 2.05]", mx >= 1.9 && mx <= 2.05,
         fmt("max = %.4f at small k (transient); per-block max = %.4f",
             mx, mv("sums.upper_envelope.n20"))});
    r.clauses.push_back(
        {"min in [-0.05, 0.1]", mn >= -0.05 && mn <= 0.1,
         fmt("min = %.4f = S_{q_20}/log q_20; reaches 0.1 only past q ~ 4e7", mn)});
    const double env = mv("sums.upper_envelope.n20");
    r.clauses.push_back({"S_{q_20-1}/log q_20 within 0.05 of 2",
                         std::fabs(env - 2.0) < 0.05, fmt("%.5f", env)});
    out.push_back(std::move(r));
  }

  {  // 5: h(1-)
    criterion_result r;
    r.id = 5;
    r.name = "h(1-) and the f-series cross-check";
    r.clauses.push_back({"|h_24(1-) + 0.30945| < 2e-3",
                         std::fabs(mv("renorm.h1m.n24") - reported_h_one_minus) < 2e-3,
                         fmt("h(1-) = %.6f", mv("renorm.h1m.n24"))});
    r.clauses.push_back({"estimate_h_from_f within 0.02 of build_h_n",
                         mv("renorm.hseries_vs_h.sup.n24") < 0.02,
                         fmt("sup = %.4f", mv("renorm.hseries_vs_h.sup.n24"))});
    out.push_back(std::move(r));
  }

  {  // 6: beta(1-)
    criterion_result r;
    r.id = 6;
    r.name = "beta(1-)";
    r.clauses.push_back({"|beta_24(1-) - 0.104| < 5e-3",
                         std::fabs(mv("renorm.beta1m.n24") - reported_beta_one_minus) < 5e-3,
                         fmt("beta(1-) = %.6f", mv("renorm.beta1m.n24"))});
    out.push_back(std::move(r));
  }

  {  // 7: Hecke limits, as stated (documented spec defect: constant off by
     //    2 pi and parity shifted; measured limit is +/- x^2/(2 sqrt 5))
    criterion_result r;
    r.id = 7;
    r.name = "Hecke renormalization limits";
    r.expected_pass = false;
    r.clauses.push_back(
        {"sup |h_16(x) + (pi/sqrt5) x^2| < 0.01",
         mv("renorm.hecke_parab_paper.n16") < 0.01,
         fmt("sup = %.3f; vs measured +x^2/(2 sqrt 5): %.2e",
             mv("renorm.hecke_parab_paper.n16"), mv("renorm.hecke_parab.n16"))});
    r.clauses.push_back(
        {"sup |h_17(x) - (pi/sqrt5) x^2| < 0.01",
         mv("renorm.hecke_parab_paper.n17") < 0.01,
         fmt("sup = %.3f; vs measured -x^2/(2 sqrt 5): %.2e",
             mv("renorm.hecke_parab_paper.n17"), mv("renorm.hecke_parab.n17"))});
    out.push_back(std::move(r));
  }

  {  // 8: distribution, timed (defect clause is a documented spec defect)
    criterion_result r;
    r.id = 8;
    r.name = "limiting distribution of S_k/log k";
    r.expected_pass = false;
    const auto t0 = clock::now();
    const auto h24d = ratio_histogram(logsin, golden, qn(24), 200, 0.0, 2.0);
    const auto h18d = ratio_histogram(logsin, golden, qn(18), 200, 0.0, 2.0);
    const double oor = static_cast<double>(h24d.out_of_range) /
                       static_cast<double>(h24d.total);
    const double d24 = symmetry_defect(h24d), d18 = symmetry_defect(h18d);
    r.runtime_s = std::chrono::duration<double>(clock::now() - t0).count();
    r.clauses.push_back({"out-of-range mass < 0.5%", oor < 0.005,
                         fmt("%.5f%%", 100.0 * oor)});
    r.clauses.push_back(
        {"symmetry defect < 0.15", d24 < 0.15,
         fmt("defect = %.4f (structural at finite K; see notes)", d24)});
    r.clauses.push_back({"defect decreasing from q_18 to q_24", d24 < d18,
                         fmt("%.4f -> %.4f", d18, d24)});
    r.clauses.push_back({"runtime < 30 s", r.runtime_s < 30.0,
                         fmt("%.2f s", r.runtime_s)});
    out.push_back(std::move(r));
  }

  {  // 9: complex duality, polygon identity, quadratic-map orbit
    criterion_result r;
    r.id = 9;
    r.name = "complex products";
    for (int n : {10, 14, 20}) {
      const double gap = mv("cplx.duality.q" + std::to_string(n));
      r.clauses.push_back({fmt("2 log|P_K| = S_K at K = q_%d within 1e-8", n),
                           gap < 1e-8, fmt("gap = %.2e", gap)});
    }
    const auto t0 = clock::now();
    const double poly_worst = detail::polygon_sweep_worst_rel(100000);
    const double sweep_s = std::chrono::duration<double>(clock::now() - t0).count();
    r.runtime_s = sweep_s;
    r.clauses.push_back({"polygon product = q to 1e-9 relative, all q <= 1e5",
                         poly_worst < 1e-9,
                         fmt("worst rel = %.2e (%.1f s)", poly_worst, sweep_s)});
    r.clauses.push_back({"c2_orbit_check(q_20) < 1e-7",
                         mv("cplx.c2.q20") < 1e-7,
                         fmt("max dev = %.2e", mv("cplx.c2.q20"))});
    out.push_back(std::move(r));
  }

  {  // 10: property suites and the threshold-locking mechanism
    criterion_result r;
    r.id = 10;
    r.name = "property suites";
    r.clauses.push_back({"rational engine vs 256-bit brute force < 1e-12",
                         mv("sums.oracle256_worst") < 1e-12,
                         fmt("worst = %.2e", mv("sums.oracle256_worst"))});
    r.clauses.push_back({"determinism: bit-identical reruns",
                         mv("sums.determinism") == 1.0, ""});
    r.clauses.push_back({"mean-invariance of f_n/h_n under g + 1/2 (1e-12)",
                         mv("renorm.mean_inv.n16") <= 1e-12,
                         fmt("worst = %.2e", mv("renorm.mean_inv.n16"))});
    r.clauses.push_back({"telescoping identity exact",
                         mv("renorm.telescoping_exact.n16m4") == 1.0, ""});
    const bool cauchy_dec = mv("renorm.f_cauchy_median.n22") <
                            mv("renorm.f_cauchy_median.n18");
    r.clauses.push_back({"Cauchy decay of f_n (median grid gaps decreasing)",
                         cauchy_dec,
                         fmt("median(18,19) = %.2e -> median(22,23) = %.2e",
                             mv("renorm.f_cauchy_median.n18"),
                             mv("renorm.f_cauchy_median.n22"))});
    r.clauses.push_back({"|f_n(x)| <= x + 0.1", mv("renorm.f_env.n24") <= 1.1,
                         fmt("max |f|/x = %.4f", mv("renorm.f_env.n24"))});
    r.clauses.push_back({"beta monotonicity-violation mass < 2% at n=24",
                         mv("renorm.beta_mono.n24") < 0.02,
                         fmt("%.4f%%", 100.0 * mv("renorm.beta_mono.n24"))});
    // the locking mechanism end to end: oracle writes provenance, the
    // regression store evaluates every record against it
    const auto prov = std::filesystem::temp_directory_path() /
                      "birkhoff_acceptance_provenance.json";
    run_oracle(prov);
    const auto rep = run_regression(prov);
    r.clauses.push_back(
        {"oracle-locked regression store green", rep.all_pass,
         fmt("%d exact + %d reported + %d calibrated records",
             rep.count_exact, rep.count_reported, rep.count_calibrated)});
    out.push_back(std::move(r));
  }

  for (auto& r : out) {
    r.pass = true;
    for (const auto& c : r.clauses) r.pass = r.pass && c.pass;
  }
  return out;
}

}  // namespace birkhoff
