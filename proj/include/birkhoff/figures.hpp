// figures.hpp -- plot-ready data files behind the reference figures.
//
// Each run emits CSVs plus a JSON manifest of the exact parameters (surd
// integers, convergents, depths); identical manifests produce byte-identical
// CSVs.  Output is data, not images.
#pragma once

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "birkhoff/csv_io.hpp"
#include "birkhoff/experiments.hpp"

namespace birkhoff {

namespace detail {

inline nlohmann::json rotation_json(const rotation_number& rot) {
  nlohmann::json j;
  j["surd"] = {rot.surd_a(), rot.surd_b(), rot.surd_c(), rot.surd_d()};
  j["cf_preperiod"] = rot.cf_preperiod();
  j["cf_period"] = rot.cf_period();
  j["value"] = rot.value();
  return j;
}

inline nlohmann::json convergents_json(const rotation_number& rot, int n_max,
                                       int index_offset) {
  auto arr = nlohmann::json::array();
  for (const auto& c : rot.convergents(n_max, index_offset))
    arr.push_back({{"n", c.n}, {"p", c.p.str()}, {"q", c.q.str()}});
  return arr;
}

inline void write_file(const std::filesystem::path& p, const std::string& body) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot open " + p.string());
  os << body;
}

template <class Writer>
inline void emit(const std::filesystem::path& p, Writer&& w) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot open " + p.string());
  w(os);
}

}  // namespace detail

// figure ids: fig1 raw trace to q_14 with envelopes; fig2 ratio histogram;
// fig3 f_n and beta_n; fig4 beta self-similarity residuals; fig5 the
// period-3 f-family of sqrt(41)-6; fig6 Hecke trace and h_n parabolas;
// fig7 complex images of F_n and B_n.
inline std::vector<std::string> run_figure(const std::string& fig,
                                           const experiment_config& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  const fs::path dir = cfg.out_dir;
  std::vector<std::string> files;
  nlohmann::json manifest;
  manifest["figure"] = fig;
  manifest["config"] = cfg.to_json();

  auto add_file = [&](const std::string& name) {
    files.push_back((dir / name).string());
    return dir / name;
  };

  if (fig == "fig1") {
    const auto rot = cfg.make_rotation();
    const auto obs = cfg.make_observable();
    const int n = cfg.n == 24 ? 14 : cfg.n;  // figure default depth
    const auto conv = rot.convergents(n, cfg.index_offset);
    const auto K = to_int64_checked(conv.back().q);
    const auto tr = birkhoff_irrational(obs, rot, K);
    detail::emit(add_file("fig1_trace.csv"),
                 [&](std::ostream& os) { write_trace_csv(os, tr); });
    const auto sub = subsequence_at_convergents(obs, rot, n, cfg.index_offset);
    detail::emit(add_file("fig1_envelopes.csv"),
                 [&](std::ostream& os) { write_convergent_sums_csv(os, sub); });
    manifest["n"] = n;
    manifest["K"] = K;
    manifest["convergents"] = detail::convergents_json(rot, n, cfg.index_offset);
    manifest["rotation"] = detail::rotation_json(rot);
  } else if (fig == "fig2") {
    const auto rot = cfg.make_rotation();
    const auto obs = cfg.make_observable();
    const int n = cfg.deep ? 28 : (cfg.n == 0 ? 24 : cfg.n);
    const auto conv = rot.convergents(n, cfg.index_offset);
    const auto K = cfg.K > 0 ? cfg.K : to_int64_checked(conv.back().q);
    const auto h = ratio_histogram(obs, rot, K, cfg.bins, cfg.range_lo,
                                   cfg.range_hi);
    detail::emit(add_file("fig2_histogram.csv"),
                 [&](std::ostream& os) { write_histogram_csv(os, h); });
    manifest["K"] = K;
    manifest["out_of_range"] = h.out_of_range;
    manifest["total"] = h.total;
    manifest["symmetry_defect"] = symmetry_defect(h);
    manifest["rotation"] = detail::rotation_json(rot);
  } else if (fig == "fig3") {
    const auto rot = cfg.make_rotation();
    const auto obs = cfg.make_observable();
    const auto f = build_f_n(obs, rot, cfg.n, cfg.index_offset);
    const auto b = build_beta_n(f, rot);
    detail::emit(add_file("fig3_f_n.csv"),
                 [&](std::ostream& os) { write_step_csv(os, f); });
    detail::emit(add_file("fig3_beta_n.csv"),
                 [&](std::ostream& os) { write_step_csv(os, b); });
    manifest["n"] = cfg.n;
    manifest["q_n"] = f.q;
    manifest["beta_one_minus"] = b.at_one_minus();
    manifest["rotation"] = detail::rotation_json(rot);
  } else if (fig == "fig4") {
    const auto rot = cfg.make_rotation();
    const auto obs = cfg.make_observable();
    const auto f = build_f_n(obs, rot, cfg.n, cfg.index_offset);
    const auto b = build_beta_n(f, rot);
    const auto rep = beta_selfsimilarity_report(b, rot);
    // residual grids beta - beta_1, beta - beta_2 on 1000 midpoints
    detail::emit(add_file("fig4_residuals.csv"), [&](std::ostream& os) {
      os << "x_mid,beta,beta1_residual,beta2_residual\n";
      const uint128 F = rot.fixed_point();
      const std::int64_t q = b.q;
      const auto ia = static_cast<std::int64_t>(
          rot.scaled_floor(static_cast<std::uint64_t>(q)));
      const double a = b.vals[static_cast<std::size_t>(ia - 1)];
      const double bb = b.vals[static_cast<std::size_t>(ia + 1)];
      const double c = b.vals.back();
      for (int i = 0; i < 1000; ++i) {
        const std::uint64_t t = 2 * static_cast<std::uint64_t>(i) + 1;
        const double x = static_cast<double>(t) / 2000.0;
        const double v = b.at_midpoint(i, 1000);
        const auto c1 = static_cast<std::int64_t>(
            fixed_scaled_floor(t * static_cast<std::uint64_t>(q), F) / 2000);
        const double v1 = b.vals[static_cast<std::size_t>(c1)] * (c / a);
        auto c2 = static_cast<std::int64_t>(
            (fixed_scaled_floor((2000 - t) * static_cast<std::uint64_t>(q), F) +
             t * static_cast<std::uint64_t>(q)) /
            2000);
        c2 = std::min(c2, q - 1);
        const double v2 =
            (b.vals[static_cast<std::size_t>(c2)] - bb) * c / (c - bb);
        os << fmt17(x) << ',' << fmt17(v) << ',' << fmt17(v - v1) << ','
           << fmt17(v - v2) << '\n';
      }
    });
    manifest["n"] = cfg.n;
    manifest["report"] = {{"a", rep.a},           {"b", rep.b},
                          {"c", rep.c},           {"sup_beta1", rep.sup_beta1},
                          {"l1_beta1", rep.l1_beta1},
                          {"sup_beta2", rep.sup_beta2},
                          {"l1_beta2", rep.l1_beta2}};
    manifest["rotation"] = detail::rotation_json(rot);
  } else if (fig == "fig5") {
    // the period-L residue-class family f_{Ln}, f_{Ln+1}, ..., default the
    // period-3 rotation sqrt(41)-6 at n = 3
    const rotation_number rot = cfg.alpha == "golden"
                                    ? presets::sqrt41_minus_6()
                                    : cfg.make_rotation();
    const auto obs = cfg.make_observable();
    const int blk = cfg.n == 24 ? 3 : cfg.n;
    const auto L = static_cast<int>(rot.cf_period().size());
    manifest["L"] = L;
    manifest["block"] = blk;
    auto arr = nlohmann::json::array();
    for (int r = 0; r < L; ++r) {
      const int idx = L * blk + r;
      const auto f = build_f_n(obs, rot, idx, cfg.index_offset);
      const std::string name = "fig5_f_" + std::to_string(idx) + ".csv";
      detail::emit(add_file(name),
                   [&](std::ostream& os) { write_step_csv(os, f); });
      arr.push_back({{"n", idx}, {"q_n", f.q}});
    }
    manifest["family"] = arr;
    manifest["rotation"] = detail::rotation_json(rot);
  } else if (fig == "fig6") {
    const auto rot = cfg.make_rotation();
    const observable hk = observable::hecke(true);
    const int n = cfg.n == 24 ? 20 : cfg.n;
    const auto conv = rot.convergents(n, cfg.index_offset);
    const auto K = to_int64_checked(conv.back().q);
    const auto tr = birkhoff_irrational(hk, rot, K);
    detail::emit(add_file("fig6_hecke_trace.csv"),
                 [&](std::ostream& os) { write_trace_csv(os, tr); });
    for (int hn : {16, 17}) {
      const auto h = build_h_n(hk, rot, hn, cfg.index_offset);
      detail::emit(add_file("fig6_h_" + std::to_string(hn) + ".csv"),
                   [&](std::ostream& os) { write_step_csv(os, h); });
      manifest["h_one_minus_n" + std::to_string(hn)] = h.at_one_minus();
    }
    manifest["K"] = K;
    manifest["parabola_coefficient"] = hecke_parabola_coeff;
    manifest["rotation"] = detail::rotation_json(rot);
  } else if (fig == "fig7") {
    const auto rot = cfg.make_rotation();
    const int n0 = cfg.n == 24 ? 15 : cfg.n;
    for (int n : {n0, n0 + 1}) {
      const auto F = build_F_n(rot, n, cfg.index_offset);
      detail::emit(add_file("fig7_F_" + std::to_string(n) + ".csv"),
                   [&](std::ostream& os) { write_complex_csv(os, F); });
      const auto B = build_B_n(F, rot);
      detail::emit(add_file("fig7_B_" + std::to_string(n) + ".csv"),
                   [&](std::ostream& os) { write_complex_csv(os, B); });
    }
    manifest["n"] = {n0, n0 + 1};
    manifest["rotation"] = detail::rotation_json(rot);
  } else {
    throw std::invalid_argument(
        "unknown figure id (expected fig1..fig7): " + fig);
  }

  const auto mpath = dir / (fig + "_manifest.json");
  files.push_back(mpath.string());
  detail::write_file(mpath, manifest.dump(2) + "\n");
  return files;
}

}  // namespace birkhoff
