// birkhoff -- Birkhoff sums over quadratic-irrational rotations, their
// renormalization step functions, limiting-distribution statistics, and
// complex-product forms.  Emits plot-ready CSV plus JSON manifests.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "birkhoff/csv_io.hpp"
#include "birkhoff/experiments.hpp"
#include "birkhoff/figures.hpp"

namespace fs = std::filesystem;
using namespace birkhoff;

namespace {

circle_point x0_point(double x0) {
  if (x0 < 0.0 || x0 >= 1.0) throw CLI::ValidationError("--x0 must be in [0,1)");
  const double scaled = std::ldexp(x0, 64);
  const auto hi = static_cast<std::uint64_t>(scaled);
  const auto lo = static_cast<std::uint64_t>(
      std::ldexp(scaled - static_cast<double>(hi), 64));
  return {(static_cast<uint128>(hi) << 64) | lo};
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream os(dir / name);
  if (!os) throw std::runtime_error("cannot open " + (dir / name).string());
  std::printf("  wrote %s\n", (dir / name).string().c_str());
  return os;
}

void write_manifest(const fs::path& dir, const std::string& name,
                    const nlohmann::json& j) {
  auto os = open_out(dir, name);
  os << j.dump(2) << "\n";
}

void emit_step(const experiment_config& cfg, const fs::path& dir,
               const std::string& stem, const step_function& f) {
  if (cfg.format == "json") {
    nlohmann::json j{{"q", f.q}, {"vals", f.vals}};
    auto os = open_out(dir, stem + ".json");
    os << j.dump() << "\n";
  } else {
    auto os = open_out(dir, stem + ".csv");
    write_step_csv(os, f);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Birkhoff sums of log-singular observables over golden-mean and "
      "general quadratic-irrational rotations: raw traces, renormalization "
      "step functions f_n / h_n / beta_n, the empirical distribution of "
      "S_k/log k, and complex-product forms."};
  app.require_subcommand(1);

  experiment_config cfg;
  app.add_option("--alpha", cfg.alpha,
                 "rotation number: golden | silver | sqrt41minus6 | "
                 "sqrt3minus1over2 | a,b,c,d for (a+b sqrt(d))/c")
      ->capture_default_str();
  app.add_option("--obs", cfg.obs,
                 "observable: logsin | hecke | hecke-raw | trigpoly:c0,c1,...")
      ->capture_default_str();
  app.add_option("--n", cfg.n, "convergent depth n")->capture_default_str();
  app.add_option("--K", cfg.K, "trace length (default: q_n)");
  app.add_option("--x0", cfg.x0, "initial orbit point in [0,1)")
      ->capture_default_str();
  app.add_option("--bins", cfg.bins, "histogram bins")->capture_default_str();
  app.add_option("--range", [&cfg](const std::vector<std::string>& v) {
        if (v.size() != 2) return false;
        cfg.range_lo = std::stod(v[0]);
        cfg.range_hi = std::stod(v[1]);
        return true;
      }, "histogram range lo hi")->expected(2);
  app.add_option("--normalization", cfg.normalization,
                 "ratio denominator: logk | logqn")
      ->check(CLI::IsMember({"logk", "logqn"}))
      ->capture_default_str();
  app.add_option("--format", cfg.format, "output format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out_dir, "output directory")
      ->capture_default_str();
  app.add_flag("--deep", cfg.deep, "raise figure depths to the deep presets");
  app.add_option("--index-offset", cfg.index_offset,
                 "shift of the convergent index convention (-1 prepends 0/1)")
      ->capture_default_str();

  auto* sums = app.add_subcommand(
      "sums", "Birkhoff sum trace S_k with the S_k/log k column (the data "
              "behind figure 1)");
  auto* renorm = app.add_subcommand(
      "renorm", "step functions f_n, h_n, the rescaled trace s_n, and the "
                "h-from-f series (figures 1, 3, 5, 6 machinery)");
  auto* beta = app.add_subcommand(
      "beta", "beta_n = f_n(alpha x) + alpha^2 f_n(x), its self-similarity "
              "report, and gamma (figures 3-4)");
  auto* dist = app.add_subcommand(
      "distribution", "histogram of S_k/log k (the data behind figure 2)");
  auto* fourier = app.add_subcommand(
      "fourier", "Fourier coefficients of the empirical ratio distribution");
  auto* cplx = app.add_subcommand(
      "complex", "complex products: F_n and B_n images (figure 7) and the "
                 "|P_{q_n-1}| = q_n table");
  auto* polygon = app.add_subcommand(
      "polygon", "regular-polygon diagonal products (the |P| identity)");
  auto* figure = app.add_subcommand(
      "figure", "emit the full data set behind one reference figure");
  std::string fig_id;
  figure->add_option("id", fig_id, "fig1..fig7")->required();
  auto* oracle = app.add_subcommand(
      "oracle", "run the high-precision oracle pass and write provenance.json");
  auto* regression = app.add_subcommand(
      "regression", "evaluate the golden-value regression store against the "
                    "provenance file (nonzero exit on any failure)");

  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path dir = cfg.out_dir;
    if (sums->parsed()) {
      const auto rot = cfg.make_rotation();
      const auto obs = cfg.make_observable();
      const auto K =
          cfg.K > 0 ? cfg.K
                    : to_int64_checked(
                          rot.convergents(cfg.n, cfg.index_offset).back().q);
      const auto tr = birkhoff_irrational(obs, rot, K, x0_point(cfg.x0));
      if (cfg.format == "json") {
        nlohmann::json j{{"meta",
                          {{"rotation", tr.meta.rotation},
                           {"observable", tr.meta.observable},
                           {"x0", tr.meta.x0},
                           {"K", tr.meta.K}}},
                         {"values", tr.values}};
        auto os = open_out(dir, "trace.json");
        os << j.dump() << "\n";
      } else {
        auto os = open_out(dir, "trace.csv");
        write_trace_csv(os, tr);
      }
      const auto sub =
          subsequence_at_convergents(obs, rot, cfg.n, cfg.index_offset,
                                     x0_point(cfg.x0));
      auto os = open_out(dir, "envelopes.csv");
      write_convergent_sums_csv(os, sub);
    } else if (renorm->parsed()) {
      const auto rot = cfg.make_rotation();
      const auto obs = cfg.make_observable();
      const auto f = build_f_n(obs, rot, cfg.n, cfg.index_offset);
      emit_step(cfg, dir, "f_n", f);
      const auto h = build_h_n(obs, rot, cfg.n, cfg.index_offset);
      emit_step(cfg, dir, "h_n", h);
      // rescaled ratio trace s_n(x) = S_[x q_n](alpha)/log([x q_n])
      step_function s;
      s.q = h.q;
      s.vals.assign(static_cast<std::size_t>(h.q), 0.0);
      {
        const auto base =
            detail::rational_prefix(obs, rot.convergents(cfg.n, cfg.index_offset).back(),
                                    h.q - 1);
        for (std::int64_t k = 2; k < s.q; ++k)
          s.vals[static_cast<std::size_t>(k)] =
              (h.vals[static_cast<std::size_t>(k)] +
               base[static_cast<std::size_t>(k)]) /
              std::log(static_cast<double>(k));
      }
      emit_step(cfg, dir, "s_n", s);
      // both index conventions of the h-from-f series
      const auto est_n = estimate_h_from_f(f, rot, 40);
      emit_step(cfg, dir, "h_from_f_n", est_n.fn);
      if (cfg.n > 1) {
        const auto fm1 = build_f_n(obs, rot, cfg.n - 1, cfg.index_offset)
                             .resampled(f.q);
        emit_step(cfg, dir, "h_from_f_nminus1",
                  estimate_h_from_f(fm1, rot, 40).fn);
      }
      write_manifest(dir, "renorm_manifest.json",
                     {{"config", cfg.to_json()},
                      {"q_n", f.q},
                      {"h_one_minus", h.at_one_minus()},
                      {"h_series_tail_bound", est_n.tail_bound},
                      {"exceptional_mass_j1",
                       cfg.n >= 3 ? exceptional_mass(obs, rot, cfg.n - 2, 1)
                                  : 0.0},
                      {"predicted_Sqn_limit",
                       predict_Sqn_limit(h.at_one_minus())}});
    } else if (beta->parsed()) {
      const auto rot = cfg.make_rotation();
      const auto obs = cfg.make_observable();
      const auto f = build_f_n(obs, rot, cfg.n, cfg.index_offset);
      const auto b = build_beta_n(f, rot);
      emit_step(cfg, dir, "beta_n", b);
      const auto rep = beta_selfsimilarity_report(b, rot);
      const auto h = build_h_n(obs, rot, cfg.n, cfg.index_offset);
      const auto gf = build_gamma(h, b, rot, 40);
      emit_step(cfg, dir, "gamma_direct", gf.direct);
      emit_step(cfg, dir, "gamma_series", gf.series);
      write_manifest(
          dir, "beta_manifest.json",
          {{"config", cfg.to_json()},
           {"beta_one_minus", b.at_one_minus()},
           {"monotonicity_violation_fraction",
            monotonicity_violation_fraction(b, 1e-3)},
           {"selfsimilarity",
            {{"a", rep.a}, {"b", rep.b}, {"c", rep.c},
             {"sup_beta1", rep.sup_beta1}, {"l1_beta1", rep.l1_beta1},
             {"sup_beta2", rep.sup_beta2}, {"l1_beta2", rep.l1_beta2}}}});
    } else if (dist->parsed()) {
      run_figure("fig2", cfg);
    } else if (fourier->parsed()) {
      const auto rot = cfg.make_rotation();
      const auto obs = cfg.make_observable();
      const auto fc = fourier_of_ratios(obs, rot, cfg.n, 32,
                                        cfg.normalization == "logqn",
                                        cfg.index_offset, x0_point(cfg.x0));
      auto os = open_out(dir, "fourier.csv");
      write_fourier_csv(os, fc);
      write_manifest(dir, "fourier_manifest.json",
                     {{"config", cfg.to_json()}, {"m_max", fc.m_max}});
    } else if (cplx->parsed()) {
      const auto rot = cfg.make_rotation();
      const int n0 = cfg.n;
      for (int n : {n0, n0 + 1}) {
        const auto F = build_F_n(rot, n, cfg.index_offset);
        auto osf = open_out(dir, "F_" + std::to_string(n) + ".csv");
        write_complex_csv(osf, F);
        auto osb = open_out(dir, "B_" + std::to_string(n) + ".csv");
        write_complex_csv(osb, build_B_n(F, rot));
      }
      // |P_{q_n - 1}(p_n/q_n)| = q_n table
      auto os = open_out(dir, "P_table.csv");
      os << "n,P_abs,q_n\n";
      for (const auto& c : rot.convergents(cfg.n, cfg.index_offset)) {
        const auto q = to_int64_checked(c.q);
        if (q < 2) continue;
        const auto P = product_P(to_int64_checked(c.p), q, q - 1);
        os << c.n << ',' << fmt17(std::exp(P.log_abs)) << ',' << q << '\n';
      }
    } else if (polygon->parsed()) {
      auto os = open_out(dir, "polygon.csv");
      os << "q,product,relative_error\n";
      for (const auto& c : cfg.make_rotation().convergents(cfg.n,
                                                           cfg.index_offset)) {
        const auto q = to_int64_checked(c.q);
        if (q < 2) continue;
        const double v = polygon_diagonal_product(q);
        os << q << ',' << fmt17(v) << ','
           << fmt17(v / static_cast<double>(q) - 1.0) << '\n';
      }
    } else if (figure->parsed()) {
      for (const auto& f : run_figure(fig_id, cfg))
        std::printf("  wrote %s\n", f.c_str());
    } else if (oracle->parsed()) {
      const auto path = dir / "provenance.json";
      run_oracle(path);
      std::printf("  wrote %s\n", path.string().c_str());
    } else if (regression->parsed()) {
      const auto rep = run_regression(dir / "provenance.json");
      for (const auto& r : rep.records)
        std::printf("[%s] %-36s actual=%.10g expected=%.10g tol=%.3g (%s)\n",
                    r.pass ? "PASS" : "FAIL", r.rec.id.c_str(), r.actual,
                    r.rec.expected, r.rec.tolerance,
                    r.rec.source == record_source::exact      ? "exact"
                    : r.rec.source == record_source::reported ? "reported"
                                                              : "calibrated");
      std::printf("counts: %d exact, %d reported, %d calibrated; %s\n",
                  rep.count_exact, rep.count_reported, rep.count_calibrated,
                  rep.all_pass ? "all records pass" : "FAILURES present");
      {
        auto os = open_out(dir, "regression_report.json");
        os << rep.to_json().dump(2) << "\n";
      }
      return rep.all_pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
