#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "birkhoff/experiments.hpp"
#include "birkhoff/figures.hpp"

using namespace birkhoff;
namespace fs = std::filesystem;

namespace {
fs::path temp_dir(const std::string& tag) {
  const auto dir = fs::temp_directory_path() / ("birkhoff_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}
std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}
}  // namespace

TEST_CASE("config round-trips through its serialized form") {
  experiment_config c;
  c.alpha = "-1,1,2,2";
  c.obs = "trigpoly:2,-2";
  c.n = 9;
  c.K = 1234;
  c.x0 = 0.5;
  c.bins = 64;
  c.range_lo = -1.0;
  c.range_hi = 3.0;
  c.normalization = "logqn";
  c.format = "json";
  c.out_dir = "elsewhere";
  c.deep = true;
  c.index_offset = -1;
  const auto back = experiment_config::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
}

TEST_CASE("presets resolve to their exact surds") {
  experiment_config c;
  c.alpha = "golden";
  const auto rg = c.make_rotation();
  CHECK(rg.surd_a() == -1); CHECK(rg.surd_b() == 1);
  CHECK(rg.surd_c() == 2);  CHECK(rg.surd_d() == 5);
  c.alpha = "sqrt41minus6";
  CHECK(c.make_rotation().surd_d() == 41);
  c.alpha = "-1,1,2,3";
  CHECK(c.make_rotation().value() ==
        Catch::Approx(presets::sqrt3_minus_1_over_2().value()));
  c.alpha = "nonsense";
  CHECK_THROWS_AS(c.make_rotation(), std::invalid_argument);
}

TEST_CASE("observable specs parse") {
  experiment_config c;
  c.obs = "logsin";
  CHECK(c.make_observable().kind() == observable_kind::log_sin);
  c.obs = "hecke";
  CHECK(c.make_observable().hecke_zero_mean());
  c.obs = "hecke-raw";
  CHECK_FALSE(c.make_observable().hecke_zero_mean());
  c.obs = "trigpoly:2,-2";
  CHECK(c.make_observable().cos_coeffs() == std::vector<double>({2.0, -2.0}));
  c.obs = "what";
  CHECK_THROWS_AS(c.make_observable(), std::invalid_argument);
}

TEST_CASE("every golden record carries a source tag and a unique id") {
  const auto table = golden_table();
  std::set<std::string> ids;
  for (const auto& r : table) {
    CHECK(ids.insert(r.id).second);
    CHECK(!r.note.empty());
  }
  int calibrated = 0;
  for (const auto& r : table)
    if (r.source == record_source::calibrated) ++calibrated;
  CHECK(calibrated > 10);
}

TEST_CASE("oracle run locks the provenance file; regression evaluates green") {
  const auto dir = temp_dir("oracle");
  const auto prov = dir / "provenance.json";
  run_oracle(prov);
  REQUIRE(fs::exists(prov));
  const auto rep = run_regression(prov);
  for (const auto& r : rep.records) {
    INFO(r.rec.id << " actual=" << r.actual << " expected=" << r.rec.expected
                  << " tol=" << r.rec.tolerance);
    CHECK(r.pass);
  }
  CHECK(rep.all_pass);
  CHECK(rep.count_exact > 0);
  CHECK(rep.count_reported > 0);
  CHECK(rep.count_calibrated > 0);
  const auto j = rep.to_json();
  CHECK(j["counts"]["calibrated"] == rep.count_calibrated);
}

TEST_CASE("regression refuses to run without provenance") {
  const auto dir = temp_dir("noprov");
  CHECK_THROWS_AS(run_regression(dir / "absent.json"), missing_provenance);
  // an empty oracle suite writes an empty file, which blocks the suite
  const auto prov = dir / "empty.json";
  const std::set<std::string> none;
  run_oracle(prov, &none);
  REQUIRE(fs::exists(prov));
  CHECK_THROWS_AS(run_regression(prov), missing_provenance);
}

TEST_CASE("a tampered provenance value fails its record by id") {
  const auto dir = temp_dir("tamper");
  const auto prov = dir / "provenance.json";
  run_oracle(prov);
  nlohmann::json j;
  {
    std::ifstream is(prov);
    is >> j;
  }
  j["records"]["renorm.beta_mono.n24"] = 0.5;  // far from the observed value
  {
    std::ofstream os(prov);
    os << j.dump(2);
  }
  const auto rep = run_regression(prov);
  CHECK_FALSE(rep.all_pass);
  for (const auto& r : rep.records) {
    if (r.rec.id == "renorm.beta_mono.n24")
      CHECK_FALSE(r.pass);
    else
      CHECK(r.pass);
  }
}

TEST_CASE("figure runs emit byte-identical files for identical manifests") {
  const auto dir = temp_dir("fig3");
  experiment_config c;
  c.n = 10;
  c.out_dir = (dir / "a").string();
  const auto files1 = run_figure("fig3", c);
  REQUIRE(files1.size() == 3);
  c.out_dir = (dir / "b").string();
  const auto files2 = run_figure("fig3", c);
  for (std::size_t i = 0; i + 1 < files1.size(); ++i)  // CSVs (manifest embeds cfg)
    CHECK(slurp(files1[i]) == slurp(files2[i]));
  CHECK(slurp(files1[0]).rfind("x_left,value", 0) == 0);
}

TEST_CASE("fig1 emits the trace and both envelope subsequences") {
  const auto dir = temp_dir("fig1");
  experiment_config c;
  c.n = 8;
  c.out_dir = dir.string();
  const auto files = run_figure("fig1", c);
  REQUIRE(files.size() == 3);
  const auto trace = slurp(files[0]);
  CHECK(trace.find("k,S_k,S_k_over_log_k") != std::string::npos);
  const auto env = slurp(files[1]);
  CHECK(env.rfind("n,q_n,S_qn,S_qn_minus_1", 0) == 0);
  // q_8 = 34 rows + header
  CHECK(std::count(trace.begin(), trace.end(), '\n') == 34 + 2);
}

TEST_CASE("fig5 emits one file per residue class of the CF period") {
  const auto dir = temp_dir("fig5");
  experiment_config c;
  c.alpha = "sqrt41minus6";
  c.n = 1;  // family f_3, f_4, f_5
  c.out_dir = dir.string();
  const auto files = run_figure("fig5", c);
  REQUIRE(files.size() == 4);  // three classes + manifest
  nlohmann::json manifest;
  std::ifstream(files.back()) >> manifest;
  CHECK(manifest["L"] == 3);
  CHECK(manifest["family"].size() == 3);
}

TEST_CASE("unknown figure ids are rejected with a clear message") {
  experiment_config c;
  CHECK_THROWS_AS(run_figure("fig9", c), std::invalid_argument);
}

TEST_CASE("fmt17 prints full round-trip precision") {
  CHECK(fmt17(1.0 / 3.0) == "0.33333333333333331");
  CHECK(fmt17(2.0) == "2");
}
