#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "penrose/harness.hpp"

using namespace penrose;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("penrose_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Harness, HerzlichModeReproducesEquality) {
  ScenarioConfig cfg;
  cfg.mode = Mode::Herzlich;
  const auto r = run(cfg);
  ASSERT_TRUE(r.sigma_herzlich.has_value());
  EXPECT_NEAR(*r.sigma_herzlich, 1.0, 1e-3);
  EXPECT_NEAR(*r.herzlich_bound_value, 1.0, 1e-3);
  EXPECT_FALSE(r.jang.has_value());
}

TEST(Harness, JangConformalModeHasPositiveMargins) {
  const auto r = run(ScenarioConfig{});
  ASSERT_TRUE(r.inequality.has_value());
  EXPECT_GT(r.inequality->margin, 0.0);
  for (const auto& c : r.checks)
    if (c.asserted) EXPECT_TRUE(c.holds()) << c.name;
}

TEST(Harness, FlatSurfacesNoHorizonFromRadialCore) {
  ScenarioConfig cfg;
  cfg.scenario = "flat";
  try {
    run(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoHorizon);
    EXPECT_EQ(e.stage(), "radial_core");
  }
}

TEST(Harness, UnknownScenarioIsInvalidInput) {
  ScenarioConfig cfg;
  cfg.scenario = "kerr";
  try {
    run(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
}

TEST(Harness, RunsAreDeterministic) {
  ScenarioConfig cfg;
  cfg.scenario = "dec_bump";
  const auto a = to_json(run(cfg), false), b = to_json(run(cfg), false);
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a["fingerprint"], b["fingerprint"]);
  ScenarioConfig other = cfg;
  other.mass = 2.0;
  EXPECT_NE(fingerprint(other), fingerprint(cfg));
}

TEST(Harness, ReportCarriesMarginsAndTolerances) {
  const auto j = to_json(run(ScenarioConfig{}));
  ASSERT_TRUE(j.contains("checks"));
  for (const auto& c : j["checks"]) {
    EXPECT_TRUE(c.contains("margin"));
    EXPECT_TRUE(c.contains("tolerance"));
  }
  EXPECT_EQ(j["inequality"]["per_T"].size(), 4u);
  EXPECT_TRUE(j.contains("timings_seconds"));
}

TEST(Harness, EmitWritesSeriesAndRoundTripsProfile) {
  ScenarioConfig cfg;
  const auto r = run(cfg);
  const auto dir = scratch("emit");
  const auto files = emit(r, dir.string(), Format::Json);
  EXPECT_TRUE(fs::exists(dir / "report.json"));
  const auto sig = read_table((dir / "sigma_T.dat").string());
  EXPECT_EQ(sig.rows.size(), cfg.heights.size());
  EXPECT_EQ(read_table((dir / "boundary_area.dat").string()).rows.size(), cfg.heights.size());
  EXPECT_TRUE(fs::exists(dir / "u_T.dat"));
  EXPECT_TRUE(fs::exists(dir / "jang.dat"));

  ScenarioConfig tab = cfg;
  tab.scenario = "tabulated";
  tab.table = (dir / "profile.dat").string();
  const auto back = build_data(tab);
  for (std::size_t i = 0; i < back.samples.size(); ++i) ASSERT_EQ(back.samples[i].rho, r.data.samples[i].rho);
  const auto rt = run(tab);
  EXPECT_NEAR(rt.energy.value, r.energy.value, 1e-12);
  EXPECT_GT(rt.inequality->margin, 0.0);
  fs::remove_all(dir);
}

TEST(Harness, TextFormatIsEmitted) {
  ScenarioConfig cfg;
  cfg.mode = Mode::Herzlich;
  const auto dir = scratch("text");
  emit(run(cfg), dir.string(), Format::Text);
  std::ifstream is(dir / "report.txt");
  std::string first;
  std::getline(is, first);
  EXPECT_NE(first.find("schwarzschild"), std::string::npos);
  fs::remove_all(dir);
}

TEST(ConvergenceStudy, SchwarzschildOrders) {
  const auto rows = convergence_study(ScenarioConfig{}, {1024, 2048, 4096});
  bool saw_identity = false;
  for (const auto& r : rows) {
    EXPECT_EQ(r.values.size(), 3u) << r.quantity;
    if (r.quantity == "identity_residual") {
      saw_identity = true;
      EXPECT_TRUE(r.in_band) << (r.order ? *r.order : -1);
    }
    if (!r.skipped && r.quantity != "identity_residual") EXPECT_TRUE(r.in_band) << r.quantity;
  }
  EXPECT_TRUE(saw_identity);
}

TEST(ConvergenceStudy, RequiresDoublingResolutions) {
  EXPECT_THROW(convergence_study(ScenarioConfig{}, {1024, 2048}), Error);
  EXPECT_THROW(convergence_study(ScenarioConfig{}, {1000, 2048, 4096}), Error);
}

TEST(Modes, ParsingRoundTrips) {
  EXPECT_EQ(parse_mode(to_string(Mode::Herzlich)), Mode::Herzlich);
  EXPECT_THROW(parse_mode("no_such_mode"), Error);
  EXPECT_THROW(parse_format("xml"), Error);
}
