#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "penrose/penrose.hpp"

namespace {

std::vector<double> parse_schedule(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    penrose::require(end != tok.c_str() && *end == '\0' && v > 0, penrose::ErrorKind::InvalidInput,
                     "bad height '" + tok + "' in --tschedule");
    out.push_back(v);
  }
  penrose::require(!out.empty(), penrose::ErrorKind::InvalidInput, "empty --tschedule");
  return out;
}

std::string output_dir(const std::string& flag) {
  if (const char* env = std::getenv("PENROSE_OUT_DIR"); env && *env) return env;
  return flag;
}

int exit_code(const penrose::Error& e) {
  return e.kind() == penrose::ErrorKind::BoundViolation ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Penrose-like energy bounds for spherically symmetric initial data"};
  app.require_subcommand(1);

  penrose::ScenarioConfig cfg;
  std::string mode = "jang_conformal", tschedule = "5,10,20,40", out = "penrose_out", format = "json";
  std::string refinement = "geometric";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", cfg.scenario, "schwarzschild | flat | dec_bump | tabulated")
        ->check(CLI::IsMember(penrose::scenario_names()));
    sub->add_option("--mass", cfg.mass, "mass parameter m (inner radius for flat)")->check(CLI::PositiveNumber);
    sub->add_option("--grid", cfg.grid.intervals, "number of radial intervals")->check(CLI::Range(16, 1 << 24));
    sub->add_option("--rmax", cfg.grid.r_max, "outer radius")->check(CLI::PositiveNumber);
    sub->add_option("--refinement", refinement, "uniform | geometric")
        ->check(CLI::IsMember({"uniform", "geometric"}));
    sub->add_option("--table", cfg.table, "profile table for the tabulated scenario");
    sub->add_option("--bump-energy", cfg.bump.energy, "dec_bump added energy / m");
    sub->add_option("--bump-amplitude", cfg.bump.amplitude, "dec_bump peak of kt * m");
  };

  auto* run = app.add_subcommand("run", "run the full pipeline and emit a report");
  add_common(run);
  run->add_option("--tschedule", tschedule, "comma-separated Jang heights T");
  run->add_option("--mode", mode, "herzlich | jang_conformal")
      ->check(CLI::IsMember({"herzlich", "jang_conformal"}));
  run->add_option("--out", out, "output directory (PENROSE_OUT_DIR overrides)");
  run->add_option("--format", format, "json | text")->check(CLI::IsMember({"json", "text"}));

  auto* study = app.add_subcommand("study", "grid convergence study");
  add_common(study);
  std::vector<std::size_t> resolutions{1024, 2048, 4096};
  study->add_option("--resolutions", resolutions, "interval counts, doubling");

  app.add_subcommand("list", "list registered scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.grid.refinement =
        refinement == "uniform" ? penrose::Refinement::Uniform : penrose::Refinement::Geometric;
    if (app.got_subcommand("list")) {
      for (const auto& s : penrose::scenario_names()) std::cout << s << '\n';
      return 0;
    }
    if (app.got_subcommand("study")) {
      const auto rows = penrose::convergence_study(cfg, resolutions);
      std::cout << penrose::to_json(rows).dump(2) << '\n';
      return 0;
    }
    cfg.mode = penrose::parse_mode(mode);
    cfg.heights = parse_schedule(tschedule);
    const auto report = penrose::run(cfg);
    const auto files = penrose::emit(report, output_dir(out), penrose::parse_format(format));
    if (format == "text") std::cout << penrose::to_text(report);
    for (const auto& f : files) std::cerr << "wrote " << f << '\n';
    return 0;
  } catch (const penrose::Error& e) {
    std::cerr << "error [" << penrose::to_string(e.kind()) << "]"
              << (e.stage().empty() ? "" : " in " + e.stage()) << ": " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
