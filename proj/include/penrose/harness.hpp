#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "penrose/conformal.hpp"
#include "penrose/errors.hpp"
#include "penrose/inequality.hpp"
#include "penrose/jang.hpp"
#include "penrose/profile_io.hpp"
#include "penrose/radial_core.hpp"
#include "penrose/scenarios.hpp"

namespace penrose {

inline constexpr const char* kVersion = "1.0.0";

enum class Mode { Herzlich, JangConformal };

inline std::string to_string(Mode m) { return m == Mode::Herzlich ? "herzlich" : "jang_conformal"; }

inline Mode parse_mode(const std::string& s) {
  if (s == "herzlich") return Mode::Herzlich;
  if (s == "jang_conformal") return Mode::JangConformal;
  throw Error(ErrorKind::InvalidInput, "unknown mode '" + s + "'");
}

struct ScenarioConfig {
  std::string scenario = "schwarzschild";
  double mass = 1.0;
  GridSpec grid;
  std::vector<double> heights{5.0, 10.0, 20.0, 40.0};
  Mode mode = Mode::JangConformal;
  BumpParams bump;
  std::string table;  ///< profile file for the tabulated scenario
};

inline std::vector<std::string> scenario_names() {
  return {"schwarzschild", "flat", "dec_bump", "tabulated"};
}

inline nlohmann::json to_json(const ScenarioConfig& c) {
  nlohmann::json j;
  j["scenario"] = c.scenario;
  j["mass"] = c.mass;
  j["grid"] = {{"intervals", c.grid.intervals},
               {"r_max", c.grid.r_max},
               {"refinement", std::string(to_string(c.grid.refinement))},
               {"first_offset", c.grid.first_offset}};
  j["heights"] = c.heights;
  j["mode"] = to_string(c.mode);
  if (c.scenario == "dec_bump")
    j["bump"] = {{"r1", c.bump.r1},
                 {"r2", c.bump.r2},
                 {"energy", c.bump.energy},
                 {"amplitude", c.bump.amplitude},
                 {"nu", c.bump.nu}};
  if (c.scenario == "tabulated") j["table"] = c.table;
  return j;
}

/// Hash of the canonical configuration and library version.
inline std::string fingerprint(const ScenarioConfig& c) {
  const std::string canon = to_json(c).dump() + "|" + kVersion;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016zx", std::hash<std::string>{}(canon));
  return buf;
}

inline SphericalInitialData build_data(const ScenarioConfig& c) {
  if (c.scenario == "schwarzschild") return schwarzschild_isotropic(c.mass, c.grid);
  if (c.scenario == "flat") return flat_space(c.mass, c.grid);
  if (c.scenario == "dec_bump") return dec_bump(c.mass, c.bump, c.grid);
  if (c.scenario == "tabulated") return read_profile(c.table);
  throw Error(ErrorKind::InvalidInput, "unknown scenario '" + c.scenario + "'");
}

/// An asserted (or reported) inequality with its margin and tolerance.
struct Check {
  std::string name;
  double value = 0, bound = 0, tolerance = 0;
  bool asserted = true;
  double margin() const { return value - bound; }
  bool holds() const { return margin() >= -tolerance; }
};

struct RunReport {
  ScenarioConfig config;
  std::string fingerprint;
  SphericalInitialData data;
  ConstraintDensities densities;
  DecResult dec;
  AdmEnergy energy;
  HorizonRecord horizon;
  double max_abs_R = 0;
  double constraint_identity_residual = 0;

  std::optional<double> sigma_herzlich, herzlich_bound_value;
  CapacityEntry background;

  std::optional<JangSolution> jang;
  StartupSweep sweep;
  JangCurvature curvature;
  double jang_residual = 0;
  std::vector<HeightDefect> defects;
  std::optional<double> defect_slope;
  std::optional<InequalityReport> inequality;

  std::vector<Check> checks;
  std::map<std::string, double> timings;
};

namespace detail {

template <class Fn>
auto in_stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw e.with_stage(name);
  }
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Least-squares slope of log|y| against log x.
inline std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(std::abs(y[i]) > 0)) return std::nullopt;
    const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (x.size() < 2 || den <= 0) return std::nullopt;
  return (n * sxy - sx * sy) / den;
}

}  // namespace detail

inline std::optional<double> defect_decay_slope(const std::vector<HeightDefect>& d) {
  std::vector<double> T, y;
  for (const auto& s : d) {
    T.push_back(s.T);
    y.push_back(s.defect);
  }
  return detail::loglog_slope(T, y);
}

/// radial_core -> jang_solver -> conformal_energy. Errors carry the stage name.
inline RunReport run(const ScenarioConfig& cfg) {
  using clock = std::chrono::steady_clock;
  RunReport rep;
  rep.config = cfg;
  rep.fingerprint = fingerprint(cfg);
  const auto t_all = clock::now();

  auto t0 = clock::now();
  detail::in_stage("radial_core", [&] {
    rep.data = build_data(cfg);
    validate(rep.data);
    rep.densities = constraint_densities(rep.data);
    for (std::size_t i = 0; i < rep.data.samples.size(); ++i) {
      const auto& p = rep.data.samples[i];
      rep.max_abs_R = std::max(rep.max_abs_R, std::abs(rep.densities.R[i]));
      const double trk = p.kr + 2 * p.kt, k2 = p.kr * p.kr + 2 * p.kt * p.kt;
      rep.constraint_identity_residual =
          std::max(rep.constraint_identity_residual,
                   std::abs(16 * pi * rep.densities.mu[i] - rep.densities.R[i] - trk * trk + k2));
    }
    rep.dec = dec_check(rep.densities);
    rep.checks.push_back({"dominant_energy", rep.dec.worst_margin, 0.0, rep.dec.tolerance});
    require(rep.dec.holds, ErrorKind::PreconditionViolation,
            "dominant energy condition fails at r = " + std::to_string(rep.dec.worst_radius));
    rep.energy = adm_energy(rep.data);
    rep.checks.push_back({"adm_estimator_agreement", -std::abs(rep.energy.value - rep.energy.diagnostic),
                          0.0, rep.energy.tolerance});
    rep.horizon = find_outermost_horizon(rep.data, HorizonKind::Future);
    return 0;
  });
  rep.timings["radial_core"] = detail::seconds_since(t0);

  if (cfg.mode == Mode::Herzlich) {
    t0 = clock::now();
    detail::in_stage("conformal_energy", [&] {
      rep.sigma_herzlich = herzlich_sigma(rep.data, rep.horizon);
      rep.herzlich_bound_value = herzlich_bound(*rep.sigma_herzlich, rep.horizon.area);
      rep.background = background_capacity_sigma(rep.data, rep.horizon);
      const double tol = 1e-3 * std::max(rep.energy.value, 1.0);
      rep.checks.push_back({"herzlich_bound", rep.energy.value, *rep.herzlich_bound_value, tol});
      require(rep.energy.value >= *rep.herzlich_bound_value - tol, ErrorKind::BoundViolation,
              "Herzlich bound violated");
      return 0;
    });
    rep.timings["conformal_energy"] = detail::seconds_since(t0);
    rep.timings["total"] = detail::seconds_since(t_all);
    return rep;
  }

  t0 = clock::now();
  detail::in_stage("jang_solver", [&] {
    rep.jang = solve_jang_blowup(rep.data, rep.horizon);
    rep.sweep = startup_sensitivity(rep.data, rep.horizon);
    rep.checks.push_back({"startup_sensitivity", -rep.sweep.max_relative_change, 0.0, 1e-4});
    rep.curvature = jang_scalar_curvature(*rep.jang);
    rep.jang_residual = jang_equation_residual(*rep.jang);
    rep.checks.push_back({"jang_residual", -rep.jang_residual, 0.0, 1e-6});
    rep.checks.push_back({"height_decay", rep.jang->decay_inner, rep.jang->decay_outer, 1e-14});
    for (double T : cfg.heights) rep.defects.push_back(defect_at_height(*rep.jang, T));
    rep.defect_slope = defect_decay_slope(rep.defects);
    return 0;
  });
  rep.timings["jang_solver"] = detail::seconds_since(t0);

  t0 = clock::now();
  detail::in_stage("conformal_energy", [&] {
    rep.inequality = penrose_like_bound(rep.data, *rep.jang, rep.energy.value, cfg.heights);
    const auto& iq = *rep.inequality;
    for (const auto& row : iq.rows) {
      const std::string tag = "T=" + format_number(row.T);
      rep.checks.push_back({"flux_consistency " + tag, -row.flux_consistency, 0.0, iq.tol_consistency});
      rep.checks.push_back({"conformal_energy_nonnegative " + tag, row.E_ghat_Q, 0.0, iq.tol_energy});
      rep.checks.push_back({"energy_bookkeeping " + tag, -std::abs(row.E_ghat_alpha - row.E_ghat_Q),
                            0.0, iq.tol_energy});
      rep.checks.push_back({"conformal_factor_positive " + tag, row.min_u, 0.0, 0.0});
      rep.checks.push_back({"q_lower_bound " + tag, row.lower_bound_lhs, row.lower_bound_rhs, 0.0});
      if (row.bound_rhs) rep.checks.push_back({"energy_bound " + tag, iq.E_g, *row.bound_rhs, iq.tol_energy});
      rep.checks.push_back({"energy_bound_C0 " + tag, iq.E_g, row.bound_rhs_C0, iq.tol_energy, false});
    }
    rep.checks.push_back({"final_margin", iq.margin, 0.0, 0.0});
    rep.checks.push_back({"jang_energy_equals_adm", -std::abs(iq.E_gbar - iq.E_g), 0.0,
                          rep.energy.tolerance});
    return 0;
  });
  rep.timings["conformal_energy"] = detail::seconds_since(t0);
  rep.timings["total"] = detail::seconds_since(t_all);
  return rep;
}

inline nlohmann::json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline nlohmann::json to_json(const RunReport& r, bool include_timings = true) {
  using nlohmann::json;
  json j;
  j["version"] = kVersion;
  j["fingerprint"] = r.fingerprint;
  j["config"] = to_json(r.config);
  j["radial_core"] = {
      {"adm_energy", r.energy.value},
      {"adm_energy_flux_diagnostic", r.energy.diagnostic},
      {"tol_adm", r.energy.tolerance},
      {"adm_momentum", {0.0, 0.0, 0.0}},
      {"horizon",
       {{"r_h", r.horizon.r_h},
        {"kind", to_string(r.horizon.kind)},
        {"area", r.horizon.area},
        {"outermost", r.horizon.outermost}}},
      {"dec", {{"holds", r.dec.holds}, {"worst_margin", r.dec.worst_margin},
               {"worst_radius", r.dec.worst_radius}, {"tol_dec", r.dec.tolerance}}},
      {"max_abs_scalar_curvature", r.max_abs_R},
      {"constraint_identity_residual", r.constraint_identity_residual},
  };
  if (r.sigma_herzlich) {
    j["herzlich"] = {{"sigma_herzlich", *r.sigma_herzlich},
                        {"bound", *r.herzlich_bound_value},
                        {"margin", r.energy.value - *r.herzlich_bound_value},
                        {"sigma_background_capacity", r.background.sigma}};
  }
  if (r.jang) {
    const auto& s = *r.jang;
    json defects = json::array();
    for (const auto& d : r.defects)
      defects.push_back({{"T", d.T}, {"r", d.r}, {"defect", d.defect}, {"area", d.area}});
    j["jang"] = {
        {"sign", s.sign},
        {"start_offset", s.start_x - s.horizon.offset},
        {"height_shift", s.height_shift},
        {"max_f", s.nodes.front().f},
        {"equation_residual", r.jang_residual},
        {"identity_residual_max", r.curvature.max_abs_residual},
        {"decay_outer_sup", s.decay_outer},
        {"decay_inner_sup", s.decay_inner},
        {"startup_sweep", {{"eps", r.sweep.eps}, {"beta", r.sweep.outer_beta},
                           {"f", r.sweep.outer_f}, {"reference_radius", r.sweep.reference_radius},
                           {"max_relative_change", r.sweep.max_relative_change}}},
        {"level_set_defects", defects},
        {"defect_loglog_slope", opt_json(r.defect_slope)},
    };
  }
  if (r.inequality) {
    const auto& iq = *r.inequality;
    json rows = json::array();
    for (const auto& row : iq.rows)
      rows.push_back({{"T", row.T},
                      {"r_T", row.r_T},
                      {"boundary_area", row.boundary_area},
                      {"Hbar", row.Hbar},
                      {"q_N", row.q_N},
                      {"defect", row.defect},
                      {"alpha_T", row.alpha},
                      {"alpha_T_exterior", row.alpha_exterior},
                      {"Q_value", row.Q_value},
                      {"Q_zero", row.Q_zero},
                      {"flux", row.flux},
                      {"flux_consistency", row.flux_consistency},
                      {"min_u", row.min_u},
                      {"u_boundary", row.u_boundary},
                      {"fixed_point_change", row.fixed_point_change},
                      {"E_ghat_T", row.E_ghat_Q},
                      {"E_ghat_T_from_alpha", row.E_ghat_alpha},
                      {"lower_bound_lhs", row.lower_bound_lhs},
                      {"lower_bound_rhs", row.lower_bound_rhs},
                      {"sigma_T", opt_json(row.sigma_T)},
                      {"bound_rhs_T", opt_json(row.bound_rhs)},
                      {"sigma_T_C0", row.sigma_T_C0},
                      {"bound_rhs_T_C0", row.bound_rhs_C0}});
    json cap = json::array();
    for (const auto& c : iq.sigma_capacity)
      cap.push_back({{"eps", c.eps}, {"Ibar", c.Ibar}, {"sigma", c.sigma},
                     {"cylinder_length", c.cylinder_length},
                     {"bound", herzlich_bound(c.sigma, r.horizon.area)}});
    j["inequality"] = {
        {"E_g", iq.E_g},
        {"E_gbar", iq.E_gbar},
        {"C", iq.C},
        {"T_min", opt_json(iq.T_min)},
        {"bound_rhs", iq.bound_rhs},
        {"margin", iq.margin},
        {"tol_energy", iq.tol_energy},
        {"tol_consistency", iq.tol_consistency},
        {"per_T", rows},
        {"sigma_capacity", cap},
        {"sigma_background", iq.sigma_background.sigma},
        {"cylinder_decay_rate", opt_json(iq.cylinder_decay_rate)},
    };
  }
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"value", c.value}, {"bound", c.bound},
                      {"margin", c.margin()}, {"tolerance", c.tolerance},
                      {"asserted", c.asserted}, {"holds", c.holds()}});
  j["checks"] = checks;
  if (include_timings) j["timings_seconds"] = r.timings;
  return j;
}

inline std::string to_text(const RunReport& r) {
  std::string s;
  auto line = [&s](const std::string& k, double v) { s += k + ": " + format_number(v) + "\n"; };
  s += "scenario: " + r.config.scenario + " (" + to_string(r.config.mode) + ")\n";
  s += "fingerprint: " + r.fingerprint + "\n";
  line("adm_energy", r.energy.value);
  line("horizon_radius", r.horizon.r_h);
  line("horizon_area", r.horizon.area);
  if (r.sigma_herzlich) {
    line("sigma_herzlich", *r.sigma_herzlich);
    line("herzlich_bound", *r.herzlich_bound_value);
  }
  if (r.inequality) {
    line("C", r.inequality->C);
    line("bound_rhs", r.inequality->bound_rhs);
    line("margin", r.inequality->margin);
    for (const auto& row : r.inequality->rows) {
      s += "T " + format_number(row.T) + ": Q " + format_number(row.Q_value) + ", flux " +
           format_number(row.flux) + ", E_ghat " + format_number(row.E_ghat_Q) + ", sigma_T " +
           (row.sigma_T ? format_number(*row.sigma_T) : std::string("n/a")) + "\n";
    }
  }
  for (const auto& c : r.checks)
    s += std::string(c.holds() ? "ok   " : "FAIL ") + c.name + " margin " + format_number(c.margin()) +
         " tol " + format_number(c.tolerance) + (c.asserted ? "" : " (reported)") + "\n";
  return s;
}

enum class Format { Json, Text };

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "text") return Format::Text;
  throw Error(ErrorKind::InvalidInput, "unknown format '" + s + "'");
}

/// Writes the report, profile tables and two-column series into `dir`.
inline std::vector<std::string> emit(const RunReport& r, const std::string& dir, Format format) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec, ErrorKind::Io, "cannot create output directory " + dir);
  std::vector<std::string> files;
  auto path = [&](const std::string& name) {
    files.push_back((fs::path(dir) / name).string());
    return files.back();
  };
  {
    const auto p = path(format == Format::Json ? "report.json" : "report.txt");
    std::ofstream os(p);
    require(static_cast<bool>(os), ErrorKind::Io, "cannot write " + p);
    os << (format == Format::Json ? to_json(r).dump(2) + "\n" : to_text(r));
  }
  write_table(path("profile.dat"), profile_table(r.data));
  if (r.jang) {
    Table t;
    t.header = {{"name", r.data.name + " jang"}, {"units", "geometric (G = c = 1)"}};
    t.columns = {"r", "x", "beta", "f", "b", "Rbar_direct", "Rbar_identity", "defect"};
    const auto& s = *r.jang;
    for (std::size_t k = 0; k < s.nodes.size(); ++k) {
      const auto& p = s.nodes[k];
      t.rows.push_back({p.r, p.x, p.beta, p.f, p.b, p.Rbar_direct, s.Rbar_identity[k], p.defect});
    }
    write_table(path("jang.dat"), t);
  }
  if (r.inequality) {
    const auto& iq = *r.inequality;
    Table sig, area, u, cap;
    sig.columns = {"T", "sigma_T", "sigma_T_C0"};
    area.columns = {"T", "boundary_area"};
    for (const auto& row : iq.rows) {
      sig.rows.push_back({row.T, row.sigma_T.value_or(std::nan("")), row.sigma_T_C0});
      area.rows.push_back({row.T, row.boundary_area});
    }
    u.header = {{"T", format_number(iq.rows.back().T)}};
    u.columns = {"r", "u_T"};
    for (std::size_t i = 0; i < iq.u_largest.size(); ++i) u.rows.push_back({iq.u_largest_r[i], iq.u_largest[i]});
    cap.columns = {"eps", "Ibar", "sigma"};
    for (const auto& c : iq.sigma_capacity) cap.rows.push_back({c.eps, c.Ibar, c.sigma});
    write_table(path("sigma_T.dat"), sig);
    write_table(path("boundary_area.dat"), area);
    write_table(path("u_T.dat"), u);
    write_table(path("sigma_capacity.dat"), cap);
  }
  return files;
}

struct ConvergenceRow {
  std::string quantity;
  std::vector<std::size_t> resolutions;
  std::vector<double> values;
  std::optional<double> order;
  bool skipped = false;  ///< differences at rounding level
  bool in_band = false;  ///< order within [1.5, 2.5]
};

/// Repeats the radial and Jang stages at each resolution (ratio 2) and fits
/// the observed order of each quantity.
inline std::vector<ConvergenceRow> convergence_study(ScenarioConfig cfg,
                                                     const std::vector<std::size_t>& resolutions) {
  require(resolutions.size() >= 3, ErrorKind::InvalidInput, "study needs >= 3 resolutions");
  for (std::size_t k = 1; k < resolutions.size(); ++k)
    require(resolutions[k] == 2 * resolutions[k - 1], ErrorKind::InvalidInput,
            "study resolutions must double");
  ConvergenceRow energy{"adm_energy"}, herz{"sigma_herzlich"}, bg{"sigma_background"},
      ident{"identity_residual"};
  bool time_symmetric = true, have_jang = true;
  for (std::size_t n : resolutions) {
    cfg.grid.intervals = n;
    const auto data = detail::in_stage("radial_core", [&] { return build_data(cfg); });
    time_symmetric = data.time_symmetric();
    const auto E = adm_energy(data);
    const auto h = find_outermost_horizon(data, HorizonKind::Future);
    for (auto* row : {&energy, &herz, &bg, &ident}) row->resolutions.push_back(n);
    energy.values.push_back(E.value);
    bg.values.push_back(background_capacity_sigma(data, h).sigma);
    if (time_symmetric) herz.values.push_back(herzlich_sigma(data, h));
    try {
      const auto sol = solve_jang_blowup(data, h);
      ident.values.push_back(jang_scalar_curvature(sol).max_abs_residual);
    } catch (const Error&) {
      have_jang = false;
    }
  }
  auto finish_values = [](ConvergenceRow& row) {
    double scale = 0;
    for (double v : row.values) scale = std::max(scale, std::abs(v));
    row.order = num::fit_order_from_values(row.values, 1e-13 * std::max(scale, 1.0));
    row.skipped = !row.order.has_value();
    row.in_band = row.order && *row.order >= 1.5 && *row.order <= 2.5;
  };
  std::vector<ConvergenceRow> out;
  finish_values(energy);
  out.push_back(energy);
  if (time_symmetric) {
    finish_values(herz);
    out.push_back(herz);
  }
  finish_values(bg);
  out.push_back(bg);
  if (have_jang) {
    ident.order = num::fit_order(ident.values, 1e-14);
    ident.skipped = !ident.order.has_value();
    ident.in_band = ident.order && *ident.order >= 1.5 && *ident.order <= 2.5;
    out.push_back(ident);
  }
  return out;
}

inline nlohmann::json to_json(const std::vector<ConvergenceRow>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows)
    j.push_back({{"quantity", r.quantity}, {"resolutions", r.resolutions}, {"values", r.values},
                 {"order", opt_json(r.order)}, {"skipped", r.skipped}, {"in_band", r.in_band}});
  return j;
}

}  // namespace penrose
