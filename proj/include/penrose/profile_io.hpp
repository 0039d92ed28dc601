#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "penrose/errors.hpp"
#include "penrose/initial_data.hpp"
#include "penrose/radial_grid.hpp"

namespace penrose {

/// Columnar text table: `# key: value` header lines, one line of column
/// names, then whitespace-separated rows. Numbers are written with 17
/// significant digits so that re-reading is bit-exact.
struct Table {
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::optional<std::string> meta(const std::string& key) const {
    for (const auto& [k, v] : header)
      if (k == key) return v;
    return std::nullopt;
  }

  std::optional<std::vector<double>> column(const std::string& name) const {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j] != name) continue;
      std::vector<double> out;
      out.reserve(rows.size());
      for (const auto& row : rows) out.push_back(row[j]);
      return out;
    }
    return std::nullopt;
  }
};

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_table(std::ostream& os, const Table& t) {
  for (const auto& [k, v] : t.header) os << "# " << k << ": " << v << '\n';
  for (std::size_t j = 0; j < t.columns.size(); ++j) os << (j ? " " : "") << t.columns[j];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << format_number(row[j]);
    os << '\n';
  }
}

inline void write_table(const std::string& path, const Table& t) {
  std::ofstream os(path);
  require(static_cast<bool>(os), ErrorKind::Io, "cannot open " + path + " for writing");
  write_table(os, t);
  require(static_cast<bool>(os), ErrorKind::Io, "write failed: " + path);
}

inline Table read_table(std::istream& is) {
  Table t;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
      };
      t.header.emplace_back(trim(line.substr(1, colon - 1)), trim(line.substr(colon + 1)));
      continue;
    }
    std::istringstream ls(line);
    if (t.columns.empty()) {
      for (std::string name; ls >> name;) t.columns.push_back(name);
      continue;
    }
    std::vector<double> row;
    for (std::string tok; ls >> tok;) {
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      require(end && *end == '\0', ErrorKind::InvalidInput, "malformed number '" + tok + "'");
      row.push_back(v);
    }
    require(row.size() == t.columns.size(), ErrorKind::InvalidInput,
            "row has " + std::to_string(row.size()) + " values, expected " +
                std::to_string(t.columns.size()));
    t.rows.push_back(std::move(row));
  }
  require(!t.columns.empty(), ErrorKind::InvalidInput, "table has no column header");
  return t;
}

inline Table read_table(const std::string& path) {
  std::ifstream is(path);
  require(static_cast<bool>(is), ErrorKind::Io, "cannot open " + path);
  return read_table(is);
}

/// Profile table of initial data. Columns: x (offset from the inner radius),
/// r, a, da, d2a, rho, drho, d2rho, kr, dkr, kt, dkt. Geometric units, G = c = 1.
inline Table profile_table(const SphericalInitialData& d) {
  Table t;
  t.header = {{"name", d.name},
              {"units", "geometric (G = c = 1)"},
              {"origin", format_number(d.grid.origin())},
              {"refinement", std::string(to_string(d.grid.refinement()))},
              {"intervals", std::to_string(d.grid.intervals())},
              {"r_max", format_number(d.grid.r_max())}};
  if (d.mass_hint) t.header.emplace_back("mass_hint", format_number(*d.mass_hint));
  t.columns = {"x", "r", "a", "da", "d2a", "rho", "drho", "d2rho", "kr", "dkr", "kt", "dkt"};
  for (std::size_t i = 0; i < d.samples.size(); ++i) {
    const auto& p = d.samples[i];
    t.rows.push_back({d.grid.offset(i), p.r, p.a, p.da, p.d2a, p.rho, p.drho, p.d2rho, p.kr,
                      p.dkr, p.kt, p.dkt});
  }
  return t;
}

/// Ingests a profile table. The offset column is optional (falls back to
/// r - origin), as are all derivative and curvature columns.
inline SphericalInitialData profile_from_table(const Table& t) {
  const auto r = t.column("r");
  require(r.has_value() && r->size() >= 2, ErrorKind::InvalidInput, "profile table needs column r");
  const double origin = t.meta("origin") ? std::stod(*t.meta("origin")) : r->front();
  std::vector<double> x;
  if (auto xc = t.column("x")) x = *xc;
  else
    for (double v : *r) x.push_back(v - origin);
  const auto refinement = t.meta("refinement").value_or("geometric") == "uniform"
                              ? Refinement::Uniform
                              : Refinement::Geometric;
  RadialGrid grid(origin, x, refinement);
  ProfileColumns c;
  auto get = [&](const char* name, std::vector<double>& dst, bool required) {
    if (auto col = t.column(name)) dst = *col;
    else require(!required, ErrorKind::InvalidInput, std::string("profile table needs column ") + name);
  };
  get("a", c.a, true);
  get("da", c.da, false);
  get("d2a", c.d2a, false);
  get("rho", c.rho, true);
  get("drho", c.drho, false);
  get("d2rho", c.d2rho, false);
  get("kr", c.kr, false);
  get("dkr", c.dkr, false);
  get("kt", c.kt, false);
  get("dkt", c.dkt, false);
  std::optional<double> mass;
  if (auto m = t.meta("mass_hint")) mass = std::stod(*m);
  return from_samples(t.meta("name").value_or("tabulated"), std::move(grid), std::move(c), mass);
}

inline SphericalInitialData read_profile(const std::string& path) {
  return profile_from_table(read_table(path));
}

}  // namespace penrose
