#include "lwfr/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "lwfr/errors.hpp"

namespace lwfr {

namespace {

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

struct Parser {
  std::map<std::string, Entry> kv; // "section.key" -> entry
  std::vector<std::string> errors;

  void fail(int line, const std::string& msg) {
    errors.push_back("line " + std::to_string(line) + ": " + msg);
  }

  Entry* find(const std::string& sec, const std::string& key) {
    auto it = kv.find(sec + "." + key);
    if (it == kv.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  bool get_double(const std::string& sec, const std::string& key, double& out) {
    Entry* e = find(sec, key);
    if (!e) return false;
    std::istringstream ss(e->value);
    double v;
    if (!(ss >> v)) {
      fail(e->line, "expected a number for '" + key + "', got '" + e->value + "'");
      return false;
    }
    out = v;
    return true;
  }

  bool get_int(const std::string& sec, const std::string& key, long& out) {
    Entry* e = find(sec, key);
    if (!e) return false;
    std::istringstream ss(e->value);
    long v;
    char rest;
    if (!(ss >> v) || (ss >> rest)) {
      fail(e->line, "expected an integer for '" + key + "', got '" + e->value + "'");
      return false;
    }
    out = v;
    return true;
  }

  bool get_string(const std::string& sec, const std::string& key,
                  std::string& out) {
    Entry* e = find(sec, key);
    if (!e) return false;
    out = e->value;
    return true;
  }

  bool get_bool(const std::string& sec, const std::string& key, bool& out) {
    Entry* e = find(sec, key);
    if (!e) return false;
    if (e->value == "on" || e->value == "true" || e->value == "1") out = true;
    else if (e->value == "off" || e->value == "false" || e->value == "0") out = false;
    else {
      fail(e->line, "expected on/off for '" + key + "', got '" + e->value + "'");
      return false;
    }
    return true;
  }

  template <std::size_t K>
  bool get_tuple(const std::string& sec, const std::string& key,
                 std::array<double, K>& out, std::size_t want = K) {
    Entry* e = find(sec, key);
    if (!e) return false;
    std::istringstream ss(e->value);
    std::size_t got = 0;
    double v;
    while (got < want && (ss >> v)) out[got++] = v;
    std::string rest;
    if (got != want || (ss >> rest)) {
      fail(e->line, "expected " + std::to_string(want) + " numbers for '" + key + "'");
      return false;
    }
    return true;
  }

  int line_of(const std::string& sec, const std::string& key) {
    auto it = kv.find(sec + "." + key);
    return it == kv.end() ? 0 : it->second.line;
  }
};

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  return std::string(s.substr(b, e - b + 1));
}

const char* side_names[4] = {"left", "right", "bottom", "top"};

} // namespace

RunConfig parse_config(std::string_view text) {
  Parser p;
  static const std::vector<std::string> known_sections = {
      "equation", "mesh", "time", "boundary", "output"};

  // --- tokenize into section.key entries ---
  {
    std::string section;
    std::vector<std::string> seen_sections;
    int line = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      ++line;
      std::string raw = trim(text.substr(pos, nl - pos));
      pos = nl + 1;
      if (nl == text.size() && raw.empty()) break;
      if (raw.empty() || raw[0] == '#') continue;
      if (raw.front() == '[') {
        if (raw.back() != ']') {
          p.fail(line, "malformed section header '" + raw + "'");
          continue;
        }
        section = trim(raw.substr(1, raw.size() - 2));
        bool known = false;
        for (const auto& s : known_sections) known |= (s == section);
        if (!known) {
          p.fail(line, "unknown section [" + section + "]");
          section.clear();
          continue;
        }
        for (const auto& s : seen_sections)
          if (s == section) p.fail(line, "duplicate section [" + section + "]");
        seen_sections.push_back(section);
        continue;
      }
      std::size_t eq = raw.find('=');
      if (eq == std::string::npos) {
        p.fail(line, "expected 'key = value', got '" + raw + "'");
        continue;
      }
      if (section.empty()) {
        p.fail(line, "key outside of any section");
        continue;
      }
      std::string key = trim(raw.substr(0, eq));
      std::string val = trim(raw.substr(eq + 1));
      std::size_t cmt = val.find('#');
      if (cmt != std::string::npos) val = trim(val.substr(0, cmt));
      const std::string full = section + "." + key;
      if (p.kv.count(full))
        p.fail(line, "duplicate key '" + key + "' in [" + section + "]");
      else
        p.kv[full] = Entry{val, line, false};
    }
  }

  RunConfig cfg;

  // --- [equation] ---
  std::string sys;
  if (p.get_string("equation", "system", sys)) {
    if (sys == "advdiff") cfg.system = SystemKind::advdiff;
    else if (sys == "navier_stokes") cfg.system = SystemKind::navier_stokes;
    else p.fail(p.line_of("equation", "system"), "unknown system '" + sys + "'");
  } else {
    p.errors.push_back("missing required key 'system' in [equation]");
  }
  {
    std::array<double, 2> a{cfg.advdiff.ax, cfg.advdiff.ay};
    if (p.get_tuple<2>("equation", "advection", a)) {
      cfg.advdiff.ax = a[0];
      cfg.advdiff.ay = a[1];
    }
    p.get_double("equation", "nu", cfg.advdiff.nu);
    if (cfg.advdiff.nu < 0.0)
      p.fail(p.line_of("equation", "nu"), "nu must be >= 0");
    p.get_double("equation", "gamma", cfg.ns.gamma);
    if (!(cfg.ns.gamma > 1.0))
      p.fail(p.line_of("equation", "gamma"), "gamma must be > 1");
    p.get_double("equation", "mu", cfg.ns.mu);
    if (cfg.ns.mu < 0.0) p.fail(p.line_of("equation", "mu"), "mu must be >= 0");
    p.get_double("equation", "prandtl", cfg.ns.prandtl);
    if (!(cfg.ns.prandtl > 0.0))
      p.fail(p.line_of("equation", "prandtl"), "prandtl must be > 0");
    std::string src;
    if (p.get_string("equation", "source", src)) {
      if (src == "none") cfg.manufactured_source = false;
      else if (src == "manufactured") {
        cfg.manufactured_source = true;
        if (cfg.system != SystemKind::navier_stokes)
          p.fail(p.line_of("equation", "source"),
                 "manufactured source requires system = navier_stokes");
      } else {
        p.fail(p.line_of("equation", "source"), "unknown source '" + src + "'");
      }
    }
    p.get_double("equation", "mms_c", cfg.mms_c);
    p.get_double("equation", "mms_A", cfg.mms_A);
    std::string init;
    if (p.get_string("equation", "initial", init)) {
      if (init == "exact") cfg.initial = InitialKind::exact;
      else if (init == "constant") cfg.initial = InitialKind::constant;
      else p.fail(p.line_of("equation", "initial"), "unknown initial '" + init + "'");
    }
    bool have_state = p.get_tuple<4>("equation", "state", cfg.initial_state,
                                     cfg.system == SystemKind::navier_stokes ? 4 : 1);
    if (cfg.initial == InitialKind::constant && !have_state)
      p.errors.push_back("initial = constant requires 'state' in [equation]");
    if (cfg.system == SystemKind::navier_stokes &&
        cfg.initial == InitialKind::exact && !cfg.manufactured_source)
      p.errors.push_back(
          "navier_stokes with initial = exact requires source = manufactured");
  }

  // --- [mesh] ---
  {
    std::string kind;
    if (p.get_string("mesh", "kind", kind)) {
      if (kind == "cartesian") cfg.mesh_kind = MeshKind::cartesian;
      else if (kind == "warped") cfg.mesh_kind = MeshKind::warped;
      else p.fail(p.line_of("mesh", "kind"), "unknown mesh kind '" + kind + "'");
    }
    long v;
    if (p.get_int("mesh", "nx", v)) cfg.nx = static_cast<int>(v);
    else p.errors.push_back("missing required key 'nx' in [mesh]");
    cfg.ny = cfg.nx;
    if (p.get_int("mesh", "ny", v)) cfg.ny = static_cast<int>(v);
    if (cfg.nx < 1) p.fail(p.line_of("mesh", "nx"), "nx must be >= 1");
    if (cfg.ny < 1) p.fail(p.line_of("mesh", "ny"), "ny must be >= 1");
    if (p.get_int("mesh", "degree", v)) cfg.degree = static_cast<int>(v);
    if (cfg.degree < 1 || cfg.degree > 4)
      p.fail(p.line_of("mesh", "degree"), "degree must be between 1 and 4");
    p.get_double("mesh", "xmin", cfg.domain.xmin);
    p.get_double("mesh", "xmax", cfg.domain.xmax);
    p.get_double("mesh", "ymin", cfg.domain.ymin);
    p.get_double("mesh", "ymax", cfg.domain.ymax);
    p.get_double("mesh", "warp", cfg.warp);
  }

  // --- [time] ---
  {
    std::string mode;
    if (p.get_string("time", "mode", mode)) {
      if (mode == "adaptive") cfg.mode = TimeMode::adaptive;
      else if (mode == "fixed_cfl") cfg.mode = TimeMode::fixed_cfl;
      else p.fail(p.line_of("time", "mode"), "unknown time mode '" + mode + "'");
    }
    if (!p.get_double("time", "t_final", cfg.t_final))
      p.errors.push_back("missing required key 't_final' in [time]");
    if (cfg.t_final < 0.0)
      p.fail(p.line_of("time", "t_final"), "t_final must be >= 0");
    p.get_double("time", "abs_tol", cfg.abs_tol);
    p.get_double("time", "rel_tol", cfg.rel_tol);
    if (!(cfg.abs_tol > 0.0))
      p.fail(p.line_of("time", "abs_tol"), "abs_tol must be > 0");
    if (!(cfg.rel_tol > 0.0))
      p.fail(p.line_of("time", "rel_tol"), "rel_tol must be > 0");
    p.get_tuple<3>("time", "beta", cfg.beta);
    p.get_bool("time", "limiter", cfg.limiter);
    p.get_double("time", "cfl_a", cfg.cfl_a);
    p.get_double("time", "cfl_v", cfg.cfl_v);
    if (!(cfg.cfl_a > 0.0)) p.fail(p.line_of("time", "cfl_a"), "cfl_a must be > 0");
    if (!(cfg.cfl_v > 0.0)) p.fail(p.line_of("time", "cfl_v"), "cfl_v must be > 0");
    p.get_int("time", "max_steps", cfg.max_steps);
    if (cfg.max_steps < 0)
      p.fail(p.line_of("time", "max_steps"), "max_steps must be >= 0");
    p.get_double("time", "dt_max", cfg.dt_max);
    if (cfg.dt_max < 0.0)
      p.fail(p.line_of("time", "dt_max"), "dt_max must be >= 0");
  }

  // --- [boundary] ---
  {
    std::string kind;
    auto parse_kind = [&](const std::string& key, BoundaryKind& out) {
      std::string s;
      if (!p.get_string("boundary", key, s)) return false;
      if (!boundary_kind_from_string(s, out)) {
        p.fail(p.line_of("boundary", key), "unknown boundary kind '" + s + "'");
        return false;
      }
      return true;
    };
    BoundaryKind all;
    if (parse_kind("all", all))
      for (auto& tag : cfg.bc.side) tag.kind = all;
    for (int s = 0; s < 4; ++s) {
      BoundaryKind k;
      if (parse_kind(side_names[s], k)) cfg.bc.side[s].kind = k;
    }
    std::array<double, 2> wv{0.0, 0.0};
    const bool have_wv = p.get_tuple<2>("boundary", "wall_velocity", wv);
    double wt = 1.0;
    const bool have_wt = p.get_double("boundary", "wall_temperature", wt);
    std::array<double, 4> inflow{1.0, 0.0, 0.0, 1.0};
    p.get_tuple<4>("boundary", "inflow_state", inflow);
    for (auto& tag : cfg.bc.side) {
      tag.inflow_primitive = inflow;
      if (have_wt) tag.wall_temperature = wt;
      if (tag.kind == BoundaryKind::moving_wall_isothermal && have_wv)
        tag.wall_velocity = wv;
    }
    // periodic sides must be paired
    const bool pl = cfg.bc.side[0].kind == BoundaryKind::periodic;
    const bool pr = cfg.bc.side[1].kind == BoundaryKind::periodic;
    const bool pb = cfg.bc.side[2].kind == BoundaryKind::periodic;
    const bool pt = cfg.bc.side[3].kind == BoundaryKind::periodic;
    if (pl != pr)
      p.errors.push_back("periodic boundaries must pair left with right");
    if (pb != pt)
      p.errors.push_back("periodic boundaries must pair bottom with top");
    // system-specific restrictions
    for (int s = 0; s < 4; ++s) {
      const BoundaryKind k = cfg.bc.side[s].kind;
      if (cfg.system == SystemKind::advdiff &&
          (k == BoundaryKind::noslip_isothermal ||
           k == BoundaryKind::noslip_adiabatic ||
           k == BoundaryKind::moving_wall_isothermal))
        p.errors.push_back(std::string("wall boundary on '") + side_names[s] +
                           "' requires system = navier_stokes");
      if (k == BoundaryKind::dirichlet_exact &&
          cfg.system == SystemKind::navier_stokes && !cfg.manufactured_source &&
          cfg.initial != InitialKind::constant)
        p.errors.push_back(
            std::string("dirichlet_exact on '") + side_names[s] +
            "' needs an exact solution (manufactured source or constant state)");
    }
  }

  // --- [output] ---
  {
    p.get_string("output", "directory", cfg.out_dir);
    long v;
    if (p.get_int("output", "dump_interval", v)) cfg.dump_interval = static_cast<int>(v);
    if (cfg.dump_interval < 0)
      p.fail(p.line_of("output", "dump_interval"), "dump_interval must be >= 0");
    p.get_bool("output", "log_steps", cfg.log_steps);
  }

  // --- unread keys are unknown ---
  for (const auto& [full, e] : p.kv)
    if (!e.used)
      p.fail(e.line, "unknown key '" + full.substr(full.find('.') + 1) +
                         "' in [" + full.substr(0, full.find('.')) + "]");

  if (!p.errors.empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : p.errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

} // namespace lwfr
