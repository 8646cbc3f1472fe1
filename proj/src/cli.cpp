// Copyright 2026 The hyperloc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hyperloc/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <vector>

#include "hyperloc/error.hpp"
#include "hyperloc/forms.hpp"
#include "hyperloc/oracle.hpp"
#include "hyperloc/parallel.hpp"
#include "hyperloc/principal.hpp"
#include "hyperloc/surface.hpp"

namespace hyperloc::cli {

namespace {

using nlohmann::json;

// Errors that reflect bad input rather than a failed computation.
bool is_input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::syntax:
    case ErrorCode::unknown_identifier:
    case ErrorCode::domain:
    case ErrorCode::regularity:
    case ErrorCode::invalid_argument:
      return true;
    default:
      return false;
  }
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

double parse_double(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::invalid_argument, "malformed " + what + " '" + text + "'");
  }
  return v;
}

Vec3 parse_triple(const std::string& text) {
  Vec3 v;
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t comma = text.find(',', start);
    if ((i < 2) != (comma != std::string::npos)) {
      throw Error(ErrorCode::invalid_argument, "seed must be three comma-separated numbers");
    }
    v[i] = parse_double(text.substr(start, comma - start), "seed component");
    start = comma + 1;
  }
  return v;
}

// No negative zeros in the output.
double clean(double v) { return v == 0.0 ? 0.0 : v; }

json to_json(const Vec3& v) { return json::array({clean(v[0]), clean(v[1]), clean(v[2])}); }
json to_json(const Vec4& v) {
  return json::array({clean(v[0]), clean(v[1]), clean(v[2]), clean(v[3])});
}
json to_json(const Sym3& s) {
  json m = json::array();
  for (int i = 0; i < 3; ++i) {
    m.push_back(json::array({clean(s(i, 0)), clean(s(i, 1)), clean(s(i, 2))}));
  }
  return m;
}

// ---------------------------------------------------------------- analyze

json analyze(const HypersurfaceDef& surface, const RunConfig& cfg) {
  const Jet jet = evaluate_jet(surface, cfg.seed, 2);
  const FormState f = fundamental_forms(jet);
  const CubicCoefficients c = characteristic_coefficients(f);
  const auto roots = solve_principal_curvatures(c);
  const auto cls = classify_point(f, roots, {cfg.trace.umbilic_tol, 1e-8});
  json r;
  r["point"] = to_json(cfg.seed);
  r["x"] = to_json(jet.value());
  r["g"] = to_json(f.g);
  r["h"] = to_json(f.h);
  r["N"] = to_json(f.N);
  r["K1"] = c.K1;
  r["K2"] = c.K2;
  r["K3"] = c.K3;
  r["roots"] = json::array({roots[0], roots[1], roots[2]});
  r["classification"] = std::string(to_string(cls.point));
  if (cls.point == PointClass::umbilic) {
    r["umbilic_root"] = (roots[0] + roots[1] + roots[2]) / 3.0;
  }
  json branches = json::array();
  for (int i = 0; i < 3; ++i) {
    json b;
    b["k_n"] = roots[i];
    b["class"] = std::string(to_string(cls.branch[i]));
    b["rank"] = cls.rank[i];
    b["direction"] = cls.branch[i] == BranchClass::simple
                         ? to_json(principal_direction(f, roots[i]))
                         : json(nullptr);
    branches.push_back(b);
  }
  r["branches"] = branches;
  return r;
}

// ------------------------------------------------------------ trace output

void write_trace_csv(std::ostream& os, const Trace& t) {
  os << "s,u1,u2,u3,x1,x2,x3,x4,du1,du2,du3,kn,stop_reason\n";
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    const CurveSample& c = t.samples[i];
    os << number(c.s);
    for (double v : c.u.c) os << ',' << number(v);
    for (double v : c.x.c) os << ',' << number(v);
    for (double v : c.du.c) os << ',' << number(v);
    os << ',' << number(c.k_n) << ',';
    if (i + 1 == t.samples.size()) os << to_string(t.stop);
    os << '\n';
  }
}

json trace_json(const Trace& t) {
  json samples = json::array();
  for (const CurveSample& c : t.samples) {
    samples.push_back({{"s", c.s},
                       {"u", to_json(c.u)},
                       {"x", to_json(c.x)},
                       {"du", to_json(c.du)},
                       {"kn", c.k_n}});
  }
  return {{"samples", samples}, {"stop_reason", std::string(to_string(t.stop))}};
}

// Columns of the curvature table, with the order each needs.
struct Column {
  const char* name;
  int order;
  std::function<double(const CurvatureState&)> get;
};

const std::vector<Column>& curvature_columns() {
  static const std::vector<Column> cols = {
      {"kg1", 1, [](const CurvatureState& s) { return s.k_g1; }},
      {"kg2", 2, [](const CurvatureState& s) { return s.k_g2; }},
      {"k1", 1, [](const CurvatureState& s) { return s.k1; }},
      {"k1p", 2, [](const CurvatureState& s) { return s.k1p; }},
      {"k2", 2, [](const CurvatureState& s) { return s.k2; }},
      {"k3", 3, [](const CurvatureState& s) { return s.k3; }},
  };
  return cols;
}

void write_curvatures_csv(std::ostream& os, const Trace& t,
                          const std::vector<CurvatureState>& st) {
  os << "s,kn,kg1,kg2,k1,k1p,k2,k3,flags\n";
  for (std::size_t i = 0; i < st.size(); ++i) {
    os << number(t.samples[i].s) << ',' << number(st[i].kn[0]);
    for (const Column& c : curvature_columns()) {
      os << ',';
      if (st[i].order >= c.order) os << number(c.get(st[i]));
    }
    os << ',' << to_string(st[i].flag) << '\n';
  }
}

json curvatures_json(const Trace& t, const std::vector<CurvatureState>& st) {
  json rows = json::array();
  for (std::size_t i = 0; i < st.size(); ++i) {
    json r;
    r["s"] = t.samples[i].s;
    r["kn"] = st[i].kn[0];
    for (const Column& c : curvature_columns()) {
      r[c.name] = st[i].order >= c.order ? json(clean(c.get(st[i]))) : json(nullptr);
    }
    r["flags"] = std::string(to_string(st[i].flag));
    rows.push_back(r);
  }
  return {{"stations", rows}, {"stop_reason", std::string(to_string(t.stop))}};
}

// --------------------------------------------------------------- validate

struct Check {
  std::string name;
  double value = 0.0;
  std::size_t count = 0;

  void add(double v) {
    if (std::isnan(v)) v = INFINITY;
    value = std::max(value, v);
    ++count;
  }
};

double gram_error(const std::array<Vec4, 4>& f) {
  double e = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      e = std::max(e, std::fabs(dot(f[i], f[j]) - (i == j ? 1.0 : 0.0)));
    }
  }
  return e;
}

json validate(const HypersurfaceDef& surface, const RunConfig& cfg, bool& passed) {
  const Trace t = trace(surface, cfg.seed, cfg.trace);
  const auto st = evaluate_curvatures(surface, t.samples, cfg.frenet);
  const double h = cfg.trace.step;

  // Samples on the uniform grid i * step.
  std::size_t n = 0;
  while (n < t.samples.size() && t.samples[n].s == static_cast<double>(n) * h) ++n;

  std::vector<Vec4> x(n), normal(n), tangent(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Jet jet = evaluate_jet(surface, t.samples[i].u, 1);
    x[i] = t.samples[i].x;
    normal[i] = unit_normal(jet);
    const Vec3& d = t.samples[i].du;
    tangent[i] = d[0] * jet.d1(0) + d[1] * jet.d1(1) + d[2] * jet.d1(2);
  }

  std::map<std::string, Check> checks;
  for (const auto& [name, tol] : cfg.checks) checks[name].name = name;

  for (std::size_t i = 2; i + 2 < n; ++i) {
    const Vec4 dn = (normal[i - 2] - 8.0 * normal[i - 1] + 8.0 * normal[i + 1] -
                     normal[i + 2]) /
                    (12.0 * h);
    checks["rodrigues"].add(norm(dn + t.samples[i].k_n * tangent[i]));
  }
  for (const CurvatureState& s : st) {
    checks["residual"].add(s.max_residual);
    if (s.order >= 1 && s.flag != StationFlag::geodesic_degenerate) {
      const double k1sq = s.k1 * s.k1;
      checks["identity"].add(
          std::fabs(k1sq - (s.kn[0] * s.kn[0] + s.k_g1 * s.k_g1)) / k1sq);
      checks["alpha2"].add(std::fabs(norm(s.alpha[2]) - s.k1) / s.k1);
      checks["orthonormality"].add(
          gram_error({s.frame.T, s.frame.E, s.frame.D, s.frame.N}));
    }
    if (s.order >= 2 && s.flag != StationFlag::planar_degenerate) {
      checks["orthonormality"].add(gram_error({s.t, s.n, s.b1, s.b2}));
    }
  }
  if (n >= 9) {
    const FdFrenetReport fd = fd_frenet(x, h);
    for (const FdStation& f : fd.stations) {
      const CurvatureState& s = st[f.index];
      checks["unit_speed"].add(std::fabs(norm(f.d[0]) - 1.0));
      if (s.order >= 1) checks["fd_k1"].add(std::fabs(s.k1 - f.k1) / f.k1);
      if (s.order >= 2 && s.flag != StationFlag::planar_degenerate && f.k2) {
        checks["fd_k2"].add(std::fabs(s.k2 - *f.k2) / std::fabs(*f.k2));
      }
      if (s.order >= 3 && f.k3) {
        checks["fd_k3"].add(std::fabs(s.k3 - *f.k3) / std::fabs(*f.k3));
      }
    }
  }
  if (n >= 5) {
    std::vector<DarbouxSample> ds(n);
    for (std::size_t i = 0; i < n; ++i) {
      ds[i].T = tangent[i];
      ds[i].N = normal[i];
      ds[i].k_n = t.samples[i].k_n;
      if (st[i].order >= 2) {
        ds[i].E = st[i].frame.E;
        ds[i].D = st[i].frame.D;
        ds[i].k_g1 = st[i].k_g1;
        ds[i].k_g2 = st[i].k_g2;
        ds[i].has_frame = true;
      }
    }
    const DarbouxResiduals dr = darboux_residuals(ds, h);
    for (int r = 0; r < 4; ++r) {
      if (dr.count[r] > 0) {
        Check& c = checks["darboux"];
        c.value = std::max(c.value, dr.row[r]);
        c.count += dr.count[r];
      }
    }
  }

  json list = json::array();
  passed = true;
  for (const auto& [name, c] : checks) {
    const auto it = cfg.checks.find(name);
    const double tol = it == cfg.checks.end() ? 0.0 : it->second;
    const bool ok = c.value <= tol;
    passed = passed && ok;
    list.push_back({{"name", name},
                    {"value", c.value},
                    {"tolerance", tol},
                    {"count", c.count},
                    {"pass", ok}});
  }
  json r;
  r["stations"] = st.size();
  r["uniform_samples"] = n;
  r["stop_reason"] = std::string(to_string(t.stop));
  r["checks"] = list;
  r["pass"] = passed;
  return r;
}

std::string failed_names(const json& report) {
  std::string names;
  for (const json& c : report["checks"]) {
    if (!c["pass"].get<bool>()) {
      if (!names.empty()) names += ", ";
      names += c["name"].get<std::string>();
    }
  }
  return names;
}

}  // namespace

std::map<std::string, double> default_checks() {
  return {{"rodrigues", 1e-4},  {"unit_speed", 1e-6}, {"identity", 1e-10},
          {"alpha2", 1e-8},     {"residual", 1e-9},   {"orthonormality", 1e-8},
          {"fd_k1", 1e-4},      {"fd_k2", 1e-3},      {"fd_k3", 1e-2},
          {"darboux", 1e-3}};
}

void apply_tolerance(RunConfig& cfg, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw Error(ErrorCode::invalid_argument,
                "tolerance must look like NAME=VALUE, got '" + assignment + "'");
  }
  const std::string name = assignment.substr(0, eq);
  const double v = parse_double(assignment.substr(eq + 1), "tolerance " + name);
  if (!(v >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "tolerance " + name + " must be >= 0");
  }
  if (name == "umbilic") {
    cfg.trace.umbilic_tol = v;
  } else if (name == "repeated_root") {
    cfg.frenet.repeated_root = v;
  } else if (name == "geodesic") {
    cfg.frenet.geodesic = v;
  } else if (name == "planar") {
    cfg.frenet.planar = v;
  } else if (name == "pivot") {
    cfg.frenet.pivot = v;
  } else if (cfg.checks.count(name) != 0) {
    cfg.checks[name] = v;
  } else {
    throw Error(ErrorCode::invalid_argument, "unknown tolerance '" + name + "'");
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lines of curvature and their Frenet curvatures on hypersurfaces in E4",
               "hyperloc"};
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.checks = default_checks();
  std::string seed_text, sign = "+", format = "csv", boundary = "stop";
  std::vector<std::string> tolerances;

  auto add_common = [&](CLI::App* sub, bool tracing) {
    sub->add_option("--surface", cfg.surface_path, "surface definition file")->required();
    sub->add_option("--seed", seed_text, "parameter point a,b,c")->required();
    sub->add_option("--out", cfg.out_path, "write output here instead of stdout");
    sub->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--tol", tolerances, "NAME=VALUE override (repeatable)");
    if (!tracing) return;
    sub->add_option("--branch", cfg.trace.branch, "root index at the seed, ascending")
        ->check(CLI::Range(0, 2));
    sub->add_option("--sign", sign, "initial direction sign, + or -")
        ->check(CLI::IsMember({"+", "-"}));
    sub->add_option("--step", cfg.trace.step, "arc length per step")
        ->check(CLI::PositiveNumber);
    sub->add_option("--length", cfg.trace.max_length, "total arc length")
        ->check(CLI::PositiveNumber);
    sub->add_option("--boundary", boundary, "stop or clamp at the domain boundary")
        ->check(CLI::IsMember({"stop", "clamp"}));
  };
  add_common(app.add_subcommand("analyze", "principal curvatures at a point"), false);
  add_common(app.add_subcommand("trace", "trace a line of curvature"), true);
  add_common(app.add_subcommand("curvatures", "Frenet curvatures along a trace"), true);
  add_common(app.add_subcommand("validate", "cross-check against the oracles"), true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: usage_error: " << msg << '\n';
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  if (name == "trace") cfg.command = Command::trace;
  if (name == "curvatures") cfg.command = Command::curvatures;
  if (name == "validate") cfg.command = Command::validate;
  cfg.format = format == "json" ? Format::json : Format::csv;
  cfg.trace.initial_sign = sign == "-" ? -1 : 1;
  cfg.trace.boundary_policy = boundary == "clamp" ? BoundaryPolicy::clamp : BoundaryPolicy::stop;

  try {
    cfg.seed = parse_triple(seed_text);
    for (const std::string& t : tolerances) apply_tolerance(cfg, t);
    if (cfg.trace.max_length < cfg.trace.step) {
      throw Error(ErrorCode::invalid_argument, "--length must be at least --step");
    }
    const HypersurfaceDef surface = load_surface(cfg.surface_path);

    std::ostringstream buf;
    bool passed = true;
    switch (cfg.command) {
      case Command::analyze:
        buf << analyze(surface, cfg).dump(2) << '\n';
        break;
      case Command::trace: {
        const Trace t = trace(surface, cfg.seed, cfg.trace);
        if (cfg.format == Format::json) {
          buf << trace_json(t).dump(2) << '\n';
        } else {
          write_trace_csv(buf, t);
        }
        break;
      }
      case Command::curvatures: {
        const Trace t = trace(surface, cfg.seed, cfg.trace);
        const auto st = evaluate_curvatures(surface, t.samples, cfg.frenet);
        if (cfg.format == Format::json) {
          buf << curvatures_json(t, st).dump(2) << '\n';
        } else {
          write_curvatures_csv(buf, t, st);
        }
        break;
      }
      case Command::validate: {
        const json report = validate(surface, cfg, passed);
        buf << report.dump(2) << '\n';
        if (!passed) {
          err << "error: validation_failed: " << failed_names(report) << '\n';
        }
        break;
      }
    }
    if (cfg.out_path.empty()) {
      out << buf.str();
    } else {
      std::ofstream file(cfg.out_path, std::ios::binary);
      if (!file) {
        throw Error(ErrorCode::invalid_argument, "cannot open " + cfg.out_path);
      }
      file << buf.str();
    }
    return passed ? 0 : 1;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return is_input_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hyperloc::cli
