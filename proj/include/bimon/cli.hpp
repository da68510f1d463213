#pragma once

/**
 * @file cli.hpp
 * @brief Config-driven front end: `solve`, `verify` and `plotdata`.
 *
 * Config (JSON):
 *
 *   {
 *     "domain": "disk" | "halfplane",
 *     "u1": "<expression>" | {"file": "<arg,value csv>"},
 *     "u4": "<expression>" | {"file": "<arg,value csv>"},
 *     "method": "explicit" | "pipeline" | "both",          default "explicit"
 *     "quadrature_nodes": 2048,
 *     "grid": {"r": [min, max, n], "theta": n}             disk
 *           | {"x": [min, max, n], "y": [min, max, n]},    half-plane
 *     "a1": 0, "a2": 0,
 *     "output": {"dir": "out", "format": "csv" | "json"},
 *     "verify": true,
 *     "threads": n                                          optional
 *   }
 *
 * Exit codes: 0 ok, 1 verification failed, 2 config or parse error, 3 numeric failure, 4 I/O failure.
 */

#include <bimon/bimon.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace bimon::cli {

using json = nlohmann::json;

enum class MethodChoice { explicit_formula, pipeline, both };
enum class OutputFormat { csv, json };

struct DataSource {
  std::string expression;  // empty when file is set
  std::string file;
};

struct RunConfig {
  DomainTag domain = DomainTag::unit_disk;
  DataSource u1, u4;
  MethodChoice method = MethodChoice::explicit_formula;
  int quadrature_nodes = 2048;
  Grid grid;
  double a1 = 0.0, a2 = 0.0;
  std::string output_dir = "out";
  OutputFormat format = OutputFormat::csv;
  bool verify = true;
  std::optional<unsigned> threads;
  std::filesystem::path base_dir;  // sample files resolve relative to the config

  std::vector<Method> methods() const {
    switch (method) {
    case MethodChoice::explicit_formula: return {Method::explicit_formula};
    case MethodChoice::pipeline: return {Method::pipeline};
    case MethodChoice::both: break;
    }
    return {Method::explicit_formula, Method::pipeline};
  }

  unsigned thread_count() const {
    if (threads) return *threads;
    if (const char* env = std::getenv("BIMON_THREADS")) {
      const int n = std::atoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    }
    return default_thread_count();
  }

  QuadratureSpec spec() const { return default_spec(domain, quadrature_nodes); }
};

namespace detail {

inline const json& require(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing required key '") + key + "'");
  return j.at(key);
}

inline void only_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw ConfigError("unknown key '" + k + "' in " + where);
  }
}

inline double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw ConfigError(what + " must be a number");
  return j.get<double>();
}

inline int integer(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ConfigError(what + " must be an integer");
  return j.get<int>();
}

inline DataSource data_source(const json& j, const char* key) {
  const json& v = require(j, key);
  if (v.is_string()) return {v.get<std::string>(), {}};
  if (v.is_number()) return {bimon::detail::render_number(v.get<double>()), {}};
  if (v.is_object()) {
    only_keys(v, {"file"}, key);
    const json& f = require(v, "file");
    if (!f.is_string()) throw ConfigError(std::string(key) + ".file must be a string");
    return {{}, f.get<std::string>()};
  }
  throw ConfigError(std::string(key) + " must be an expression string or {\"file\": path}");
}

inline std::array<double, 3> range(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(what + " must be [min, max, count]");
  const double lo = number(j[0], what + "[0]"), hi = number(j[1], what + "[1]");
  const int n = integer(j[2], what + "[2]");
  if (n < 1 || !(lo <= hi)) throw ConfigError(what + " needs min <= max and count >= 1");
  return {lo, hi, double(n)};
}

inline Grid grid_from(const json& g, DomainTag domain) {
  if (!g.is_object()) throw ConfigError("grid must be a table");
  if (domain == DomainTag::unit_disk) {
    only_keys(g, {"r", "theta"}, "grid");
    const auto r = range(require(g, "r"), "grid.r");
    const int nt = integer(require(g, "theta"), "grid.theta");
    if (nt < 1) throw ConfigError("grid.theta must be >= 1");
    if (!(r[0] >= 0.0 && r[1] < 1.0)) throw ConfigError("disk grid radii must lie in [0, 1)");
    return Grid::polar(Grid::linspace(r[0], r[1], int(r[2])), nt);
  }
  only_keys(g, {"x", "y"}, "grid");
  const auto x = range(require(g, "x"), "grid.x");
  const auto y = range(require(g, "y"), "grid.y");
  if (!(y[0] > 0.0)) throw ConfigError("half-plane grid needs y > 0");
  return Grid::rect(x[0], x[1], int(x[2]), y[0], y[1], int(y[2]));
}

} // namespace detail

/// Validate and convert a parsed config. Throws ConfigError.
inline RunConfig config_from_json(const json& j, std::filesystem::path base_dir = {}) {
  if (!j.is_object()) throw ConfigError("config must be a table");
  detail::only_keys(j,
                    {"domain", "u1", "u4", "method", "quadrature_nodes", "grid", "a1", "a2", "output", "verify",
                     "threads"},
                    "config");
  RunConfig c;
  c.base_dir = std::move(base_dir);
  const json& d = detail::require(j, "domain");
  if (d == "disk") c.domain = DomainTag::unit_disk;
  else if (d == "halfplane") c.domain = DomainTag::upper_half_plane;
  else throw ConfigError("domain must be \"disk\" or \"halfplane\"");
  c.u1 = detail::data_source(j, "u1");
  c.u4 = detail::data_source(j, "u4");
  if (j.contains("method")) {
    const json& m = j.at("method");
    if (m == "explicit") c.method = MethodChoice::explicit_formula;
    else if (m == "pipeline") c.method = MethodChoice::pipeline;
    else if (m == "both") c.method = MethodChoice::both;
    else throw ConfigError("method must be \"explicit\", \"pipeline\" or \"both\"");
  }
  if (j.contains("quadrature_nodes")) c.quadrature_nodes = detail::integer(j.at("quadrature_nodes"), "quadrature_nodes");
  try {
    c.spec().validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("quadrature_nodes: ") + e.what());
  }
  c.grid = j.contains("grid") ? detail::grid_from(j.at("grid"), c.domain) : default_grid(c.domain);
  if (j.contains("a1")) c.a1 = detail::number(j.at("a1"), "a1");
  if (j.contains("a2")) c.a2 = detail::number(j.at("a2"), "a2");
  if (j.contains("output")) {
    const json& o = j.at("output");
    if (!o.is_object()) throw ConfigError("output must be a table");
    detail::only_keys(o, {"dir", "format"}, "output");
    if (o.contains("dir")) {
      if (!o.at("dir").is_string()) throw ConfigError("output.dir must be a string");
      c.output_dir = o.at("dir").get<std::string>();
    }
    if (o.contains("format")) {
      if (o.at("format") == "csv") c.format = OutputFormat::csv;
      else if (o.at("format") == "json") c.format = OutputFormat::json;
      else throw ConfigError("output.format must be \"csv\" or \"json\"");
    }
  }
  if (j.contains("verify")) {
    if (!j.at("verify").is_boolean()) throw ConfigError("verify must be true or false");
    c.verify = j.at("verify").get<bool>();
  }
  if (j.contains("threads")) {
    const int n = detail::integer(j.at("threads"), "threads");
    if (n < 1) throw ConfigError("threads must be >= 1");
    c.threads = static_cast<unsigned>(n);
  }
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON (byte " + std::to_string(e.byte) + ")");
  }
  return config_from_json(j, std::filesystem::path(path).parent_path());
}

inline BoundaryData load_data(const DataSource& src, const RunConfig& c) {
  const BoundaryDomain bd = boundary_domain(c.domain);
  if (!src.file.empty()) {
    std::filesystem::path p(src.file);
    if (p.is_relative() && !c.base_dir.empty()) p = c.base_dir / p;
    return BoundaryData::from_csv(p.string(), bd);
  }
  return BoundaryData::from_expression(src.expression, bd);
}

inline Problem14 make_problem(const RunConfig& c) {
  Problem14 p{c.domain, load_data(c.u1, c), load_data(c.u4, c), c.a1, c.a2};
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------
// Serialization

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline json number_or_null(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

inline json report_json(const Solution& s) {
  json r;
  r["method"] = to_string(s.method);
  r["domain"] = to_string(s.problem.domain);
  r["quadrature_nodes"] = s.spec.nodes;
  if (s.report) {
    r["boundary_sup_U1"] = s.report->boundary_sup_U1;
    r["boundary_sup_U4"] = s.report->boundary_sup_U4;
    r["cr_max"] = s.report->cr_max;
    r["biharmonic_max"] = s.report->biharmonic_max;
    r["residual_samples"] = s.report->grid;
  } else {
    r["boundary_sup_U1"] = r["boundary_sup_U4"] = r["cr_max"] = r["biharmonic_max"] = nullptr;
  }
  r["verified"] = s.verified;
  r["constants"] = {{"a1", s.constants.a1},
                    {"a2", s.constants.a2},
                    {"b1", number_or_null(s.constants.b1)},
                    {"b2", number_or_null(s.constants.b2)},
                    {"b", number_or_null(s.constants.b)}};
  if (s.at_infinity) {
    const ComponentQuad q = components(*s.at_infinity);
    r["at_infinity"] = {q.U1, q.U2, q.U3, q.U4};
  }
  return r;
}

inline json comparison_json(const Comparison& c) {
  return {{"max_dU1", c.max_dU1},     {"max_dU4", c.max_dU4},     {"offset_U2", c.offset_U2},
          {"offset_U3", c.offset_U3}, {"spread_U2", c.spread_U2}, {"spread_U3", c.spread_U3},
          {"points", c.points}};
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot write '" + p.string() + "'");
  out << content;
  if (!out) throw IoError("write to '" + p.string() + "' failed");
}

inline std::string grid_comment(const Grid& g) { return "# grid " + g.description() + ", rows outer-major\n"; }

inline std::string field_csv(const Grid& g, const std::vector<BiPoint>& pts, const std::vector<ComponentQuad>& v) {
  std::string s = grid_comment(g) + "x,y,U1,U2,U3,U4\n";
  for (std::size_t k = 0; k < pts.size(); ++k)
    s += fmt17(pts[k].x) + "," + fmt17(pts[k].y) + "," + fmt17(v[k].U1) + "," + fmt17(v[k].U2) + "," +
         fmt17(v[k].U3) + "," + fmt17(v[k].U4) + "\n";
  return s;
}

inline std::string field_json(const Grid& g, const std::vector<BiPoint>& pts, const std::vector<ComponentQuad>& v) {
  json rows = json::array();
  for (std::size_t k = 0; k < pts.size(); ++k)
    rows.push_back({pts[k].x, pts[k].y, v[k].U1, v[k].U2, v[k].U3, v[k].U4});
  json j{{"grid", g.description()},
         {"order", "outer-major"},
         {"columns", {"x", "y", "U1", "U2", "U3", "U4"}},
         {"rows", std::move(rows)}};
  return j.dump(1) + "\n";
}

inline std::string component_csv(int l, const std::vector<BiPoint>& pts, const std::vector<ComponentQuad>& v,
                                 const Grid& g) {
  std::string s = grid_comment(g) + "x,y,U" + std::to_string(l) + "\n";
  for (std::size_t k = 0; k < pts.size(); ++k)
    s += fmt17(pts[k].x) + "," + fmt17(pts[k].y) + "," + fmt17(v[k][l]) + "\n";
  return s;
}

// ---------------------------------------------------------------------------
// Commands

/// Runs `fn`, maps library errors to exit codes and prints the message to `err`.
template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const input_error& e) {  // parse messages carry their offset
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NoFiniteLimit& e) {
    err << "error: NoFiniteLimit: " << e.what() << "\n";
    return 3;
  } catch (const TraceUnavailable& e) {
    err << "error: TraceUnavailable: " << e.what() << "\n";
    return 3;
  } catch (const numeric_error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

inline std::filesystem::path prepare_output(const RunConfig& c) {
  const std::filesystem::path dir(c.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory '" + dir.string() + "'");
  return dir;
}

/// Solve, write field.csv|json and report.json (suffixed _pipeline for the second route of
/// method "both"), plus compare.json for "both".
inline int run_solve(const RunConfig& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return guarded(err, [&] {
    const Problem14 p = make_problem(c);
    const std::filesystem::path dir = prepare_output(c);
    const unsigned threads = c.thread_count();
    const auto pts = c.grid.points();
    std::vector<std::vector<ComponentQuad>> fields;
    for (Method m : c.methods()) {
      Solution s = solve(p, m, c.spec());
      if (c.verify) {
        VerifyOptions opt;
        opt.threads = threads;
        verify(s, opt);
      }
      fields.push_back(evaluate_grid(s.Phi, pts, threads));
      const std::string suffix = fields.size() == 1 ? "" : "_" + to_string(m);
      if (c.format == OutputFormat::csv) write_file(dir / ("field" + suffix + ".csv"), field_csv(c.grid, pts, fields.back()));
      else write_file(dir / ("field" + suffix + ".json"), field_json(c.grid, pts, fields.back()));
      write_file(dir / ("report" + suffix + ".json"), report_json(s).dump(2) + "\n");
      out << to_string(m) << ": " << pts.size() << " points";
      if (s.report) out << ", verified " << (s.verified ? "yes" : "no");
      out << "\n";
    }
    if (fields.size() == 2) {
      const Comparison cmp = compare_fields(fields[0], fields[1]);
      write_file(dir / "compare.json", comparison_json(cmp).dump(2) + "\n");
      out << "explicit vs pipeline: max |dU1| " << fmt17(cmp.max_dU1) << ", max |dU4| " << fmt17(cmp.max_dU4)
          << ", spread U2 " << fmt17(cmp.spread_U2) << ", spread U3 " << fmt17(cmp.spread_U3) << "\n";
    }
    return 0;
  });
}

/// One file per component, columns x,y,U_l.
inline int emit_plotdata(const RunConfig& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return guarded(err, [&] {
    const Problem14 p = make_problem(c);
    const std::filesystem::path dir = prepare_output(c);
    const Solution s = solve(p, c.methods().front(), c.spec());
    const auto pts = c.grid.points();
    const auto v = evaluate_grid(s.Phi, pts, c.thread_count());
    for (int l = 1; l <= 4; ++l)
      write_file(dir / ("U" + std::to_string(l) + ".csv"), component_csv(l, pts, v, c.grid));
    out << "wrote U1.csv..U4.csv (" << pts.size() << " rows each) to " << dir.string() << "\n";
    return 0;
  });
}

// ---------------------------------------------------------------------------
// Built-in manufactured fixtures

struct CheckRow {
  std::string fixture;
  std::string check;
  double value = 0.0;
  double threshold = 0.0;
  bool pass() const { return value <= threshold; }
};

struct Fixture {
  std::string name;
  DomainTag domain;
  AnalyticPair pair;
};

/// Disk: F = z^2, F0 = 0. Half-plane: F = F0 = 1/(z + i).
inline std::vector<Fixture> builtin_fixtures() {
  const AnalyticFn z2 = make_polynomial({0.0, 0.0, 1.0});
  const AnalyticFn zero = make_constant(0.0);
  const AnalyticFn r = make_rational({1.0}, {Complex(0.0, 1.0), 1.0}, DomainTag::upper_half_plane);
  return {{"disk F=z^2", DomainTag::unit_disk, {z2, zero}}, {"halfplane F=F0=1/(z+i)", DomainTag::upper_half_plane, {r, r}}};
}

/// sup over boundary samples of |U_l(approach at distance d) - u_l|, l = 1, 4.
inline double approach_error(const Solution& s, double d, int samples, unsigned threads) {
  const auto params = boundary_samples(s.problem.domain, samples);
  std::vector<double> e(params.size());
  parallel_for(params.size(), threads, [&](std::size_t k) {
    const double a = params[k];
    const BiPoint p = s.problem.domain == DomainTag::unit_disk ? BiPoint{(1.0 - d) * std::cos(a), (1.0 - d) * std::sin(a)}
                                                               : BiPoint{a, d};
    const ComponentQuad q = components(s.Phi(p));
    e[k] = std::max(std::abs(q.U1 - s.problem.u1(a)), std::abs(q.U4 - s.problem.u4(a)));
  });
  return *std::max_element(e.begin(), e.end());
}

inline std::vector<CheckRow> run_fixture(const Fixture& fx, const std::vector<Method>& methods, int nodes,
                                         unsigned threads) {
  std::vector<CheckRow> rows;
  const MonogenicFn exact = from_pair(fx.pair);
  auto [u1, u4] = trace_from_monogenic(exact, fx.domain);
  const Problem14 p{fx.domain, u1, u4};
  const QuadratureSpec spec = default_spec(fx.domain, nodes);
  const auto pts = default_grid(fx.domain).points();
  const auto reference = evaluate_grid(exact, pts, threads);
  std::vector<std::vector<ComponentQuad>> fields;
  for (Method m : methods) {
    const std::string tag = fx.name + " [" + to_string(m) + "]";
    Solution s = solve(p, m, spec);
    VerifyOptions opt;
    opt.threads = threads;
    verify(s, opt);
    fields.push_back(evaluate_grid(s.Phi, pts, threads));
    const Comparison c = compare_fields(reference, fields.back());
    rows.push_back({tag, "interior max |U1 - U1*|, |U4 - U4*|", std::max(c.max_dU1, c.max_dU4), 1e-6});
    rows.push_back({tag, "U2, U3 offset spread", std::max(c.spread_U2, c.spread_U3), 1e-6});
    rows.push_back({tag, "boundary fidelity at approach 1e-3", approach_error(s, 1e-3, 256, threads), 1e-2});
    rows.push_back({tag, "boundary limit residual",
                    std::max(s.report->boundary_sup_U1, s.report->boundary_sup_U4), opt.boundary_tolerance});
    rows.push_back({tag, "CR residual", s.report->cr_max, opt.cr_tolerance});
    rows.push_back({tag, "biharmonic residual", s.report->biharmonic_max, opt.biharmonic_tolerance});
    if (s.at_infinity) {
      const ComponentQuad q = components(*s.at_infinity);  // exact field tends to 0
      rows.push_back({tag, "U1, U4 at infinity", std::max(std::abs(q.U1), std::abs(q.U4)), 1e-8});
    }
  }
  if (fields.size() == 2) {
    const Comparison c = compare_fields(fields[0], fields[1]);
    rows.push_back({fx.name, "route equivalence", std::max({c.max_dU1, c.max_dU4, c.spread_U2, c.spread_U3}), 1e-6});
  }
  return rows;
}

inline void print_table(std::ostream& out, const std::vector<CheckRow>& rows) {
  std::size_t w1 = 7, w2 = 5;
  for (const auto& r : rows) {
    w1 = std::max(w1, r.fixture.size());
    w2 = std::max(w2, r.check.size());
  }
  auto pad = [](std::string s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); };
  out << pad("fixture", w1) << "  " << pad("check", w2) << "  " << pad("value", 24) << "  " << pad("threshold", 10)
      << "  result\n";
  for (const auto& r : rows) {
    char thr[32];
    std::snprintf(thr, sizeof thr, "%.0e", r.threshold);
    out << pad(r.fixture, w1) << "  " << pad(r.check, w2) << "  " << pad(fmt17(r.value), 24) << "  " << pad(thr, 10)
        << "  " << (r.pass() ? "PASS" : "FAIL") << "\n";
  }
}

/// Built-in fixtures. A config restricts the domain and supplies quadrature_nodes and
/// method; without one both domains run with both methods at N = 2048.
inline int run_verify(const std::optional<RunConfig>& c, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
  return guarded(err, [&] {
    const int nodes = c ? c->quadrature_nodes : 2048;
    const std::vector<Method> methods =
        c ? c->methods() : std::vector<Method>{Method::explicit_formula, Method::pipeline};
    const unsigned threads = c ? c->thread_count() : RunConfig{}.thread_count();
    std::vector<CheckRow> rows;
    for (const Fixture& fx : builtin_fixtures()) {
      if (c && c->domain != fx.domain) continue;
      const auto r = run_fixture(fx, methods, nodes, threads);
      rows.insert(rows.end(), r.begin(), r.end());
    }
    print_table(out, rows);
    const bool ok = std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass(); });
    out << (ok ? "all checks passed" : "some checks FAILED") << "\n";
    return ok ? 0 : 1;
  });
}

inline int run_verify_file(const std::optional<std::string>& path, std::ostream& out = std::cout,
                           std::ostream& err = std::cerr) {
  std::optional<RunConfig> c;
  if (path) {
    const int rc = guarded(err, [&] {
      c = load_config(*path);
      return 0;
    });
    if (rc != 0) return rc;
  }
  return run_verify(c, out, err);
}

} // namespace bimon::cli
