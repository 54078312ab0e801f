#include "biphoton/config.hpp"

#include <charconv>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorCode::ConfigError, where + ": " + what);
}

// Rewraps a library error under the config key that triggered it. A nested
// ConfigError would repeat its code name, so that prefix is dropped.
[[noreturn]] void rewrap(const std::string& where, const Error& e) {
  std::string msg = e.what();
  const std::string dup = std::string(error_code_name(ErrorCode::ConfigError)) + ": ";
  if (msg.rfind(dup, 0) == 0) msg.erase(0, dup.size());
  bad(where, msg);
}

// Every object is checked against its full key list so typos surface as
// errors instead of silently falling back to defaults.
void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known) bad(where, "unknown key '" + item.key() + "'");
  }
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double require_number(const json& obj, const std::string& where,
                      const char* key) {
  const json* v = find(obj, key);
  if (!v) bad(where, std::string("missing required key '") + key + "'");
  if (!v->is_number())
    bad(where + "." + key, "expected a number");
  return v->get<double>();
}

bool optional_bool(const json& obj, const std::string& where, const char* key,
                   bool fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_boolean()) bad(where + "." + key, "expected true or false");
  return v->get<bool>();
}

std::string require_string(const json& obj, const std::string& where,
                           const char* key) {
  const json* v = find(obj, key);
  if (!v) bad(where, std::string("missing required key '") + key + "'");
  if (!v->is_string()) bad(where + "." + key, "expected a string");
  return v->get<std::string>();
}

// Grids come as {"half_width": W, "n": N}. The slit grid keeps zero on a cell
// boundary so slit edges can align with cells; the screen grid keeps zero on a
// node so the fixed partner detector sits exactly there.
Grid1D parse_grid(const json& obj, const std::string& where, bool zero_on_node) {
  if (!obj.is_object()) bad(where, "expected an object");
  reject_unknown_keys(obj, where, {"half_width", "n"});
  const double half = require_number(obj, where, "half_width");
  const double n_raw = require_number(obj, where, "n");
  const auto n = static_cast<std::size_t>(n_raw);
  if (n_raw <= 0.0 || static_cast<double>(n) != n_raw)
    bad(where + ".n", "expected a positive integer");
  try {
    if (zero_on_node) return Grid1D::centered_on_zero(2.0 * half / n_raw, n);
    return Grid1D::symmetric(half, n);
  } catch (const Error& e) {
    rewrap(where, e);
  }
}

double parse_full_double(const std::string& text, const std::string& where) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    bad(where, "'" + text + "' is not a number");
  return v;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text,
                           const std::string& source_name,
                           const std::optional<std::string>& scenario_override,
                           const std::optional<std::string>& sweep_override) {
  json root = json::parse(json_text, nullptr, false);
  if (root.is_discarded()) bad(source_name, "invalid JSON");
  if (!root.is_object()) bad(source_name, "top level must be an object");
  reject_unknown_keys(root, source_name,
                      {"schema_version", "scenario", "params", "slit_grid",
                       "screen_grid", "beam_diagnostics", "sweep", "outputs"});

  const double version = require_number(root, source_name, "schema_version");
  if (version != 1.0)
    bad(source_name + ".schema_version", "only version 1 is supported");

  RunConfig rc;

  std::string kind_name = require_string(root, source_name, "scenario");
  if (scenario_override) kind_name = *scenario_override;
  try {
    rc.spec.kind = scenario_kind_from_name(kind_name);
  } catch (const Error& e) {
    rewrap(source_name + ".scenario", e);
  }

  const json* pj = find(root, "params");
  if (!pj) bad(source_name, "missing required key 'params'");
  if (!pj->is_object()) bad(source_name + ".params", "expected an object");
  const std::string pw = source_name + ".params";
  reject_unknown_keys(*pj, pw,
                      {"lambda", "sigma", "omega_big", "slit_sep", "slit_width",
                       "dist_source_slit", "dist_slit_screen", "scenario"});
  ExperimentParams& p = rc.spec.params;
  p.lambda = require_number(*pj, pw, "lambda");
  p.sigma = require_number(*pj, pw, "sigma");
  p.omega_big = require_number(*pj, pw, "omega_big");
  p.slit_sep = require_number(*pj, pw, "slit_sep");
  p.slit_width = require_number(*pj, pw, "slit_width");
  p.dist_source_slit = require_number(*pj, pw, "dist_source_slit");
  p.dist_slit_screen = require_number(*pj, pw, "dist_slit_screen");

  // The photon arrangement follows the scenario kind unless spelled out, and
  // a spelled-out value must agree with the kind.
  const ScenarioGeometry derived =
      rc.spec.kind == ScenarioKind::NonlocalCoincidence
          ? ScenarioGeometry::Nonlocal
          : ScenarioGeometry::Colocated;
  if (const json* gj = find(*pj, "scenario")) {
    if (!gj->is_string()) bad(pw + ".scenario", "expected a string");
    try {
      p.scenario = scenario_geometry_from_name(gj->get<std::string>());
    } catch (const Error& e) {
      rewrap(pw + ".scenario", e);
    }
    if (p.scenario != derived)
      bad(pw + ".scenario",
          "'" + gj->get<std::string>() + "' contradicts scenario '" +
              scenario_kind_name(rc.spec.kind) + "'");
  } else {
    p.scenario = derived;
  }

  try {
    p.validate();
  } catch (const Error& e) {
    rewrap(pw, e);
  }

  if (const json* gj = find(root, "slit_grid"))
    rc.spec.slit_grid = parse_grid(*gj, source_name + ".slit_grid", false);
  if (const json* gj = find(root, "screen_grid"))
    rc.spec.screen_grid = parse_grid(*gj, source_name + ".screen_grid", true);
  rc.spec.beam_diagnostics =
      optional_bool(root, source_name, "beam_diagnostics", true);

  if (const json* sj = find(root, "sweep")) {
    const std::string sw = source_name + ".sweep";
    if (!sj->is_object()) bad(sw, "expected an object");
    reject_unknown_keys(*sj, sw, {"param", "values"});
    SweepRequest req;
    req.param = require_string(*sj, sw, "param");
    const json* vj = find(*sj, "values");
    if (!vj) bad(sw, "missing required key 'values'");
    if (!vj->is_array()) bad(sw + ".values", "expected an array of numbers");
    for (const json& v : *vj) {
      if (!v.is_number()) bad(sw + ".values", "expected an array of numbers");
      req.values.push_back(v.get<double>());
    }
    rc.sweep = req;
  }
  if (sweep_override) rc.sweep = parse_sweep_option(*sweep_override);

  if (const json* oj = find(root, "outputs")) {
    const std::string ow = source_name + ".outputs";
    if (!oj->is_object()) bad(ow, "expected an object");
    reject_unknown_keys(*oj, ow, {"csv", "svg", "report"});
    rc.outputs.csv = optional_bool(*oj, ow, "csv", true);
    rc.outputs.svg = optional_bool(*oj, ow, "svg", true);
    rc.outputs.report = optional_bool(*oj, ow, "report", true);
  }

  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path,
                          const std::optional<std::string>& scenario_override,
                          const std::optional<std::string>& sweep_override) {
  std::ifstream is(path, std::ios::binary);
  if (!is)
    fail(ErrorCode::ConfigError, "cannot open config " + path.string());
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_run_config(buf.str(), path.filename().string(),
                          scenario_override, sweep_override);
}

SweepRequest parse_sweep_option(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    fail(ErrorCode::ConfigError,
         "sweep option must look like name=v1,v2,... got '" + text + "'");
  SweepRequest req;
  req.param = text.substr(0, eq);
  std::string rest = text.substr(eq + 1);
  std::size_t start = 0;
  while (start <= rest.size()) {
    const auto comma = rest.find(',', start);
    const std::string tok =
        rest.substr(start, comma == std::string::npos ? std::string::npos
                                                      : comma - start);
    req.values.push_back(parse_full_double(tok, "sweep option"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return req;
}

}  // namespace biphoton
