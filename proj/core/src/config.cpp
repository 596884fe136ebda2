#include "helix/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "config_json.hpp"
#include "helix/errors.hpp"
#include "helix/presets.hpp"

namespace helix {

using ojson = nlohmann::ordered_json;

bool operator==(const PhysicalParams& a, const PhysicalParams& b) {
  return a.hbar == b.hbar && a.mu == b.mu && a.e == b.e && a.k == b.k && a.omega == b.omega &&
         a.B0 == b.B0 && a.PhiB == b.PhiB;
}

bool operator==(const QuantumNumbers& a, const QuantumNumbers& b) {
  return a.m == b.m && a.requested_levels == b.requested_levels;
}

bool operator==(const PotentialModel& a, const PotentialModel& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&b](const auto& ma) {
        using T = std::decay_t<decltype(ma)>;
        const auto& mb = std::get<T>(b);
        if constexpr (std::is_same_v<T, Free>) {
          return true;
        } else if constexpr (std::is_same_v<T, Cornell>) {
          return ma.a == mb.a && ma.b == mb.b;
        } else if constexpr (std::is_same_v<T, Kratzer>) {
          return ma.A == mb.A && ma.D == mb.D;
        } else {
          return ma.D == mb.D && ma.a == mb.a && ma.r0 == mb.r0;
        }
      },
      a);
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& reason) {
  throw SchemaError(path, reason);
}

std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

void check_keys(const ojson& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) fail(join(path, item.key()), "unknown key");
  }
}

double as_number(const ojson& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

double as_finite(const ojson& j, const std::string& path) {
  const double v = as_number(j, path);
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

int as_int(const ojson& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

bool as_bool(const ojson& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

std::string as_string(const ojson& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

void apply_physical(PhysicalParams& p, const ojson& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, path, {"hbar", "mu", "e", "k", "omega", "B0", "PhiB"});
  if (j.contains("hbar")) p.hbar = as_finite(j["hbar"], join(path, "hbar"));
  if (j.contains("mu")) p.mu = as_finite(j["mu"], join(path, "mu"));
  if (j.contains("e")) p.e = as_finite(j["e"], join(path, "e"));
  if (j.contains("k")) p.k = as_finite(j["k"], join(path, "k"));
  if (j.contains("omega")) p.omega = as_finite(j["omega"], join(path, "omega"));
  if (j.contains("B0")) p.B0 = as_finite(j["B0"], join(path, "B0"));
  if (j.contains("PhiB")) p.PhiB = as_finite(j["PhiB"], join(path, "PhiB"));
  if (p.hbar <= 0.0) fail(join(path, "hbar"), "must be > 0");
  if (p.mu <= 0.0) fail(join(path, "mu"), "must be > 0");
}

void apply_model(PotentialModel& model, const ojson& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, path, {"type", "a", "b", "A", "D", "r0"});
  if (!j.contains("type")) fail(join(path, "type"), "model type is required");
  const std::string type = as_string(j["type"], join(path, "type"));

  auto forbid = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys) {
      if (j.contains(k)) fail(join(path, k), "not a parameter of model '" + type + "'");
    }
  };

  if (type == "free") {
    forbid({"a", "b", "A", "D", "r0"});
    model = Free{};
  } else if (type == "cornell") {
    forbid({"A", "r0"});
    Cornell c = std::holds_alternative<Cornell>(model) ? std::get<Cornell>(model) : Cornell{};
    if (j.contains("a")) c.a = as_finite(j["a"], join(path, "a"));
    if (j.contains("b")) c.b = as_finite(j["b"], join(path, "b"));
    if (j.contains("D")) fail(join(path, "D"), "not a parameter of model 'cornell'");
    model = c;
  } else if (type == "kratzer") {
    forbid({"a", "b", "r0"});
    Kratzer kr = std::holds_alternative<Kratzer>(model) ? std::get<Kratzer>(model) : Kratzer{};
    if (j.contains("A")) kr.A = as_finite(j["A"], join(path, "A"));
    if (j.contains("D")) kr.D = as_finite(j["D"], join(path, "D"));
    if (kr.A <= 0.0) fail(join(path, "A"), "must be > 0");
    if (kr.D <= 0.0) fail(join(path, "D"), "must be > 0");
    model = kr;
  } else if (type == "morse_small") {
    forbid({"b", "A"});
    MorseSmall ms =
        std::holds_alternative<MorseSmall>(model) ? std::get<MorseSmall>(model) : MorseSmall{};
    if (j.contains("D")) ms.D = as_finite(j["D"], join(path, "D"));
    if (j.contains("a")) ms.a = as_finite(j["a"], join(path, "a"));
    if (j.contains("r0")) ms.r0 = as_finite(j["r0"], join(path, "r0"));
    if (ms.D <= 0.0) fail(join(path, "D"), "must be > 0");
    if (ms.a <= 0.0) fail(join(path, "a"), "must be > 0");
    if (ms.r0 <= 0.0) fail(join(path, "r0"), "must be > 0");
    model = ms;
  } else {
    fail(join(path, "type"),
         "unknown model '" + type + "' (expected free, cornell, kratzer or morse_small)");
  }
}

void apply_quantum(QuantumNumbers& q, const ojson& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, path, {"m", "levels"});
  if (j.contains("m")) q.m = as_int(j["m"], join(path, "m"));
  if (j.contains("levels")) q.requested_levels = as_int(j["levels"], join(path, "levels"));
  if (q.requested_levels < 1) fail(join(path, "levels"), "must be >= 1");
}

void apply_grid(GridConfig& g, const ojson& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, path, {"r_min", "r_max", "n"});
  if (j.contains("r_min")) g.r_min = as_finite(j["r_min"], join(path, "r_min"));
  if (j.contains("r_max")) g.r_max = as_finite(j["r_max"], join(path, "r_max"));
  if (j.contains("n")) g.n = as_int(j["n"], join(path, "n"));
  if (g.r_min <= 0.0) {
    fail(join(path, "r_min"), "must be strictly positive (the inner cutoff regularizes the "
                              "1/r and 1/r^2 terms)");
  }
  if (g.r_max <= g.r_min) fail(join(path, "r_max"), "must exceed r_min");
  if (g.n < 3) fail(join(path, "n"), "must be >= 3");
}

void apply_solver(SolverConfig& s, const ojson& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, path, {"tol_lambda", "tol_residual"});
  if (j.contains("tol_lambda")) s.tol_lambda = as_finite(j["tol_lambda"], join(path, "tol_lambda"));
  if (j.contains("tol_residual")) {
    s.tol_residual = as_finite(j["tol_residual"], join(path, "tol_residual"));
  }
  if (s.tol_lambda <= 0.0) fail(join(path, "tol_lambda"), "must be > 0");
  if (s.tol_residual <= 0.0) fail(join(path, "tol_residual"), "must be > 0");
}

void apply_convergence(ConvergenceConfig& c, const ojson& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, path, {"tol_rel", "delta_rmax"});
  if (j.contains("tol_rel")) c.tol_rel = as_finite(j["tol_rel"], join(path, "tol_rel"));
  if (j.contains("delta_rmax")) {
    c.delta_rmax = as_finite(j["delta_rmax"], join(path, "delta_rmax"));
  }
  if (c.tol_rel <= 0.0) fail(join(path, "tol_rel"), "must be > 0");
  if (c.delta_rmax && *c.delta_rmax <= 0.0) fail(join(path, "delta_rmax"), "must be > 0");
}

void apply_scan(std::optional<ScanConfig>& scan, const ojson& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, path, {"parameter", "values", "m_set", "check_convergence"});
  ScanConfig s = scan.value_or(ScanConfig{});
  if (j.contains("parameter")) {
    const std::string name = as_string(j["parameter"], join(path, "parameter"));
    try {
      s.parameter = scan_parameter_from_name(name);
    } catch (const InvalidParameter& ex) {
      fail(join(path, "parameter"), ex.what());
    }
  }
  if (j.contains("values")) {
    if (!j["values"].is_array()) fail(join(path, "values"), "expected an array");
    s.values.clear();
    int i = 0;
    for (const auto& v : j["values"]) {
      s.values.push_back(as_finite(v, join(path, "values[" + std::to_string(i) + "]")));
      ++i;
    }
  }
  if (j.contains("m_set")) {
    if (!j["m_set"].is_array()) fail(join(path, "m_set"), "expected an array");
    s.m_set.clear();
    int i = 0;
    for (const auto& v : j["m_set"]) {
      s.m_set.push_back(as_int(v, join(path, "m_set[" + std::to_string(i) + "]")));
      ++i;
    }
  }
  if (j.contains("check_convergence")) {
    s.check_convergence = as_bool(j["check_convergence"], join(path, "check_convergence"));
  }
  if (s.values.empty()) fail(join(path, "values"), "must hold at least one value");
  for (std::size_t i = 1; i < s.values.size(); ++i) {
    if (!(s.values[i] > s.values[i - 1])) {
      fail(join(path, "values"), "must be strictly ascending");
    }
  }
  if (s.parameter == ScanParameter::M) {
    for (double v : s.values) {
      if (v != std::floor(v)) fail(join(path, "values"), "m axis values must be integers");
    }
    if (s.m_set.size() > 1) fail(join(path, "m_set"), "an m-axis scan cannot also sweep m_set");
  }
  scan = s;
}

void apply_density(std::optional<DensityConfig>& density, const ojson& j,
                   const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, path, {"omegas", "levels"});
  DensityConfig d = density.value_or(DensityConfig{});
  if (j.contains("omegas")) {
    if (!j["omegas"].is_array()) fail(join(path, "omegas"), "expected an array");
    d.omegas.clear();
    int i = 0;
    for (const auto& v : j["omegas"]) {
      d.omegas.push_back(as_finite(v, join(path, "omegas[" + std::to_string(i) + "]")));
      ++i;
    }
  }
  if (j.contains("levels")) {
    if (!j["levels"].is_array()) fail(join(path, "levels"), "expected an array");
    d.levels.clear();
    int i = 0;
    for (const auto& v : j["levels"]) {
      d.levels.push_back(as_int(v, join(path, "levels[" + std::to_string(i) + "]")));
      ++i;
    }
  }
  if (d.omegas.empty()) fail(join(path, "omegas"), "must hold at least one value");
  for (std::size_t i = 1; i < d.omegas.size(); ++i) {
    if (!(d.omegas[i] > d.omegas[i - 1])) fail(join(path, "omegas"), "must be strictly ascending");
  }
  if (d.levels.empty()) fail(join(path, "levels"), "must hold at least one level index");
  for (std::size_t i = 0; i < d.levels.size(); ++i) {
    if (d.levels[i] < 0) fail(join(path, "levels"), "level indices must be >= 0");
    if (i > 0 && d.levels[i] <= d.levels[i - 1]) {
      fail(join(path, "levels"), "level indices must be strictly ascending");
    }
  }
  density = d;
}

void apply_u_override(std::optional<UOverrideConfig>& u, const ojson& j,
                      const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, path, {"coeff", "exponent"});
  UOverrideConfig cfg = u.value_or(UOverrideConfig{});
  if (j.contains("coeff")) cfg.coeff = as_finite(j["coeff"], join(path, "coeff"));
  if (j.contains("exponent")) cfg.exponent = as_finite(j["exponent"], join(path, "exponent"));
  u = cfg;
}

void apply_output(OutputConfig& o, const ojson& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, path, {"dir", "plots"});
  if (j.contains("dir")) o.dir = as_string(j["dir"], join(path, "dir"));
  if (j.contains("plots")) o.plots = as_bool(j["plots"], join(path, "plots"));
  if (o.dir.empty()) fail(join(path, "dir"), "must not be empty");
}

void apply_document(RunConfig& cfg, const ojson& j) {
  check_keys(j, "", {"preset", "physical", "model", "quantum", "grid", "solver", "convergence",
                     "scan", "density", "u_override", "output", "workers"});
  if (j.contains("physical")) apply_physical(cfg.physical, j["physical"], "physical");
  if (j.contains("model")) apply_model(cfg.model, j["model"], "model");
  if (j.contains("quantum")) apply_quantum(cfg.quantum, j["quantum"], "quantum");
  if (j.contains("grid")) apply_grid(cfg.grid, j["grid"], "grid");
  if (j.contains("solver")) apply_solver(cfg.solver, j["solver"], "solver");
  if (j.contains("convergence")) apply_convergence(cfg.convergence, j["convergence"], "convergence");
  if (j.contains("scan")) apply_scan(cfg.scan, j["scan"], "scan");
  if (j.contains("density")) apply_density(cfg.density, j["density"], "density");
  if (j.contains("u_override")) apply_u_override(cfg.u_override, j["u_override"], "u_override");
  if (j.contains("output")) apply_output(cfg.output, j["output"], "output");
  if (j.contains("workers")) {
    cfg.workers = as_int(j["workers"], "workers");
    if (cfg.workers < 1) fail("workers", "must be >= 1");
  }
}

int workers_from_environment(int fallback) {
  const char* env = std::getenv("HELIX_STURM_WORKERS");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || v < 1 || v > 4096) {
    fail("workers", "HELIX_STURM_WORKERS must be a positive integer");
  }
  return static_cast<int>(v);
}

ojson model_to_json(const PotentialModel& model) {
  ojson j;
  j["type"] = model_name(model);
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Cornell>) {
          j["a"] = m.a;
          j["b"] = m.b;
        } else if constexpr (std::is_same_v<T, Kratzer>) {
          j["A"] = m.A;
          j["D"] = m.D;
        } else if constexpr (std::is_same_v<T, MorseSmall>) {
          j["D"] = m.D;
          j["a"] = m.a;
          j["r0"] = m.r0;
        }
      },
      model);
  return j;
}

}  // namespace

namespace detail {

ojson config_to_json(const RunConfig& c) {
  ojson j;
  if (c.preset) j["preset"] = *c.preset;
  j["physical"] = {{"hbar", c.physical.hbar}, {"mu", c.physical.mu},   {"e", c.physical.e},
                   {"k", c.physical.k},       {"omega", c.physical.omega},
                   {"B0", c.physical.B0},     {"PhiB", c.physical.PhiB}};
  j["model"] = model_to_json(c.model);
  j["quantum"] = {{"m", c.quantum.m}, {"levels", c.quantum.requested_levels}};
  j["grid"] = {{"r_min", c.grid.r_min}, {"r_max", c.grid.r_max}, {"n", c.grid.n}};
  j["solver"] = {{"tol_lambda", c.solver.tol_lambda}, {"tol_residual", c.solver.tol_residual}};
  j["convergence"] = {{"tol_rel", c.convergence.tol_rel}};
  if (c.convergence.delta_rmax) j["convergence"]["delta_rmax"] = *c.convergence.delta_rmax;
  if (c.scan) {
    j["scan"] = {{"parameter", scan_parameter_name(c.scan->parameter)},
                 {"values", c.scan->values},
                 {"m_set", c.scan->m_set},
                 {"check_convergence", c.scan->check_convergence}};
  }
  if (c.density) {
    j["density"] = {{"omegas", c.density->omegas}, {"levels", c.density->levels}};
  }
  if (c.u_override) {
    j["u_override"] = {{"coeff", c.u_override->coeff}, {"exponent", c.u_override->exponent}};
  }
  j["output"] = {{"dir", c.output.dir}, {"plots", c.output.plots}};
  j["workers"] = c.workers;
  return j;
}

}  // namespace detail

ProblemSpec RunConfig::problem() const {
  ProblemSpec spec;
  spec.params = physical;
  spec.m = quantum.m;
  spec.model = model;
  spec.grid = RadialGrid(grid.r_min, grid.r_max, grid.n);
  spec.levels = quantum.requested_levels;
  spec.tol = SolveTolerances{solver.tol_lambda, solver.tol_residual};
  if (u_override) {
    const double coeff = u_override->coeff;
    const double exponent = u_override->exponent;
    spec.u_override = [coeff, exponent](double r) { return coeff * std::pow(r, exponent); };
  }
  return spec;
}

RunConfig parse_config(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const std::exception& ex) {
    fail("<document>", std::string("not valid JSON: ") + ex.what());
  }
  if (!j.is_object()) fail("<document>", "top level must be an object");

  RunConfig cfg;
  if (j.contains("preset")) {
    const std::string name = as_string(j["preset"], "preset");
    cfg = preset_config(name);
    cfg.preset = name;
  }
  apply_document(cfg, j);
  if (!j.contains("workers")) cfg.workers = workers_from_environment(cfg.workers);
  return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("<document>", "cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

RunConfig load_config(const std::optional<std::filesystem::path>& file,
                      const std::optional<std::string>& preset_name) {
  if (!file && !preset_name) {
    fail("<document>", "either a config file or a preset name is required");
  }
  ojson doc = ojson::object();
  if (file) {
    std::ifstream in(*file);
    if (!in) fail("<document>", "cannot open config file '" + file->string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
      doc = ojson::parse(buffer.str());
    } catch (const std::exception& ex) {
      fail("<document>", std::string("not valid JSON: ") + ex.what());
    }
    if (!doc.is_object()) fail("<document>", "top level must be an object");
  }
  if (preset_name && !doc.contains("preset")) doc["preset"] = *preset_name;
  return parse_config(doc.dump());
}

std::string emit_config(const RunConfig& config) {
  return detail::config_to_json(config).dump(2) + "\n";
}

}  // namespace helix
