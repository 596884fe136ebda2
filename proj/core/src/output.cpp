#include "helix/output.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include "config_json.hpp"
#include "helix/version.hpp"

namespace helix {

using ojson = nlohmann::ordered_json;

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string spectrum_csv(const Spectrum& spectrum) {
  std::string out = "n_r,lambda,energy\n";
  for (std::size_t n = 0; n < spectrum.lambdas.size(); ++n) {
    out += std::to_string(n);
    out += ',';
    out += format_double(spectrum.lambdas[n]);
    out += ',';
    out += format_double(spectrum.energies[n]);
    out += '\n';
  }
  return out;
}

std::string scan_csv(const ScanResult& result) {
  std::string out = "axis_value,m,n_r,lambda,energy,converged\n";
  for (const ScanRow& row : result.rows) {
    out += format_double(row.axis_value);
    out += ',';
    out += std::to_string(row.m);
    out += ',';
    out += std::to_string(row.n_r);
    out += ',';
    out += format_double(row.lambda);
    out += ',';
    out += format_double(row.energy);
    out += ',';
    out += row.converged ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string density_csv(const DensityResult& result) {
  std::string out = "r,rho,n_r,omega\n";
  for (const DensityCurve& curve : result.curves) {
    if (curve.status != PointStatus::Ok) continue;
    for (std::size_t i = 0; i < curve.rho.size(); ++i) {
      out += format_double(result.radii[i]);
      out += ',';
      out += format_double(curve.rho[i]);
      out += ',';
      out += std::to_string(curve.n_r);
      out += ',';
      out += format_double(curve.omega);
      out += '\n';
    }
  }
  return out;
}

std::string converge_csv(const ConvergenceReport& report) {
  std::string out =
      "n_r,lambda,energy,shift_refine,shift_domain,shift_cutoff,estimated_order,converged\n";
  for (std::size_t n = 0; n < report.levels.size(); ++n) {
    const LevelShifts& l = report.levels[n];
    out += std::to_string(n);
    out += ',';
    out += format_double(report.baseline.lambdas[n]);
    out += ',';
    out += format_double(report.baseline.energies[n]);
    out += ',';
    out += format_double(l.refined_grid);
    out += ',';
    out += format_double(l.enlarged_domain);
    out += ',';
    out += format_double(l.reduced_cutoff);
    out += ',';
    out += format_double(l.estimated_order);
    out += ',';
    out += l.converged ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string profile_csv(const RunConfig& config, const std::vector<int>& m_values) {
  const RadialGrid grid(config.grid.r_min, config.grid.r_max, config.grid.n);
  std::string out = "r,v_eff,m\n";
  for (int m : m_values) {
    for (int i = 0; i <= grid.n_intervals(); ++i) {
      const double r = grid.node(i);
      out += format_double(r);
      out += ',';
      out += format_double(v_eff(r, config.physical, m, config.model));
      out += ',';
      out += std::to_string(m);
      out += '\n';
    }
  }
  return out;
}

namespace {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

}  // namespace

std::string manifest_json(const RunConfig& config, const ManifestInfo& info) {
  ojson j;
  j["schema_version"] = kCsvSchemaVersion;
  j["tool"] = {{"name", "helix-sturm"}, {"version", kVersion}};
  j["subcommand"] = info.subcommand;
  j["generated_at"] = utc_timestamp();
  j["config"] = detail::config_to_json(config);
  const RadialGrid grid(config.grid.r_min, config.grid.r_max, config.grid.n);
  j["grid"] = {{"r_min", grid.r_min()},
               {"r_max", grid.r_max()},
               {"n", grid.n_intervals()},
               {"dr", grid.dr()}};
  j["tolerances"] = {{"tol_lambda", config.solver.tol_lambda},
                     {"tol_residual", config.solver.tol_residual},
                     {"tol_rel", config.convergence.tol_rel}};
  j["results"] = {{"rows", info.rows},
                  {"failures", info.failures},
                  {"converged_all", info.converged_all}};
  ojson files = ojson::object();
  for (const auto& [key, name] : info.files) files[key] = name;
  j["files"] = files;
  return j.dump(2) + "\n";
}

}  // namespace helix
