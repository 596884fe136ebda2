#include "helix/run.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <set>

#include "helix/errors.hpp"
#include "helix/output.hpp"
#include "helix/plot.hpp"
#include "helix/presets.hpp"
#include "helix/scan.hpp"
#include "helix/solve.hpp"

namespace helix {

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

ScanOptions scan_options(const RunConfig& cfg, int workers) {
  ScanOptions opts;
  opts.workers = workers;
  opts.check_convergence = cfg.scan ? cfg.scan->check_convergence : true;
  opts.tol_rel = cfg.convergence.tol_rel;
  opts.delta_rmax = cfg.convergence.delta_rmax.value_or(-1.0);
  return opts;
}

void emit_scan_plots(const ScanResult& result, const fs::path& dir, ManifestInfo& info) {
  std::set<int> m_values;
  for (const ScanRow& row : result.rows) m_values.insert(row.m);
  for (int m : m_values) {
    std::map<int, PlotSeries> by_level;
    for (const ScanRow& row : result.rows) {
      if (row.m != m || row.status != PointStatus::Ok) continue;
      PlotSeries& s = by_level[row.n_r];
      s.label = "n_r=" + std::to_string(row.n_r);
      s.x.push_back(row.axis_value);
      s.y.push_back(row.energy);
    }
    std::vector<PlotSeries> series;
    for (auto& [_, s] : by_level) series.push_back(std::move(s));
    const std::string axis = scan_parameter_name(result.axis.parameter);
    const std::string name = "scan_m" + std::to_string(m) + ".svg";
    write_file(dir / name,
               render_line_plot("E vs " + axis + " (m=" + std::to_string(m) + ")", axis, "E",
                                series));
    info.files.emplace_back("plot_m" + std::to_string(m), name);
  }
}

void emit_density_plots(const DensityResult& result, const fs::path& dir, ManifestInfo& info) {
  std::set<int> levels;
  for (const DensityCurve& c : result.curves) levels.insert(c.n_r);
  for (int n_r : levels) {
    std::vector<PlotSeries> series;
    for (const DensityCurve& c : result.curves) {
      if (c.n_r != n_r || c.status != PointStatus::Ok) continue;
      PlotSeries s;
      s.label = "omega=" + format_double(c.omega).substr(0, 6);
      s.x = result.radii;
      s.y = c.rho;
      series.push_back(std::move(s));
    }
    const std::string name = "density_nr" + std::to_string(n_r) + ".svg";
    write_file(dir / name,
               render_line_plot("rho(r), n_r=" + std::to_string(n_r), "r", "rho", series));
    info.files.emplace_back("plot_nr" + std::to_string(n_r), name);
  }
}

int run_scan(const RunConfig& cfg, const fs::path& dir, int workers, bool strict, bool plots,
             ManifestInfo& info) {
  if (!cfg.scan) throw SchemaError("scan", "section required for the scan subcommand");
  const ProblemSpec base = cfg.problem();
  std::vector<int> m_set = cfg.scan->m_set;
  if (m_set.empty()) m_set = {cfg.quantum.m};
  const ScanAxis axis{cfg.scan->parameter, cfg.scan->values};
  const ScanResult result = scan_spectrum(base, axis, m_set, cfg.quantum.requested_levels,
                                          scan_options(cfg, workers));
  write_file(dir / "scan.csv", scan_csv(result));
  info.files.emplace_back("scan_csv", "scan.csv");
  info.rows = static_cast<int>(result.rows.size());
  info.failures = result.failures;
  for (const ScanRow& row : result.rows) {
    if (!row.converged) info.converged_all = false;
  }
  if (plots) emit_scan_plots(result, dir, info);
  return strict && result.failures > 0 ? 1 : 0;
}

int run_density(const RunConfig& cfg, const fs::path& dir, int workers, bool strict, bool plots,
                ManifestInfo& info) {
  if (!cfg.density) throw SchemaError("density", "section required for the density subcommand");
  const ProblemSpec base = cfg.problem();
  ScanOptions opts;
  opts.workers = workers;
  const DensityResult result =
      scan_density(base, cfg.density->omegas, cfg.density->levels, opts);
  write_file(dir / "density.csv", density_csv(result));
  info.files.emplace_back("density_csv", "density.csv");
  info.rows = static_cast<int>(result.curves.size());
  info.failures = result.failures;
  if (plots) emit_density_plots(result, dir, info);
  return strict && result.failures > 0 ? 1 : 0;
}

int run_solve(const RunConfig& cfg, const fs::path& dir, ManifestInfo& info) {
  const Spectrum spectrum = solve_bound_states(cfg.problem());
  write_file(dir / "spectrum.csv", spectrum_csv(spectrum));
  info.files.emplace_back("spectrum_csv", "spectrum.csv");
  info.rows = static_cast<int>(spectrum.lambdas.size());
  return 0;
}

int run_converge(const RunConfig& cfg, const fs::path& dir, ManifestInfo& info) {
  const ConvergenceReport report = converge(cfg.problem(), cfg.convergence.tol_rel,
                                            cfg.convergence.delta_rmax.value_or(-1.0));
  write_file(dir / "converge.csv", converge_csv(report));
  info.files.emplace_back("converge_csv", "converge.csv");
  info.rows = static_cast<int>(report.levels.size());
  info.converged_all = report.all_converged();
  return 0;
}

int run_profile(const RunConfig& cfg, const std::vector<int>& m_values, const fs::path& dir,
                ManifestInfo& info) {
  const std::string csv = profile_csv(cfg, m_values);
  write_file(dir / "profile.csv", csv);
  info.files.emplace_back("profile_csv", "profile.csv");
  info.rows = (cfg.grid.n + 1) * static_cast<int>(m_values.size());
  return 0;
}

}  // namespace

Subcommand subcommand_from_name(const std::string& name) {
  if (name == "solve") return Subcommand::Solve;
  if (name == "scan") return Subcommand::Scan;
  if (name == "density") return Subcommand::Density;
  if (name == "converge") return Subcommand::Converge;
  if (name == "preset") return Subcommand::Preset;
  throw SchemaError("subcommand", "unknown subcommand '" + name + "'");
}

int run(Subcommand subcommand, const RunConfig& config, const RunOptions& options,
        std::ostream& diag) {
  try {
    RunConfig cfg = config;
    if (options.workers) cfg.workers = *options.workers;
    const fs::path dir = options.out_dir.value_or(fs::path(cfg.output.dir));
    fs::create_directories(dir);

    ManifestInfo info;
    int status = 0;
    switch (subcommand) {
      case Subcommand::Solve:
        info.subcommand = "solve";
        status = run_solve(cfg, dir, info);
        break;
      case Subcommand::Scan:
        info.subcommand = "scan";
        status = run_scan(cfg, dir, cfg.workers, options.strict, cfg.output.plots, info);
        break;
      case Subcommand::Density:
        info.subcommand = "density";
        status = run_density(cfg, dir, cfg.workers, options.strict, cfg.output.plots, info);
        break;
      case Subcommand::Converge:
        info.subcommand = "converge";
        status = run_converge(cfg, dir, info);
        break;
      case Subcommand::Preset: {
        // cfg must already be the resolved preset config (see load_config);
        // the name only selects what kind of artifact to produce.
        const std::string name =
            options.preset_name.empty() ? cfg.preset.value_or("") : options.preset_name;
        const Preset& p = preset(name);
        info.subcommand = "preset:" + p.name;
        switch (p.kind) {
          case PresetKind::Scan:
            status = run_scan(cfg, dir, cfg.workers, options.strict, cfg.output.plots, info);
            break;
          case PresetKind::Density:
            status = run_density(cfg, dir, cfg.workers, options.strict, cfg.output.plots, info);
            break;
          case PresetKind::Profile:
            status = run_profile(cfg, p.profile_m, dir, info);
            break;
        }
        break;
      }
    }

    write_file(dir / "manifest.json", manifest_json(cfg, info));
    if (status != 0) {
      diag << "helix-sturm: " << info.failures << " point(s) failed (strict mode)\n";
    }
    return status;
  } catch (const SchemaError& ex) {
    diag << "helix-sturm: " << ex.what() << "\n";
    return 2;
  } catch (const Error& ex) {
    diag << "helix-sturm: " << ex.what() << "\n";
    return 2;
  }
}

}  // namespace helix
