#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "helix/config.hpp"
#include "helix/errors.hpp"
#include "helix/presets.hpp"
#include "helix/run.hpp"
#include "helix/version.hpp"

namespace {

struct CommonOptions {
  std::string config;
  std::string out;
  int workers = 0;
  bool strict = false;
  std::vector<std::string> extra;  // allows `scan preset fig7`
};

void add_common(CLI::App* sub, CommonOptions& opts, bool config_required) {
  auto* c = sub->add_option("--config", opts.config, "JSON configuration file");
  if (config_required) {
    // a trailing `preset <name>` also satisfies the configuration requirement
    (void)c;
  }
  sub->add_option("--out", opts.out, "output directory (overrides output.dir)");
  sub->add_option("--workers", opts.workers, "worker thread count for scans")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--strict", opts.strict, "exit 1 when any scan point fails");
}

int dispatch(helix::Subcommand sub, const CommonOptions& opts,
             const std::string& preset_name) {
  std::optional<std::filesystem::path> config_file;
  if (!opts.config.empty()) config_file = opts.config;
  std::optional<std::string> preset;
  if (!preset_name.empty()) preset = preset_name;

  const helix::RunConfig config = helix::load_config(config_file, preset);

  helix::RunOptions run_opts;
  if (!opts.out.empty()) run_opts.out_dir = opts.out;
  if (opts.workers > 0) run_opts.workers = opts.workers;
  run_opts.strict = opts.strict;
  run_opts.preset_name = preset_name;
  return helix::run(sub, config, run_opts, std::cerr);
}

std::string parse_trailing_preset(const std::vector<std::string>& extra) {
  if (extra.empty()) return {};
  if (extra.size() == 2 && extra[0] == "preset") return extra[1];
  throw helix::SchemaError("<arguments>",
                           "unexpected positional arguments (did you mean 'preset <name>'?)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"helix-sturm: bound states of the reduced radial problem in a helically "
               "twisted background (finite-difference Sturm-Liouville solver)"};
  app.set_version_flag("--version", std::string("helix-sturm ") + helix::kVersion);
  app.require_subcommand(1);

  CommonOptions solve_opts, scan_opts, density_opts, converge_opts, preset_opts;
  std::string preset_name;

  auto* solve = app.add_subcommand("solve", "single-point spectrum -> spectrum.csv");
  add_common(solve, solve_opts, true);

  auto* scan = app.add_subcommand("scan", "parameter sweep -> scan.csv");
  add_common(scan, scan_opts, true);
  scan->add_option("args", scan_opts.extra, "optional: preset <name>")->expected(0, 2);

  auto* density = app.add_subcommand("density", "probability densities -> density.csv");
  add_common(density, density_opts, true);
  density->add_option("args", density_opts.extra, "optional: preset <name>")->expected(0, 2);

  auto* converge = app.add_subcommand("converge", "stability checks -> converge.csv");
  add_common(converge, converge_opts, true);

  auto* preset_cmd = app.add_subcommand("preset", "run a bundled preset (fig1 .. fig15)");
  preset_cmd->add_option("name", preset_name, "preset name")->required();
  add_common(preset_cmd, preset_opts, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return dispatch(helix::Subcommand::Solve, solve_opts, {});
    if (scan->parsed()) {
      return dispatch(helix::Subcommand::Scan, scan_opts,
                      parse_trailing_preset(scan_opts.extra));
    }
    if (density->parsed()) {
      return dispatch(helix::Subcommand::Density, density_opts,
                      parse_trailing_preset(density_opts.extra));
    }
    if (converge->parsed()) return dispatch(helix::Subcommand::Converge, converge_opts, {});
    if (preset_cmd->parsed()) {
      return dispatch(helix::Subcommand::Preset, preset_opts, preset_name);
    }
  } catch (const helix::SchemaError& ex) {
    std::cerr << "helix-sturm: " << ex.what() << "\n";
    return 2;
  } catch (const helix::Error& ex) {
    std::cerr << "helix-sturm: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
