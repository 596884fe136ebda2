#include "helix/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "helix/errors.hpp"

namespace helix {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Static work distribution over an atomic counter. Results are written into
/// preallocated slots by task index, so the output never depends on worker
/// count or scheduling.
void run_pool(int workers, int n_tasks, const std::function<void(int)>& task) {
  if (n_tasks <= 0) return;
  workers = std::clamp(workers, 1, n_tasks);
  if (workers == 1) {
    for (int i = 0; i < n_tasks; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto body = [&] {
    while (true) {
      const int i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n_tasks) break;
      try {
        task(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) threads.emplace_back(body);
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

Provenance make_provenance(const ProblemSpec& spec) {
  return Provenance{spec.grid.r_min(), spec.grid.r_max(), spec.grid.dr(),
                    spec.grid.n_intervals(), spec.tol.tol_lambda, spec.tol.tol_residual};
}

bool model_matches(const PotentialModel& model, ScanParameter p) {
  switch (p) {
    case ScanParameter::CornellA:
    case ScanParameter::CornellB:
      return std::holds_alternative<Cornell>(model);
    case ScanParameter::KratzerA:
    case ScanParameter::KratzerD:
      return std::holds_alternative<Kratzer>(model);
    case ScanParameter::MorseA:
    case ScanParameter::MorseR0:
      return std::holds_alternative<MorseSmall>(model);
    default:
      return true;
  }
}

}  // namespace

const char* scan_parameter_name(ScanParameter p) {
  switch (p) {
    case ScanParameter::Omega: return "omega";
    case ScanParameter::M: return "m";
    case ScanParameter::CornellA: return "cornell_a";
    case ScanParameter::CornellB: return "cornell_b";
    case ScanParameter::KratzerA: return "kratzer_A";
    case ScanParameter::KratzerD: return "kratzer_D";
    case ScanParameter::MorseA: return "morse_a";
    case ScanParameter::MorseR0: return "morse_r0";
    case ScanParameter::B0: return "B0";
    default: return "PhiB";
  }
}

ScanParameter scan_parameter_from_name(const std::string& name) {
  static const std::pair<const char*, ScanParameter> table[] = {
      {"omega", ScanParameter::Omega},     {"m", ScanParameter::M},
      {"cornell_a", ScanParameter::CornellA}, {"cornell_b", ScanParameter::CornellB},
      {"kratzer_A", ScanParameter::KratzerA}, {"kratzer_D", ScanParameter::KratzerD},
      {"morse_a", ScanParameter::MorseA},  {"morse_r0", ScanParameter::MorseR0},
      {"B0", ScanParameter::B0},           {"PhiB", ScanParameter::PhiB},
  };
  for (const auto& [n, p] : table) {
    if (name == n) return p;
  }
  throw InvalidParameter("unknown scan parameter '" + name + "'");
}

void ScanAxis::validate() const {
  if (values.empty()) throw InvalidParameter("scan axis must hold at least one value");
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidParameter("scan axis values must be finite");
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      throw InvalidParameter("scan axis values must be strictly ascending");
    }
  }
  if (parameter == ScanParameter::M) {
    for (double v : values) {
      if (v != std::floor(v)) throw InvalidParameter("m axis values must be integers");
    }
  }
}

ProblemSpec apply_axis(ProblemSpec spec, ScanParameter parameter, double value) {
  if (!model_matches(spec.model, parameter)) {
    throw InvalidParameter(std::string("axis '") + scan_parameter_name(parameter) +
                           "' does not apply to model '" + model_name(spec.model) + "'");
  }
  switch (parameter) {
    case ScanParameter::Omega: spec.params.omega = value; break;
    case ScanParameter::M: spec.m = static_cast<int>(std::llround(value)); break;
    case ScanParameter::B0: spec.params.B0 = value; break;
    case ScanParameter::PhiB: spec.params.PhiB = value; break;
    case ScanParameter::CornellA: std::get<Cornell>(spec.model).a = value; break;
    case ScanParameter::CornellB: std::get<Cornell>(spec.model).b = value; break;
    case ScanParameter::KratzerA: std::get<Kratzer>(spec.model).A = value; break;
    case ScanParameter::KratzerD: std::get<Kratzer>(spec.model).D = value; break;
    case ScanParameter::MorseA: std::get<MorseSmall>(spec.model).a = value; break;
    case ScanParameter::MorseR0: std::get<MorseSmall>(spec.model).r0 = value; break;
  }
  return spec;
}

ScanResult scan_spectrum(const ProblemSpec& base, const ScanAxis& axis,
                         const std::vector<int>& m_set, int levels,
                         const ScanOptions& options) {
  axis.validate();
  if (m_set.empty()) throw InvalidParameter("m_set must hold at least one entry");
  if (axis.parameter == ScanParameter::M && m_set.size() > 1) {
    throw InvalidParameter("an m-axis scan cannot also sweep an m_set");
  }
  if (levels < 1) throw InvalidParameter("levels must be >= 1");
  if (!model_matches(base.model, axis.parameter)) {
    throw InvalidParameter(std::string("axis '") + scan_parameter_name(axis.parameter) +
                           "' does not apply to model '" + model_name(base.model) + "'");
  }

  ScanResult result;
  result.axis = axis;
  result.m_set = m_set;
  result.levels = levels;
  result.base = base;
  result.provenance = make_provenance(base);

  const int n_values = static_cast<int>(axis.values.size());
  const int n_m = static_cast<int>(m_set.size());
  const int n_points = n_values * n_m;
  result.rows.resize(static_cast<std::size_t>(n_points) * static_cast<std::size_t>(levels));

  run_pool(options.workers, n_points, [&](int point) {
    const int vi = point / n_m;
    const int mi = point % n_m;
    const double value = axis.values[static_cast<std::size_t>(vi)];

    const int row_m = axis.parameter == ScanParameter::M
                          ? static_cast<int>(std::llround(value))
                          : m_set[static_cast<std::size_t>(mi)];
    ProblemSpec spec = base;
    spec.m = row_m;
    spec.levels = levels;
    const std::size_t row0 = static_cast<std::size_t>(point) * static_cast<std::size_t>(levels);
    try {
      spec = apply_axis(spec, axis.parameter, value);
      spec.validate();
      const Spectrum spectrum = solve_bound_states(spec);
      std::vector<bool> converged(static_cast<std::size_t>(levels), false);
      if (options.check_convergence) {
        const auto shifts = detail::stability_shifts(spec, spectrum, options.delta_rmax);
        for (int l = 0; l < levels; ++l) {
          const auto li = static_cast<std::size_t>(l);
          converged[li] = shifts.refined[li] < options.tol_rel &&
                          shifts.enlarged[li] < options.tol_rel &&
                          shifts.reduced[li] < options.tol_rel;
        }
      }
      for (int l = 0; l < levels; ++l) {
        const auto li = static_cast<std::size_t>(l);
        result.rows[row0 + li] =
            ScanRow{value,   row_m, l, spectrum.lambdas[li], spectrum.energies[li],
                    converged[li], PointStatus::Ok, {}};
      }
    } catch (const Error& ex) {
      for (int l = 0; l < levels; ++l) {
        result.rows[row0 + static_cast<std::size_t>(l)] =
            ScanRow{value, row_m, l, kNaN, kNaN, false, PointStatus::Failed, ex.what()};
      }
    }
  });

  for (std::size_t i = 0; i < result.rows.size(); i += static_cast<std::size_t>(levels)) {
    if (result.rows[i].status == PointStatus::Failed) ++result.failures;
  }
  return result;
}

DensityResult scan_density(const ProblemSpec& base, const std::vector<double>& omegas,
                           const std::vector<int>& n_r_set, const ScanOptions& options) {
  if (omegas.empty()) throw InvalidParameter("density scan needs at least one omega");
  for (std::size_t i = 1; i < omegas.size(); ++i) {
    if (!(omegas[i] > omegas[i - 1])) {
      throw InvalidParameter("density omegas must be strictly ascending");
    }
  }
  if (n_r_set.empty()) throw InvalidParameter("density scan needs at least one level index");
  for (std::size_t i = 0; i < n_r_set.size(); ++i) {
    if (n_r_set[i] < 0) throw InvalidParameter("level indices must be >= 0");
    if (i > 0 && n_r_set[i] <= n_r_set[i - 1]) {
      throw InvalidParameter("level indices must be strictly ascending");
    }
  }

  DensityResult result;
  result.grid = base.grid;
  result.radii = base.grid.interior_nodes();
  result.base = base;
  result.provenance = make_provenance(base);

  const int levels_needed = n_r_set.back() + 1;
  const int n_curves_per_omega = static_cast<int>(n_r_set.size());
  result.curves.resize(omegas.size() * n_r_set.size());

  run_pool(options.workers, static_cast<int>(omegas.size()), [&](int oi) {
    const double omega = omegas[static_cast<std::size_t>(oi)];
    ProblemSpec spec = base;
    spec.params.omega = omega;
    spec.levels = levels_needed;
    const std::size_t c0 = static_cast<std::size_t>(oi) * static_cast<std::size_t>(n_curves_per_omega);
    try {
      spec.validate();
      const Spectrum spectrum = solve_bound_states(spec);
      for (int j = 0; j < n_curves_per_omega; ++j) {
        const int n_r = n_r_set[static_cast<std::size_t>(j)];
        const auto& f = spectrum.functions[static_cast<std::size_t>(n_r)];
        DensityCurve curve;
        curve.omega = omega;
        curve.n_r = n_r;
        curve.rho = density(f);
        curve.norm_check = norm_squared(f, spec.grid);
        curve.node_count = count_sign_changes(f);
        result.curves[c0 + static_cast<std::size_t>(j)] = std::move(curve);
      }
    } catch (const Error& ex) {
      for (int j = 0; j < n_curves_per_omega; ++j) {
        DensityCurve curve;
        curve.omega = omega;
        curve.n_r = n_r_set[static_cast<std::size_t>(j)];
        curve.status = PointStatus::Failed;
        curve.error = ex.what();
        result.curves[c0 + static_cast<std::size_t>(j)] = std::move(curve);
      }
    }
  });

  for (std::size_t i = 0; i < result.curves.size();
       i += static_cast<std::size_t>(n_curves_per_omega)) {
    if (result.curves[i].status == PointStatus::Failed) ++result.failures;
  }
  return result;
}

MAsymmetryReport verify_m_asymmetry(const ProblemSpec& base, int m) {
  auto solve_for = [&](int mm, bool gauge_off) {
    ProblemSpec spec = base;
    spec.m = mm;
    if (gauge_off) spec.params.e = 0.0;
    return solve_bound_states(spec);
  };

  MAsymmetryReport report;
  report.m = m;
  report.energies_plus = solve_for(m, false).energies;
  report.energies_minus = solve_for(-m, false).energies;
  report.energies_plus_e0 = solve_for(m, true).energies;
  report.energies_minus_e0 = solve_for(-m, true).energies;

  for (std::size_t n = 0; n < report.energies_plus.size(); ++n) {
    report.max_diff_base = std::max(
        report.max_diff_base, std::abs(report.energies_plus[n] - report.energies_minus[n]));
    report.max_diff_e0 = std::max(
        report.max_diff_e0, std::abs(report.energies_plus_e0[n] - report.energies_minus_e0[n]));
  }
  report.exact_symmetry_expected =
      m == 0 || base.params.omega * base.params.k == 0.0;
  return report;
}

}  // namespace helix
