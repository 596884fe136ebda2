#include "helix/solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "helix/eig.hpp"
#include "helix/errors.hpp"

namespace helix {

std::function<double(double)> ProblemSpec::radial_potential() const {
  if (u_override) return u_override;
  const PhysicalParams p = params;
  const int mm = m;
  const PotentialModel mod = model;
  return [p, mm, mod](double r) { return u_of_r(r, p, mm, mod); };
}

void ProblemSpec::validate() const {
  params.validate();
  helix::validate(model);
  if (levels < 1) throw InvalidParameter("levels must be >= 1");
  if (levels > grid.n_interior()) {
    throw InvalidParameter("levels exceeds the operator dimension N-1");
  }
}

namespace {

Provenance make_provenance(const ProblemSpec& spec) {
  return Provenance{spec.grid.r_min(), spec.grid.r_max(), spec.grid.dr(),
                    spec.grid.n_intervals(), spec.tol.tol_lambda, spec.tol.tol_residual};
}

ProblemSpec with_grid(const ProblemSpec& spec, const RadialGrid& grid) {
  ProblemSpec out = spec;
  out.grid = grid;
  return out;
}

double relative_shift(double perturbed, double reference) {
  return std::abs(perturbed - reference) / std::max(1.0, std::abs(reference));
}

}  // namespace

Spectrum solve_bound_states(const ProblemSpec& spec) {
  spec.validate();
  const TridiagonalOperator op = assemble(spec.grid, spec.radial_potential());
  EigenRequest req{spec.levels, spec.tol.tol_lambda, spec.tol.tol_residual};
  auto pairs = lowest_eigenpairs(op, req);

  // Near-degenerate pairs are ordered by node count.
  for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
    const double tie = 1e3 * spec.tol.tol_lambda * std::max(1.0, std::abs(pairs[i].lambda));
    if (std::abs(pairs[i + 1].lambda - pairs[i].lambda) < tie &&
        count_sign_changes(pairs[i].vector) > count_sign_changes(pairs[i + 1].vector)) {
      std::swap(pairs[i], pairs[i + 1]);
    }
  }

  Spectrum s;
  s.spec = spec;
  s.provenance = make_provenance(spec);
  s.lambdas.reserve(pairs.size());
  s.energies.reserve(pairs.size());
  s.functions.reserve(pairs.size());
  for (auto& pair : pairs) {
    s.lambdas.push_back(pair.lambda);
    s.energies.push_back(energy_from_lambda(pair.lambda, spec.params));
    s.functions.push_back(normalize(std::move(pair.vector), spec.grid));
  }
  return s;
}

double norm_squared(std::span<const double> f, const RadialGrid& grid) {
  const std::size_t full = static_cast<std::size_t>(grid.n_intervals()) + 1;
  const std::size_t interior = static_cast<std::size_t>(grid.n_interior());
  const double dr = grid.dr();
  if (f.size() == full) {
    double s = 0.5 * (f[0] * f[0] + f[full - 1] * f[full - 1]);
    for (std::size_t i = 1; i + 1 < full; ++i) s += f[i] * f[i];
    return dr * s;
  }
  if (f.size() == interior) {
    double s = 0.0;
    for (double x : f) s += x * x;
    return dr * s;  // Dirichlet zeros at both ends
  }
  throw InvalidDomain("sample count must match all nodes (N+1) or interior nodes (N-1)");
}

std::vector<double> normalize(std::vector<double> f, const RadialGrid& grid) {
  const double s = norm_squared(f, grid);
  if (!(s > 0.0)) throw ZeroFunction("cannot normalize an identically zero function");
  const double scale = 1.0 / std::sqrt(s);
  for (auto& x : f) x *= scale;
  return f;
}

std::vector<double> density(const std::vector<double>& f) {
  std::vector<double> rho(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) rho[i] = f[i] * f[i];
  return rho;
}

std::vector<double> reconstruct_xi(const std::vector<double>& f, const RadialGrid& grid) {
  const std::size_t full = static_cast<std::size_t>(grid.n_intervals()) + 1;
  const std::size_t interior = static_cast<std::size_t>(grid.n_interior());
  if (f.size() != full && f.size() != interior) {
    throw InvalidDomain("sample count must match all nodes (N+1) or interior nodes (N-1)");
  }
  const int offset = f.size() == interior ? 1 : 0;
  std::vector<double> xi(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    xi[i] = f[i] / std::sqrt(grid.node(static_cast<int>(i) + offset));
  }
  return xi;
}

int count_sign_changes(std::span<const double> f, double rel_threshold) {
  double amax = 0.0;
  for (double x : f) amax = std::max(amax, std::abs(x));
  if (amax == 0.0) return 0;
  const double threshold = rel_threshold * amax;
  int changes = 0;
  int previous = 0;
  for (double x : f) {
    if (std::abs(x) <= threshold) continue;
    const int sign = x > 0.0 ? 1 : -1;
    if (previous != 0 && sign != previous) ++changes;
    previous = sign;
  }
  return changes;
}

namespace detail {

StabilityShifts stability_shifts(const ProblemSpec& spec, const Spectrum& baseline,
                                 double delta_rmax) {
  const RadialGrid& g = spec.grid;
  if (delta_rmax <= 0.0) delta_rmax = 0.25 * (g.r_max() - g.r_min());

  const Spectrum refined = solve_bound_states(with_grid(spec, g.refined(2)));

  const int n_add = std::max<int>(1, static_cast<int>(std::llround(delta_rmax / g.dr())));
  const RadialGrid enlarged_grid(g.r_min(), g.r_min() + (g.n_intervals() + n_add) * g.dr(),
                                 g.n_intervals() + n_add);
  const Spectrum enlarged = solve_bound_states(with_grid(spec, enlarged_grid));

  const RadialGrid reduced_grid(g.r_min() / 2.0, g.r_max(), g.n_intervals());
  const Spectrum reduced = solve_bound_states(with_grid(spec, reduced_grid));

  StabilityShifts out;
  const std::size_t levels = baseline.lambdas.size();
  out.refined.resize(levels);
  out.enlarged.resize(levels);
  out.reduced.resize(levels);
  for (std::size_t n = 0; n < levels; ++n) {
    out.refined[n] = relative_shift(refined.lambdas[n], baseline.lambdas[n]);
    out.enlarged[n] = relative_shift(enlarged.lambdas[n], baseline.lambdas[n]);
    out.reduced[n] = relative_shift(reduced.lambdas[n], baseline.lambdas[n]);
  }
  return out;
}

}  // namespace detail

bool ConvergenceReport::all_converged() const {
  return std::all_of(levels.begin(), levels.end(),
                     [](const LevelShifts& l) { return l.converged; });
}

ConvergenceReport converge(const ProblemSpec& spec, double tol_rel, double delta_rmax) {
  if (!(tol_rel > 0.0)) throw InvalidParameter("tol_rel must be > 0");
  const RadialGrid& g = spec.grid;
  if (delta_rmax <= 0.0) delta_rmax = 0.25 * (g.r_max() - g.r_min());

  ConvergenceReport report;
  report.tol_rel = tol_rel;
  report.delta_rmax = delta_rmax;
  report.baseline = solve_bound_states(spec);

  const auto shifts = detail::stability_shifts(spec, report.baseline, delta_rmax);
  const Spectrum refined2 = solve_bound_states(with_grid(spec, g.refined(2)));
  const Spectrum refined4 = solve_bound_states(with_grid(spec, g.refined(4)));

  report.levels.resize(report.baseline.lambdas.size());
  for (std::size_t n = 0; n < report.levels.size(); ++n) {
    LevelShifts& l = report.levels[n];
    l.refined_grid = shifts.refined[n];
    l.enlarged_domain = shifts.enlarged[n];
    l.reduced_cutoff = shifts.reduced[n];
    const double d12 = report.baseline.lambdas[n] - refined2.lambdas[n];
    const double d24 = refined2.lambdas[n] - refined4.lambdas[n];
    l.estimated_order = (d24 != 0.0 && d12 / d24 > 0.0)
                            ? std::log2(d12 / d24)
                            : std::numeric_limits<double>::quiet_NaN();
    l.converged = l.refined_grid < tol_rel && l.enlarged_domain < tol_rel &&
                  l.reduced_cutoff < tol_rel;
  }
  return report;
}

}  // namespace helix
