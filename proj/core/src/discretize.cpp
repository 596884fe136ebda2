#include "helix/discretize.hpp"

#include <cmath>
#include <sstream>

#include "helix/errors.hpp"

namespace helix {

RadialGrid::RadialGrid(double r_min, double r_max, int n_intervals)
    : r_min_(r_min), r_max_(r_max), n_(n_intervals) {
  if (!(std::isfinite(r_min) && std::isfinite(r_max))) {
    throw InvalidDomain("grid endpoints must be finite");
  }
  if (r_min <= 0.0) {
    throw InvalidDomain("r_min must be strictly positive (inner cutoff regularizes the "
                        "1/r and 1/r^2 terms)");
  }
  if (r_max <= r_min) throw InvalidDomain("r_max must exceed r_min");
  if (n_intervals < 3) throw InvalidDomain("need at least 3 grid intervals");
  dr_ = (r_max - r_min) / static_cast<double>(n_intervals);
  if (!(dr_ > 0.0) || node(1) <= r_min_) {
    throw InvalidDomain("grid spacing underflows; reduce the interval count");
  }
}

double RadialGrid::node(int i) const {
  if (i == n_) return r_max_;
  return std::fma(static_cast<double>(i), dr_, r_min_);
}

std::vector<double> RadialGrid::interior_nodes() const {
  std::vector<double> r(static_cast<std::size_t>(n_interior()));
  for (int i = 0; i < n_interior(); ++i) r[static_cast<std::size_t>(i)] = interior_node(i);
  return r;
}

RadialGrid RadialGrid::refined(int factor) const {
  return RadialGrid(r_min_, r_max_, n_ * factor);
}

RadialGrid build_grid(double r_min, double r_max, int n_intervals) {
  return RadialGrid(r_min, r_max, n_intervals);
}

TridiagonalOperator assemble(const RadialGrid& grid, const std::function<double(double)>& u) {
  TridiagonalOperator op{.diag = {}, .offdiag = {}, .grid = grid};
  assemble_diagonal(grid, u, op.diag);
  const double off = -1.0 / (grid.dr() * grid.dr());
  op.offdiag.assign(static_cast<std::size_t>(grid.n_interior() - 1), off);
  return op;
}

void assemble_diagonal(const RadialGrid& grid, const std::function<double(double)>& u,
                       std::vector<double>& diag) {
  const int n = grid.n_interior();
  const double stencil = 2.0 / (grid.dr() * grid.dr());
  diag.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double r = grid.interior_node(i);
    const double ui = u(r);
    if (!std::isfinite(ui)) throw NonFinitePotential(r);
    diag[static_cast<std::size_t>(i)] = stencil + ui;
  }
}

}  // namespace helix
