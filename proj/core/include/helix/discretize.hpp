#pragma once

#include <functional>
#include <vector>

namespace helix {

/// Truncated uniform radial mesh r_i = r_min + i dr, i = 0..N.
/// 0 < r_min < r_max and N >= 3; dr = (r_max - r_min)/N.
class RadialGrid {
 public:
  /// Default domain: [1e-3, 20] with 4000 intervals.
  RadialGrid() : RadialGrid(1e-3, 20.0, 4000) {}

  /// Throws InvalidDomain on r_min <= 0, r_max <= r_min or n_intervals < 3.
  RadialGrid(double r_min, double r_max, int n_intervals);

  double r_min() const noexcept { return r_min_; }
  double r_max() const noexcept { return r_max_; }
  int n_intervals() const noexcept { return n_; }
  double dr() const noexcept { return dr_; }

  /// Node i in [0, N]. The last node is r_max exactly; interior nodes are
  /// generated by fused multiply-add so they never accumulate drift.
  double node(int i) const;

  /// Number of interior nodes, N - 1 (the operator dimension).
  int n_interior() const noexcept { return n_ - 1; }

  /// Interior node i in [0, N-2], i.e. node(i + 1).
  double interior_node(int i) const { return node(i + 1); }

  std::vector<double> interior_nodes() const;

  /// Same domain with the interval count multiplied by `factor`.
  RadialGrid refined(int factor) const;

  friend bool operator==(const RadialGrid&, const RadialGrid&) = default;

 private:
  double r_min_, r_max_, dr_;
  int n_;
};

/// Grid construction entry point; see RadialGrid::RadialGrid.
RadialGrid build_grid(double r_min, double r_max, int n_intervals);

/// Real symmetric tridiagonal representation of -d^2/dr^2 + U(r) over the
/// interior nodes, with Dirichlet conditions imposed by excluding the
/// boundary rows and columns.
struct TridiagonalOperator {
  std::vector<double> diag;     ///< length N-1: 2/dr^2 + U(r_i)
  std::vector<double> offdiag;  ///< length N-2: -1/dr^2
  RadialGrid grid;

  int dim() const noexcept { return static_cast<int>(diag.size()); }
};

/// Samples u pointwise at the interior nodes and assembles the operator.
/// Throws NonFinitePotential at the first node where u is not finite.
TridiagonalOperator assemble(const RadialGrid& grid, const std::function<double(double)>& u);

/// Fills `diag` (resized to N-1) for the given grid and potential without
/// touching the off-diagonal; scans reuse one off-diagonal per grid.
void assemble_diagonal(const RadialGrid& grid, const std::function<double(double)>& u,
                       std::vector<double>& diag);

}  // namespace helix
