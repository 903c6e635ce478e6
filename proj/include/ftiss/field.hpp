#pragma once

#include <vector>

namespace ftiss {

// Uniform grid on [0,1] with n_cells+1 nodes. node(i) = i / n_cells, so both
// endpoints are hit exactly.
struct Grid1D {
  explicit Grid1D(int n_cells_);

  int n_cells;
  double h;  // 1.0 / n_cells

  int n_nodes() const { return n_cells + 1; }
  double node(int i) const { return static_cast<double>(i) / n_cells; }

  bool operator==(const Grid1D&) const = default;
};

// Nodal samples of a scalar function on a Grid1D.
struct Field {
  explicit Field(Grid1D grid_);  // zero field
  Field(Grid1D grid_, std::vector<double> values_);

  Grid1D grid;
  std::vector<double> values;

  void validate() const;  // size and finiteness
};

// Composite-trapezoid L^p norm, p in [1, inf). Exact for constants.
double lp_norm(const Field& f, double p);

double linf_norm(const Field& f);

// Second-order finite differences: central in the interior, one-sided
// three-point stencils at the endpoints. Exact on affine fields.
Field derivative(const Field& f);

// Squared L2 norm.
double lyapunov_v(const Field& f);

}  // namespace ftiss
