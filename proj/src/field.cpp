#include "ftiss/field.hpp"

#include <cmath>
#include <stdexcept>

namespace ftiss {

Grid1D::Grid1D(int n_cells_) : n_cells(n_cells_), h(1.0 / n_cells_) {
  if (n_cells_ < 1) throw std::invalid_argument("Grid1D: n_cells must be positive");
}

Field::Field(Grid1D grid_) : grid(grid_), values(grid_.n_nodes(), 0.0) {}

Field::Field(Grid1D grid_, std::vector<double> values_)
    : grid(grid_), values(std::move(values_)) {
  if (values.size() != static_cast<std::size_t>(grid.n_nodes()))
    throw std::invalid_argument("Field: values length must be n_cells + 1");
}

void Field::validate() const {
  if (values.size() != static_cast<std::size_t>(grid.n_nodes()))
    throw std::invalid_argument("Field: values length must be n_cells + 1");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("Field: values must be finite");
}

double lp_norm(const Field& f, double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw std::invalid_argument("lp_norm: p must lie in [1, inf)");
  const std::size_t n = f.values.size() - 1;
  double sum = 0.5 * std::pow(std::abs(f.values[0]), p);
  for (std::size_t i = 1; i < n; ++i) sum += std::pow(std::abs(f.values[i]), p);
  sum += 0.5 * std::pow(std::abs(f.values[n]), p);
  return std::pow(f.grid.h * sum, 1.0 / p);
}

double linf_norm(const Field& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

Field derivative(const Field& f) {
  const int n = f.grid.n_cells;
  if (n < 2) throw std::invalid_argument("derivative: grid needs at least 2 cells");
  const double h = f.grid.h;
  Field d(f.grid);
  const auto& w = f.values;
  d.values[0] = (-3.0 * w[0] + 4.0 * w[1] - w[2]) / (2.0 * h);
  for (int i = 1; i < n; ++i) d.values[i] = (w[i + 1] - w[i - 1]) / (2.0 * h);
  d.values[n] = (3.0 * w[n] - 4.0 * w[n - 1] + w[n - 2]) / (2.0 * h);
  return d;
}

double lyapunov_v(const Field& f) {
  const double l2 = lp_norm(f, 2.0);
  return l2 * l2;
}

}  // namespace ftiss
