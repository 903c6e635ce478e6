#pragma once

#include <cstdint>
#include <vector>

#include "ftiss/field.hpp"

namespace ftiss {

// Exponent triple for the sup-norm interpolation bound
//   |v|_inf <= delta^(-delta) |v_y|_p^delta |v|_q^(1-delta)
// on fields with v(0) = 0, with delta solving delta(1/q + 1 - 1/p) = 1/q.
struct InterpParams {
  double p;
  double q;
  double delta;

  static InterpParams from_pq(double p, double q);
};

// delta = p / (p + p q - q); always lands in (0,1) for p, q in (1, inf).
double delta_from_pq(double p, double q);

struct GapResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs; negative would mean a violation
};

// Requires v(0) = 0 and p, q in (1, inf).
GapResult interpolation_gap(const Field& v, double p, double q);

// Split form used against the sublinear reaction, for v(0) = 0, r in (0,1),
// epsilon > 0:
//   |v|_2^((3+r)/2) <= (3+r) eps / 2 * |v_y|_2^2 + (3+r)/(8 eps) * |v|_{1+r}^{1+r}.
GapResult corollary_gap(const Field& v, double r, double epsilon);

// Band-limited random field vanishing at y = 0:
//   sum over m of a_m sin(pi m y) + b_m (cos(pi m y) - 1),
// with |a_m| <= 1 and |b_m| <= 1/2, so each mode's sup is at most 2.
// Coefficients come from a seeded generator with explicit scaling, so equal
// seeds give bit-identical fields on any platform.
Field random_test_field(std::uint64_t seed, int n_modes, const Grid1D& grid);

struct HarnessRow {
  std::uint64_t seed;
  double a;  // p for interpolation rows, r for corollary rows
  double b;  // q for interpolation rows, epsilon for corollary rows
  double lhs;
  double rhs;
  double margin;
};

struct HarnessOptions {
  int n_fields = 1000;
  int n_cells = 2000;
  int max_modes = 16;  // keeps v_y resolved by the finite differences
  double slack = 1e-3;  // tolerated relative undershoot: margin >= -slack*rhs
  std::uint64_t base_seed = 1;
};

struct HarnessResult {
  std::vector<HarnessRow> interpolation_rows;
  std::vector<HarnessRow> corollary_rows;
  long violations = 0;
  // inf of margin/rhs over the interpolation rows: how tight the constant
  // delta^(-delta) is on this sample (reported, not asserted).
  double min_margin_ratio = 0.0;
};

// Interpolation rows over (p,q) in {1.5, 2, 3}^2 and corollary rows over
// r in {0.2, 0.6, 0.9} x epsilon in {0.1, 1, 10}.
HarnessResult run_inequality_harness(const HarnessOptions& opt);

}  // namespace ftiss
