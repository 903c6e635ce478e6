#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ftiss/field.hpp"

namespace ftiss {

// Spectral point lambda = rho e^(i theta) with Re lambda > 0.
struct ComplexSpectral {
  double rho = 1.0;    // > 0
  double theta = 0.0;  // in (-pi/2, pi/2)

  std::complex<double> lambda() const;
  void validate() const;
};

// Kernel inverting lambda^2 u - u'' = g with u(0) = 0, u'(1) = 0:
//   [sinh(lambda(x+y-1)) + sinh(lambda(1 - |x-y|))] / (2 lambda cosh lambda).
// Symmetric in (x,y) and zero at x = 0 by construction. For rho > 30 the
// sinh/cosh quotient is evaluated with exponentials rescaled by e^(-Re lambda)
// so no intermediate overflows or loses the leading digits.
std::complex<double> greens_eval(const ComplexSpectral& lam, double x, double y);

struct ComplexField {
  Grid1D grid;
  std::vector<std::complex<double>> values;
};

double l2_norm(const ComplexField& f);

// Trapezoid quadrature of the kernel against g, split at the diagonal kink.
// Evaluated through the separable form of the kernel
//   G(x,y) = sinh(lambda min(x,y)) cosh(lambda (max(x,y)-1)) / (lambda cosh lambda),
// which turns the solve into prefix/suffix sums, O(n) per right-hand side.
ComplexField bvp_solve(const ComplexSpectral& lam, const Field& g);

struct ScanRow {
  double rho;
  double theta;
  int g_id;
  double ratio;  // |lambda|^2 * |u|_2 / |g|_2
};

struct ScanResult {
  double m_hat = 0.0;
  std::vector<ScanRow> table;
};

// Empirical bound on |nu| * |(nu - A)^{-1} g| / |g| with nu = lambda^2,
// sampled over theta in [-0.9 theta0, 0.9 theta0] and the given rho grid.
// The solve works with the square-root parameter lambda; the reported ratio
// uses the resolvent argument nu = lambda^2. Only the derivation region
// Re lambda > 0 is sampled; the wider sector |arg nu| < 2 theta0 is not
// probed by this scan.
ScanResult sector_bound_scan(double theta0, std::span<const double> rho_grid,
                             int theta_samples, std::span<const Field> g_suite);

}  // namespace ftiss
