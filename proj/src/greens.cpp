#include "ftiss/greens.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ftiss {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRescaleRho = 30.0;

using cd = std::complex<double>;

// sinh(z) e^(-shift) and cosh(z) e^(-shift). With shift = Re lambda and
// |Re z| <= shift, every exponential argument has nonpositive real part.
cd scaled_sinh(cd z, double shift) {
  return 0.5 * (std::exp(z - shift) - std::exp(-z - shift));
}
cd scaled_cosh(cd z, double shift) {
  return 0.5 * (std::exp(z - shift) + std::exp(-z - shift));
}

}  // namespace

std::complex<double> ComplexSpectral::lambda() const { return std::polar(rho, theta); }

void ComplexSpectral::validate() const {
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw std::invalid_argument("ComplexSpectral: rho must be positive");
  if (!(std::abs(theta) < 0.5 * kPi))
    throw std::invalid_argument("ComplexSpectral: theta must lie in (-pi/2, pi/2)");
}

std::complex<double> greens_eval(const ComplexSpectral& lam, double x, double y) {
  lam.validate();
  if (!(x >= 0.0 && x <= 1.0) || !(y >= 0.0 && y <= 1.0))
    throw std::invalid_argument("greens_eval: x and y must lie in [0,1]");
  const cd L = lam.lambda();
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  const cd arg1 = L * (x + y - 1.0);
  const cd arg2 = L * (1.0 - hi + lo);
  if (lam.rho > kRescaleRho) {
    const double shift = L.real();
    return (scaled_sinh(arg1, shift) + scaled_sinh(arg2, shift)) /
           (2.0 * L * scaled_cosh(L, shift));
  }
  return (std::sinh(arg1) + std::sinh(arg2)) / (2.0 * L * std::cosh(L));
}

double l2_norm(const ComplexField& f) {
  const std::size_t n = f.values.size() - 1;
  double sum = 0.5 * std::norm(f.values[0]);
  for (std::size_t i = 1; i < n; ++i) sum += std::norm(f.values[i]);
  sum += 0.5 * std::norm(f.values[n]);
  return std::sqrt(f.grid.h * sum);
}

ComplexField bvp_solve(const ComplexSpectral& lam, const Field& g) {
  lam.validate();
  g.validate();
  if (g.grid.n_cells < 100)
    throw std::invalid_argument("bvp_solve: grid must have at least 100 cells");
  if (lam.rho * std::cos(lam.theta) > 300.0)
    throw std::invalid_argument("bvp_solve: Re lambda too large for this quadrature");

  const int n = g.grid.n_cells;
  const double h = g.grid.h;
  const cd L = lam.lambda();

  // left(x) = sinh(lambda x) satisfies the Dirichlet end, right(y) =
  // cosh(lambda (y-1)) the Neumann end; their product over lambda cosh lambda
  // is the kernel, continuous across the diagonal.
  std::vector<cd> left(n + 1), right(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double yi = g.grid.node(i);
    left[i] = std::sinh(L * yi);
    right[i] = std::cosh(L * (yi - 1.0));
  }
  const cd wronskian = L * std::cosh(L);

  const auto weight = [&](int i) { return (i == 0 || i == n) ? 0.5 * h : h; };
  std::vector<cd> prefix(n + 1), suffix(n + 1);
  cd acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    acc += weight(i) * left[i] * g.values[i];
    prefix[i] = acc;
  }
  acc = 0.0;
  for (int i = n; i >= 0; --i) {
    acc += weight(i) * right[i] * g.values[i];
    suffix[i] = acc;
  }

  ComplexField u{g.grid, std::vector<cd>(n + 1)};
  for (int i = 0; i <= n; ++i) {
    // prefix and suffix both carry the diagonal node; drop one copy
    const cd diagonal = weight(i) * left[i] * right[i] * g.values[i];
    u.values[i] = (right[i] * prefix[i] + left[i] * suffix[i] - diagonal) / wronskian;
  }
  return u;
}

ScanResult sector_bound_scan(double theta0, std::span<const double> rho_grid,
                             int theta_samples, std::span<const Field> g_suite) {
  if (!(theta0 > 0.25 * kPi && theta0 < 0.5 * kPi))
    throw std::invalid_argument("sector_bound_scan: theta0 must lie in (pi/4, pi/2)");
  if (rho_grid.empty())
    throw std::invalid_argument("sector_bound_scan: rho grid is empty");
  if (theta_samples < 1)
    throw std::invalid_argument("sector_bound_scan: theta_samples must be positive");
  if (g_suite.empty())
    throw std::invalid_argument("sector_bound_scan: empty g suite");

  std::vector<double> thetas;
  if (theta_samples == 1) {
    thetas.push_back(0.0);
  } else {
    for (int j = 0; j < theta_samples; ++j)
      thetas.push_back(0.9 * theta0 *
                       (-1.0 + 2.0 * j / static_cast<double>(theta_samples - 1)));
  }

  ScanResult res;
  for (double rho : rho_grid) {
    for (double theta : thetas) {
      const ComplexSpectral lam{rho, theta};
      for (int gi = 0; gi < static_cast<int>(g_suite.size()); ++gi) {
        const double g_norm = lp_norm(g_suite[gi], 2.0);
        double ratio = 0.0;
        if (g_norm > 0.0) {
          const ComplexField u = bvp_solve(lam, g_suite[gi]);
          ratio = rho * rho * l2_norm(u) / g_norm;
        }
        res.table.push_back({rho, theta, gi, ratio});
        res.m_hat = std::max(res.m_hat, ratio);
      }
    }
  }
  return res;
}

}  // namespace ftiss
