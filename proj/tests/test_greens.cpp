#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "ftiss/greens.hpp"
#include "ftiss/inequality.hpp"

using namespace ftiss;

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

// Straight trapezoid of the kernel against g; the reference for bvp_solve.
ComplexField naive_solve(const ComplexSpectral& lam, const Field& g) {
  const int n = g.grid.n_cells;
  ComplexField u{g.grid, std::vector<cd>(n + 1)};
  for (int i = 0; i <= n; ++i) {
    cd acc = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double w = (j == 0 || j == n) ? 0.5 * g.grid.h : g.grid.h;
      acc += w * greens_eval(lam, g.grid.node(i), g.grid.node(j)) * g.values[j];
    }
    u.values[i] = acc;
  }
  return u;
}

}  // namespace

TEST_CASE("ComplexSpectral validation") {
  const ComplexSpectral bad_rho{0.0, 0.0};
  CHECK_THROWS_AS(bad_rho.validate(), std::invalid_argument);
  const ComplexSpectral bad_theta{1.0, 1.6};
  CHECK_THROWS_AS(bad_theta.validate(), std::invalid_argument);
  const ComplexSpectral lam{2.0, 0.5};
  CHECK(lam.lambda().real() == doctest::Approx(2.0 * std::cos(0.5)));
  CHECK(lam.lambda().real() > 0.0);
}

TEST_CASE("kernel boundary and symmetry") {
  std::mt19937_64 rng(9);
  const double rhos[] = {0.3, 1.0, 7.0, 50.0};  // 50 exercises the rescaled path
  for (double rho : rhos) {
    for (double theta : {0.0, -0.9, 1.1}) {
      const ComplexSpectral lam{rho, theta};
      for (int i = 0; i < 30; ++i) {
        const double x = uniform(rng, 0.0, 1.0);
        const double y = uniform(rng, 0.0, 1.0);
        CHECK(std::abs(greens_eval(lam, 0.0, y)) <= 1e-14);
        CHECK(std::abs(greens_eval(lam, x, y) - greens_eval(lam, y, x)) <= 1e-14);
      }
    }
  }
}

TEST_CASE("kernel Neumann end by finite differences") {
  std::mt19937_64 rng(13);
  const double delta = 1e-4;
  for (double rho : {0.5, 1.0, 5.0, 10.0}) {
    const ComplexSpectral lam{rho, 0.4};
    for (int i = 0; i < 10; ++i) {
      const double y = uniform(rng, 0.05, 0.95);
      const cd fd = (greens_eval(lam, 1.0, y) - greens_eval(lam, 1.0 - delta, y)) / delta;
      CHECK(std::abs(fd) <= 1e-3);
    }
  }
}

TEST_CASE("kernel point values and continuity at the diagonal") {
  const ComplexSpectral one{1.0, 0.0};
  CHECK(std::abs(greens_eval(one, 0.5, 0.5) - cd(0.3807970779778824, 0.0)) <= 1e-13);
  for (double x : {0.2, 0.6, 0.9}) {
    const cd below = greens_eval(one, x, x - 1e-9);
    const cd above = greens_eval(one, x, x + 1e-9);
    CHECK(std::abs(below - above) <= 1e-8);
  }
}

TEST_CASE("rescaled evaluation matches the plain formula where both work") {
  const ComplexSpectral lam{31.0, 0.3};  // just above the rescale threshold
  const cd L = lam.lambda();
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    const double x = uniform(rng, 0.0, 1.0);
    const double y = uniform(rng, 0.0, 1.0);
    const double lo = std::min(x, y), hi = std::max(x, y);
    const cd plain = (std::sinh(L * (x + y - 1.0)) + std::sinh(L * (1.0 - hi + lo))) /
                     (2.0 * L * std::cosh(L));
    const cd got = greens_eval(lam, x, y);
    CHECK(std::abs(got - plain) <= 1e-10 * std::max(1.0, std::abs(plain)));
  }
}

TEST_CASE("modulus estimates for sinh and cosh") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const double a = uniform(rng, -3.0, 3.0);
    const double b = uniform(rng, -1.4, 1.4);  // keeps cos(b) > 0
    const cd z(a, b);
    CHECK(std::abs(std::sinh(z)) <= std::sqrt(std::cosh(2.0 * a)));
    CHECK(std::abs(std::cosh(z)) >= std::cosh(a) * std::cos(b));
  }
}

TEST_CASE("bvp_solve") {
  SUBCASE("zero load gives the zero solution") {
    const auto u = bvp_solve(ComplexSpectral{1.0, 0.0}, Field(Grid1D(128)));
    for (const cd& v : u.values) CHECK(std::abs(v) == 0.0);
  }
  SUBCASE("closed form for g == 1 at lambda = 1") {
    const Grid1D g(512);
    Field ones(g);
    for (auto& v : ones.values) v = 1.0;
    const auto u = bvp_solve(ComplexSpectral{1.0, 0.0}, ones);
    double worst = 0.0;
    for (int i = 0; i <= g.n_cells; ++i) {
      const double x = g.node(i);
      const double exact =
          1.0 - (std::exp(x) + std::exp(2.0 - x)) / (1.0 + std::exp(2.0));
      worst = std::max(worst, std::abs(u.values[i] - cd(exact, 0.0)));
    }
    CHECK(worst <= 1e-4);
  }
  SUBCASE("matches the direct kernel quadrature") {
    const Grid1D g(120);
    const Field load = random_test_field(41, 6, g);
    for (double theta : {0.0, 0.8}) {
      const ComplexSpectral lam{2.5, theta};
      const auto fast = bvp_solve(lam, load);
      const auto slow = naive_solve(lam, load);
      for (int i = 0; i <= g.n_cells; ++i)
        CHECK(std::abs(fast.values[i] - slow.values[i]) <= 1e-12);
    }
  }
  SUBCASE("finite-difference residual reproduces the load") {
    const Grid1D g(2000);
    const Field load = random_test_field(7, 6, g);
    const ComplexSpectral lam{1.0, 0.3};
    const auto u = bvp_solve(lam, load);
    const cd nu = lam.lambda() * lam.lambda();
    double num = 0.0, den = 0.0;
    for (int i = 1; i < g.n_cells; ++i) {
      const cd upp =
          (u.values[i + 1] - 2.0 * u.values[i] + u.values[i - 1]) / (g.h * g.h);
      num += std::norm(nu * u.values[i] - upp - load.values[i]);
      den += load.values[i] * load.values[i];
    }
    CHECK(std::sqrt(num / den) <= 1e-3);
  }
  SUBCASE("grid size guard") {
    CHECK_THROWS_AS(bvp_solve(ComplexSpectral{1.0, 0.0}, Field(Grid1D(50))),
                    std::invalid_argument);
  }
}

TEST_CASE("solution strength decays like 1/lambda^2 for real lambda") {
  const Grid1D g(400);
  Field load(g);
  for (int i = 0; i <= g.n_cells; ++i)
    load.values[i] = std::sin(0.5 * kPi * g.node(i));
  const double g_norm = lp_norm(load, 2.0);
  std::vector<double> log_rho, log_norm;
  for (double rho : {10.0, 20.0, 40.0}) {
    const auto u = bvp_solve(ComplexSpectral{rho, 0.0}, load);
    log_rho.push_back(std::log(rho));
    log_norm.push_back(std::log(l2_norm(u) / g_norm));
  }
  const double slope = (log_norm.back() - log_norm.front()) /
                       (log_rho.back() - log_rho.front());
  CHECK(std::abs(slope + 2.0) <= 0.2);
}

TEST_CASE("sector scan") {
  const Grid1D g(200);
  std::vector<Field> suite;
  for (int s = 0; s < 10; ++s) suite.push_back(random_test_field(100 + s, 8, g));
  suite.push_back(Field(g));  // zero rows report ratio 0
  const std::vector<double> rho_grid = {0.1, 1.0, 10.0, 100.0};
  const auto scan = sector_bound_scan(kPi / 3.0, rho_grid, 3, suite);

  CHECK(scan.table.size() == rho_grid.size() * 3 * suite.size());
  CHECK(std::isfinite(scan.m_hat));
  CHECK(scan.m_hat > 0.0);
  double top1 = 0.0, top2 = 0.0;
  for (const auto& row : scan.table) {
    CHECK(std::isfinite(row.ratio));
    CHECK(std::abs(row.theta) < kPi / 3.0);
    if (row.g_id == static_cast<int>(suite.size()) - 1) CHECK(row.ratio == 0.0);
    if (row.rho == 10.0) top1 = std::max(top1, row.ratio);
    if (row.rho == 100.0) top2 = std::max(top2, row.ratio);
  }
  // the bound saturates at large rho: the top decades agree within 2x
  CHECK(top2 <= 2.0 * top1);
  CHECK(top1 <= 2.0 * top2);
  CHECK(scan.m_hat == std::max(top1, top2));

  SUBCASE("input validation") {
    CHECK_THROWS_AS(sector_bound_scan(0.2, rho_grid, 3, suite), std::invalid_argument);
    CHECK_THROWS_AS(sector_bound_scan(kPi / 3.0, {}, 3, suite), std::invalid_argument);
    CHECK_THROWS_AS(sector_bound_scan(kPi / 3.0, rho_grid, 3, {}), std::invalid_argument);
  }
}
