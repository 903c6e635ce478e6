#include "ftiss/inequality.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace ftiss {

namespace {

constexpr double kPi = std::numbers::pi;

void require_anchored(const Field& v, const char* who) {
  v.validate();
  if (v.values.front() != 0.0)
    throw std::invalid_argument(std::string(who) + ": v(0) must vanish");
}

}  // namespace

double delta_from_pq(double p, double q) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("delta_from_pq: p must lie in (1, inf)");
  if (!(q > 1.0) || !std::isfinite(q))
    throw std::invalid_argument("delta_from_pq: q must lie in (1, inf)");
  const double delta = p / (p + p * q - q);
  if (!(delta > 0.0 && delta < 1.0))
    throw std::logic_error("delta_from_pq: delta escaped (0,1)");
  return delta;
}

InterpParams InterpParams::from_pq(double p, double q) {
  return InterpParams{p, q, delta_from_pq(p, q)};
}

GapResult interpolation_gap(const Field& v, double p, double q) {
  require_anchored(v, "interpolation_gap");
  const double delta = delta_from_pq(p, q);
  GapResult g;
  g.lhs = linf_norm(v);
  g.rhs = std::pow(delta, -delta) * std::pow(lp_norm(derivative(v), p), delta) *
          std::pow(lp_norm(v, q), 1.0 - delta);
  g.margin = g.rhs - g.lhs;
  return g;
}

GapResult corollary_gap(const Field& v, double r, double epsilon) {
  require_anchored(v, "corollary_gap");
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("corollary_gap: r must lie in (0,1)");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("corollary_gap: epsilon must be positive");
  const double s = 3.0 + r;
  const double grad = lp_norm(derivative(v), 2.0);
  GapResult g;
  g.lhs = std::pow(lp_norm(v, 2.0), 0.5 * s);
  g.rhs = 0.5 * s * epsilon * grad * grad +
          s / (8.0 * epsilon) * std::pow(lp_norm(v, 1.0 + r), 1.0 + r);
  g.margin = g.rhs - g.lhs;
  return g;
}

Field random_test_field(std::uint64_t seed, int n_modes, const Grid1D& grid) {
  if (n_modes < 1)
    throw std::invalid_argument("random_test_field: n_modes must be positive");
  std::mt19937_64 rng(seed);
  const auto uniform = [&rng](double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0,1)
    return lo + (hi - lo) * u;
  };
  std::vector<double> a(n_modes), b(n_modes);
  for (int m = 0; m < n_modes; ++m) {
    a[m] = uniform(-1.0, 1.0);
    b[m] = uniform(-0.5, 0.5);
  }
  Field f(grid);
  for (int i = 0; i <= grid.n_cells; ++i) {
    const double y = grid.node(i);
    double v = 0.0;
    for (int m = 0; m < n_modes; ++m) {
      const double omega = kPi * (m + 1);
      v += a[m] * std::sin(omega * y) + b[m] * (std::cos(omega * y) - 1.0);
    }
    f.values[i] = v;
  }
  return f;
}

HarnessResult run_inequality_harness(const HarnessOptions& opt) {
  if (opt.n_fields < 1)
    throw std::invalid_argument("run_inequality_harness: n_fields must be positive");
  if (opt.max_modes < 1)
    throw std::invalid_argument("run_inequality_harness: max_modes must be positive");
  if (!(opt.slack >= 0.0))
    throw std::invalid_argument("run_inequality_harness: slack must be nonnegative");
  static constexpr double kPQ[] = {1.5, 2.0, 3.0};
  static constexpr double kR[] = {0.2, 0.6, 0.9};
  static constexpr double kEps[] = {0.1, 1.0, 10.0};

  const Grid1D grid(opt.n_cells);
  HarnessResult res;
  res.min_margin_ratio = std::numeric_limits<double>::infinity();
  for (int idx = 0; idx < opt.n_fields; ++idx) {
    const std::uint64_t seed = opt.base_seed + static_cast<std::uint64_t>(idx);
    const int n_modes =
        1 + static_cast<int>((seed * 2654435761ULL) % static_cast<std::uint64_t>(opt.max_modes));
    const Field v = random_test_field(seed, n_modes, grid);
    for (double p : kPQ) {
      for (double q : kPQ) {
        const GapResult g = interpolation_gap(v, p, q);
        res.interpolation_rows.push_back({seed, p, q, g.lhs, g.rhs, g.margin});
        if (g.margin < -opt.slack * g.rhs) ++res.violations;
        if (g.rhs > 0.0)
          res.min_margin_ratio = std::min(res.min_margin_ratio, g.margin / g.rhs);
      }
    }
    for (double r : kR) {
      for (double eps : kEps) {
        const GapResult g = corollary_gap(v, r, eps);
        res.corollary_rows.push_back({seed, r, eps, g.lhs, g.rhs, g.margin});
        if (g.margin < -opt.slack * g.rhs) ++res.violations;
      }
    }
  }
  if (!std::isfinite(res.min_margin_ratio)) res.min_margin_ratio = 0.0;
  return res;
}

}  // namespace ftiss
