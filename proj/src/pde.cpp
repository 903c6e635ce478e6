#include "ftiss/pde.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace ftiss {

namespace {

constexpr double kPi = std::numbers::pi;

// sign(v) |v|^r
double signed_power(double v, double r) {
  return std::copysign(std::pow(std::abs(v), r), v);
}

// Crank-Nicolson over tau for w_t = w_yy with a Dirichlet row at node 0 and a
// ghost-node Neumann condition (w_{n+1} = w_{n-1}) at node n. The system is
// strictly diagonally dominant, so plain Thomas elimination is stable. The
// scheme is non-expansive in the trapezoid-weighted discrete L2 norm: the
// operator is self-adjoint and negative definite in that inner product.
void diffusion_half_step(std::vector<double>& w, double tau, double h) {
  const std::size_t n = w.size() - 1;
  const double a = tau / (2.0 * h * h);

  std::vector<double> diag(n + 1), upper(n + 1), lower(n + 1), rhs(n + 1);
  diag[0] = 1.0;
  upper[0] = 0.0;
  rhs[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    lower[i] = -a;
    diag[i] = 1.0 + 2.0 * a;
    upper[i] = -a;
    rhs[i] = a * w[i - 1] + (1.0 - 2.0 * a) * w[i] + a * w[i + 1];
  }
  lower[n] = -2.0 * a;
  diag[n] = 1.0 + 2.0 * a;
  upper[n] = 0.0;
  rhs[n] = 2.0 * a * w[n - 1] + (1.0 - 2.0 * a) * w[n];

  for (std::size_t i = 1; i <= n; ++i) {
    const double m = lower[i] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  w[n] = rhs[n] / diag[n];
  for (std::size_t i = n; i-- > 0;) w[i] = (rhs[i] - upper[i] * w[i + 1]) / diag[i];
}

// One full-dt substep of w' = -k|w|^(r-1) w + f_mid per node. The exact decay
// formula matters near extinction, the forcing away from it; one explicit
// midpoint step covers the forced regime at |w| > 1.
double reaction_forcing_node(double w, double f_mid, double dt, const PDEParams& p) {
  if (std::abs(w) <= 1.0 || f_mid == 0.0)
    return sublinear_exact(w, dt, p) + dt * f_mid;
  const auto rate = [&](double v) { return -p.k * signed_power(v, p.r) + f_mid; };
  const double half = w + 0.5 * dt * rate(w);
  return w + dt * rate(half);
}

bool identically_zero(const Field& f) {
  for (double v : f.values)
    if (v != 0.0) return false;
  return true;
}

}  // namespace

InitSpec InitSpec::profile(double amplitude) {
  InitSpec s;
  s.kind = Kind::Profile;
  s.amplitude = amplitude;
  return s;
}

InitSpec InitSpec::custom(Field f) {
  InitSpec s;
  s.kind = Kind::Custom;
  s.custom_field = std::move(f);
  return s;
}

DisturbanceSpec DisturbanceSpec::sine(double amplitude, double t_offset) {
  DisturbanceSpec s;
  s.kind = Kind::Sine;
  s.amplitude = amplitude;
  s.t_offset = t_offset;
  return s;
}

DisturbanceSpec DisturbanceSpec::zero() {
  DisturbanceSpec s;
  s.kind = Kind::Zero;
  return s;
}

DisturbanceSpec DisturbanceSpec::custom(std::function<double(double, double)> fn) {
  DisturbanceSpec s;
  s.kind = Kind::Custom;
  s.fn = std::move(fn);
  return s;
}

bool DisturbanceSpec::analytically_zero() const {
  return kind == Kind::Zero || (kind == Kind::Sine && amplitude == 0.0);
}

void SimConfig::validate() const {
  params.validate();
  if (!std::isfinite(init.amplitude))
    throw std::invalid_argument("init.amplitude must be finite");
  if (init.kind == InitSpec::Kind::Custom) {
    if (!init.custom_field)
      throw std::invalid_argument("init.custom_field is empty");
    init.custom_field->validate();
    if (init.custom_field->grid.n_cells != n_cells)
      throw std::invalid_argument("init.custom_field grid must match n_cells");
  }
  if (!std::isfinite(dist.amplitude))
    throw std::invalid_argument("dist.amplitude must be finite");
  if (!std::isfinite(dist.t_offset))
    throw std::invalid_argument("dist.t_offset must be finite");
  if (dist.kind == DisturbanceSpec::Kind::Custom && !dist.fn)
    throw std::invalid_argument("dist.fn is empty");
  if (n_cells < 2) throw std::invalid_argument("n_cells must be at least 2");
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::invalid_argument("dt must be positive and finite");
  if (!(t_end >= 0.0) || !std::isfinite(t_end))
    throw std::invalid_argument("t_end must be nonnegative and finite");
  if (t_end > 0.0 && dt > t_end)
    throw std::invalid_argument("dt must not exceed t_end");
  if (record_every < 1)
    throw std::invalid_argument("record_every must be at least 1");
  if (!(extinction_threshold > 0.0))
    throw std::invalid_argument("extinction_threshold must be positive");
}

integrator_divergence::integrator_divergence(long step_index_, double t_)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg << "integrator diverged at step " << step_index_ << " (t = " << t_
            << "): non-finite state values";
        return msg.str();
      }()),
      step_index(step_index_),
      t(t_) {}

Field init_field(const InitSpec& spec, const Grid1D& grid) {
  if (spec.kind == InitSpec::Kind::Custom) {
    if (!spec.custom_field)
      throw std::invalid_argument("init.custom_field is empty");
    if (!(spec.custom_field->grid == grid))
      throw std::invalid_argument("init.custom_field grid must match n_cells");
    return *spec.custom_field;
  }
  Field f(grid);
  for (int i = 0; i <= grid.n_cells; ++i) {
    const double y = grid.node(i);
    f.values[i] = spec.amplitude * std::sqrt(y + 0.5) * std::cos(3.0 * kPi * y);
  }
  return f;
}

Field disturbance_field(const DisturbanceSpec& spec, const Grid1D& grid, double t) {
  Field f(grid);
  switch (spec.kind) {
    case DisturbanceSpec::Kind::Zero:
      break;
    case DisturbanceSpec::Kind::Sine:
      for (int i = 0; i <= grid.n_cells; ++i)
        f.values[i] =
            spec.amplitude * std::sin(grid.node(i) + 12.0 * (t + spec.t_offset) + 6.0);
      break;
    case DisturbanceSpec::Kind::Custom:
      if (!spec.fn) throw std::invalid_argument("dist.fn is empty");
      for (int i = 0; i <= grid.n_cells; ++i) f.values[i] = spec.fn(grid.node(i), t);
      break;
  }
  return f;
}

double sublinear_exact(double w, double dt, const PDEParams& params) {
  if (!(dt > 0.0)) throw std::invalid_argument("sublinear_exact: dt must be positive");
  params.validate();
  if (params.k == 0.0) return w;
  if (w == 0.0) return 0.0;
  const double p = 1.0 - params.r;
  const double base = std::pow(std::abs(w), p) - params.k * p * dt;
  if (base <= 0.0) return 0.0;
  return std::copysign(std::pow(base, 1.0 / p), w);
}

Field step(const Field& state, double t, double dt, const SimConfig& config,
           long step_index) {
  if (state.grid.n_cells != config.n_cells)
    throw std::invalid_argument("step: state grid must match config.n_cells");
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");

  Field w = state;
  const double h = w.grid.h;
  diffusion_half_step(w.values, 0.5 * dt, h);
  const Field f_mid = disturbance_field(config.dist, w.grid, t + 0.5 * dt);
  for (std::size_t i = 0; i < w.values.size(); ++i)
    w.values[i] = reaction_forcing_node(w.values[i], f_mid.values[i], dt, config.params);
  diffusion_half_step(w.values, 0.5 * dt, h);

  for (double v : w.values)
    if (!std::isfinite(v)) throw integrator_divergence(step_index, t);
  return w;
}

TrajectoryRecord simulate(const SimConfig& config) {
  config.validate();
  const Grid1D grid(config.n_cells);
  Field w = init_field(config.init, grid);
  w.validate();

  TrajectoryRecord traj;
  traj.extinction_threshold = config.extinction_threshold;
  if (config.dist.kind != DisturbanceSpec::Kind::Custom)
    traj.dist_sup_analytic = std::abs(config.dist.amplitude);

  const auto record = [&](double t, const Field& f) {
    traj.times.push_back(t);
    traj.fields.push_back(f);
    const double l2 = lp_norm(f, 2.0);
    traj.l2_norms.push_back(l2);
    traj.v_values.push_back(l2 * l2);
    const double d = lp_norm(disturbance_field(config.dist, grid, t), 2.0);
    traj.dist_l2_norms.push_back(d);
    traj.dist_sup_norm = std::max(traj.dist_sup_norm, d);
  };
  record(0.0, w);

  const long n_steps = std::llround(config.t_end / config.dt);
  const bool undisturbed = config.dist.analytically_zero();
  for (long i = 0; i < n_steps; ++i) {
    const double t = static_cast<double>(i) * config.dt;
    w = step(w, t, config.dt, config, i);
    w.values[0] = 0.0;  // Dirichlet pin after every step
    const bool at_cadence =
        ((i + 1) % config.record_every == 0) || (i + 1 == n_steps);
    if (at_cadence) record(static_cast<double>(i + 1) * config.dt, w);
    if (config.early_stop && undisturbed && identically_zero(w)) {
      if (!at_cadence) record(static_cast<double>(i + 1) * config.dt, w);
      break;
    }
  }
  return traj;
}

}  // namespace ftiss
