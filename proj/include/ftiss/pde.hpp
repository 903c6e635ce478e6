#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ftiss/certificate.hpp"
#include "ftiss/field.hpp"

namespace ftiss {

// Initial profile w0. The built-in profile is
//   amplitude * sqrt(y + 1/2) * cos(3 pi y).
struct InitSpec {
  enum class Kind { Profile, Custom };

  static InitSpec profile(double amplitude);
  static InitSpec custom(Field f);

  Kind kind = Kind::Profile;
  double amplitude = 0.0;
  std::optional<Field> custom_field;
};

// In-domain forcing f(y,t). The built-in family is
//   amplitude * sin(y + 12 (t + t_offset) + 6);
// t_offset supports restarting a run against a time-shifted disturbance.
struct DisturbanceSpec {
  enum class Kind { Sine, Zero, Custom };

  static DisturbanceSpec sine(double amplitude, double t_offset = 0.0);
  static DisturbanceSpec zero();
  static DisturbanceSpec custom(std::function<double(double, double)> fn);

  Kind kind = Kind::Zero;
  double amplitude = 0.0;
  double t_offset = 0.0;
  std::function<double(double, double)> fn;  // custom only, (y, t)

  bool analytically_zero() const;
};

struct SimConfig {
  PDEParams params{};
  InitSpec init = InitSpec::profile(5.0);
  DisturbanceSpec dist = DisturbanceSpec::zero();
  int n_cells = 200;
  double dt = 1e-3;
  double t_end = 6.0;
  int record_every = 10;
  double extinction_threshold = 1e-8;
  bool early_stop = false;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<Field> fields;
  std::vector<double> l2_norms;
  std::vector<double> v_values;      // l2_norms squared
  std::vector<double> dist_l2_norms;
  double dist_sup_norm = 0.0;        // max of dist_l2_norms over the horizon
  std::optional<double> dist_sup_analytic;  // |amplitude| for the sine family
  double extinction_threshold = 1e-8;       // copied from the producing config

  std::size_t size() const { return times.size(); }
};

class integrator_divergence : public std::runtime_error {
 public:
  integrator_divergence(long step_index_, double t_);
  long step_index;
  double t;
};

Field init_field(const InitSpec& spec, const Grid1D& grid);
Field disturbance_field(const DisturbanceSpec& spec, const Grid1D& grid, double t);

// Exact solution of w' = -k |w|^(r-1) w over dt:
//   sign(w) * max(|w|^(1-r) - k (1-r) dt, 0)^(1/(1-r)).
// Values with |w|^(1-r) <= k (1-r) dt land on exactly zero, which is what
// makes the integrator reach extinction in finitely many steps.
double sublinear_exact(double w, double dt, const PDEParams& params);

// One Strang step: half-step Crank-Nicolson diffusion (Dirichlet row at y=0,
// second-order ghost-node Neumann at y=1), a full reaction+forcing substep
// against the midpoint forcing sample f[t+dt/2], then half diffusion again.
// The reaction+forcing substep uses the exact decay formula plus dt*f when
// |w| <= 1 or the local forcing vanishes, and one explicit midpoint step of
// w' = -k|w|^(r-1) w + f otherwise.
Field step(const Field& state, double t, double dt, const SimConfig& config,
           long step_index = -1);

TrajectoryRecord simulate(const SimConfig& config);

}  // namespace ftiss
