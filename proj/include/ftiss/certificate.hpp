#pragma once

#include "ftiss/comparison.hpp"

namespace ftiss {

// Structural dissipation data: along trajectories, the energy V sandwiched by
// mu1*|x|^2 <= V <= mu2*|x|^2 satisfies
//   V' <= -decay_coeff * |x|^decay_power + gain_coeff * |x| * zeta(|u|).
struct DissipationCert {
  double decay_coeff = 1.0;  // b > 0
  double gain_coeff = 1.0;   // c > 0
  double decay_power = 1.5;  // tau in (1,2)
  KFunSpec zeta = KFunSpec::identity();
  double mu1 = 1.0;
  double mu2 = 1.0;

  void validate() const;
};

// Reaction-diffusion model parameters: w_t = w_yy - k |w|^(r-1) w + f.
struct PDEParams {
  double k = 2.0;  // reaction gain, >= 0 (certificate routes require > 0)
  double r = 0.6;  // sublinearity exponent, in (0,1)

  void validate() const;
};

// Certificate -> decay-plus-gain envelope, for any epsilon0 in (0, b):
//   sigma0 = tau/2, M = (b - epsilon0) * mu2^(-tau/2),
//   chi(s) = (c * zeta(s) / epsilon0)^(1/(tau-1)).
GKLEnvelope derive_gains(const DissipationCert& cert, double epsilon0);

// Settling-time bound in the epsilon0 -> 0 limit:
//   2 * mu2^(tau/2) / ((2 - tau) * b) * v0^(1 - tau/2).
double settling_bound_abstract(const DissipationCert& cert, double v0);

// The certificate satisfied by the sublinear reaction-diffusion model:
//   b = 16 k eps / (3+r), tau = (3+r)/2, c = 2, zeta = id, mu1 = mu2 = 1,
// valid for 0 < eps < 1/(2 sqrt(k)).
DissipationCert pde_certificate(const PDEParams& params, double epsilon);

// Settling-time bound in the epsilon -> sup limit:
//   (3+r) / (2 sqrt(k) (1-r)) * w0_norm^((1-r)/2).
double pde_settling_bound(const PDEParams& params, double w0_norm);

// Workbench defaults: epsilon at 90% of its admissible supremum, and
// epsilon0 = b/2 balancing decay modulus against gain.
double default_epsilon(const PDEParams& params);
double default_epsilon0(const DissipationCert& cert);

}  // namespace ftiss
