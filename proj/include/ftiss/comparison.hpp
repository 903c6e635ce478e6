#pragma once

#include <memory>

namespace ftiss {

// Strictly increasing comparison function vanishing at zero, built from
// power laws, compositions, and numeric inverses. Power laws carry positive
// coefficient and exponent, so every expressible spec is unbounded.
class KFunSpec {
 public:
  enum class Kind { PowerLaw, Composition, InverseOf };

  static KFunSpec power_law(double coefficient, double exponent);
  static KFunSpec identity() { return power_law(1.0, 1.0); }
  static KFunSpec compose(const KFunSpec& outer, const KFunSpec& inner);
  static KFunSpec inverse_of(const KFunSpec& inner);

  Kind kind() const { return kind_; }
  double coefficient() const { return coefficient_; }
  double exponent() const { return exponent_; }
  const KFunSpec& outer() const { return *outer_; }
  const KFunSpec& inner() const { return *inner_; }

 private:
  KFunSpec() = default;

  Kind kind_ = Kind::PowerLaw;
  double coefficient_ = 1.0;
  double exponent_ = 1.0;
  std::shared_ptr<const KFunSpec> outer_;  // composition only
  std::shared_ptr<const KFunSpec> inner_;  // composition and inverse
};

double kfun_eval(const KFunSpec& spec, double s);

// Solves eval(s) = v by bracketing bisection with an expanding upper
// bracket. The result satisfies |eval(s) - v| <= tol * max(1, v).
double kfun_inverse(const KFunSpec& spec, double v, double tol = 1e-10);

// First time the decay branch reaches zero:
// T(s) = s^(1-sigma0) / (decay_modulus * (1 - sigma0)).
double gkl_settling(double s, double decay_modulus, double sigma0);

// Finite-time decay profile: the solution of v' = -M v^sigma0 from v(0) = s,
// identically zero from t = gkl_settling(s) on. The inner base is clamped at
// zero before exponentiation, which realizes the piecewise definition.
double gkl_beta1(double s, double t, double decay_modulus, double sigma0);

// Decay-plus-gain bound with a quadratic norm sandwich
// mu1*|x|^2 <= V(x) <= mu2*|x|^2.
struct GKLEnvelope {
  double decay_modulus = 1.0;   // M > 0
  double decay_exponent = 0.5;  // sigma0 in (0,1)
  double mu1 = 1.0;
  double mu2 = 1.0;
  KFunSpec chi = KFunSpec::identity();

  void validate() const;
  // Settling time of the norm bound started from state norm s0.
  double settling_time(double s0) const;
};

// beta(s0,t) + rho(u_norm), where beta(s,t) = sqrt(beta1(mu2 s^2, t)/mu1) and
// rho = sqrt(mu2/mu1) * chi is the closed form of the sandwich-inverse
// composition for quadratic sandwiches.
double envelope_eval(const GKLEnvelope& env, double s0, double t, double u_norm);

// rho evaluated through the generic composed-inverse route; retained as a
// cross-check of the closed form above.
double envelope_rho_generic(const GKLEnvelope& env, double u_norm);

}  // namespace ftiss
