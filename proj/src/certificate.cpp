#include "ftiss/certificate.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ftiss {

void DissipationCert::validate() const {
  if (!(decay_coeff > 0.0) || !std::isfinite(decay_coeff))
    throw std::invalid_argument("DissipationCert: decay_coeff must be positive");
  if (!(gain_coeff > 0.0) || !std::isfinite(gain_coeff))
    throw std::invalid_argument("DissipationCert: gain_coeff must be positive");
  if (!(decay_power > 1.0 && decay_power < 2.0))
    throw std::invalid_argument("DissipationCert: decay_power must lie in (1,2)");
  if (!(mu1 > 0.0) || !std::isfinite(mu1))
    throw std::invalid_argument("DissipationCert: mu1 must be positive");
  if (!(mu2 >= mu1) || !std::isfinite(mu2))
    throw std::invalid_argument("DissipationCert: mu2 must satisfy mu2 >= mu1");
}

void PDEParams::validate() const {
  if (!(k >= 0.0) || !std::isfinite(k))
    throw std::invalid_argument("params.k must be nonnegative and finite");
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("params.r must lie in (0,1)");
}

GKLEnvelope derive_gains(const DissipationCert& cert, double epsilon0) {
  cert.validate();
  if (!(epsilon0 > 0.0 && epsilon0 < cert.decay_coeff))
    throw std::invalid_argument(
        "derive_gains: epsilon0 must lie in (0, decay_coeff)");
  GKLEnvelope env;
  env.decay_exponent = 0.5 * cert.decay_power;
  env.decay_modulus =
      (cert.decay_coeff - epsilon0) * std::pow(cert.mu2, -0.5 * cert.decay_power);
  env.mu1 = cert.mu1;
  env.mu2 = cert.mu2;
  const double inv = 1.0 / (cert.decay_power - 1.0);
  env.chi = KFunSpec::compose(
      KFunSpec::power_law(std::pow(cert.gain_coeff / epsilon0, inv), inv),
      cert.zeta);
  return env;
}

double settling_bound_abstract(const DissipationCert& cert, double v0) {
  cert.validate();
  if (!(v0 >= 0.0))
    throw std::domain_error("settling_bound_abstract: v0 must be nonnegative");
  return 2.0 * std::pow(cert.mu2, 0.5 * cert.decay_power) /
         ((2.0 - cert.decay_power) * cert.decay_coeff) *
         std::pow(v0, 1.0 - 0.5 * cert.decay_power);
}

DissipationCert pde_certificate(const PDEParams& params, double epsilon) {
  params.validate();
  if (!(params.k > 0.0))
    throw std::invalid_argument("params.k must be positive for certificates");
  const double eps_sup = 1.0 / (2.0 * std::sqrt(params.k));
  if (!(epsilon > 0.0 && epsilon < eps_sup)) {
    std::ostringstream msg;
    msg << "pde_certificate: epsilon must lie in (0, " << eps_sup
        << ") = (0, 1/(2*sqrt(k)))";
    throw std::invalid_argument(msg.str());
  }
  DissipationCert cert;
  cert.decay_coeff = 16.0 * params.k * epsilon / (3.0 + params.r);
  cert.decay_power = 0.5 * (3.0 + params.r);
  cert.gain_coeff = 2.0;
  cert.zeta = KFunSpec::identity();
  cert.mu1 = 1.0;
  cert.mu2 = 1.0;
  return cert;
}

double pde_settling_bound(const PDEParams& params, double w0_norm) {
  params.validate();
  if (!(params.k > 0.0))
    throw std::invalid_argument("params.k must be positive for certificates");
  if (!(w0_norm >= 0.0))
    throw std::domain_error("pde_settling_bound: w0_norm must be nonnegative");
  return (3.0 + params.r) / (2.0 * std::sqrt(params.k) * (1.0 - params.r)) *
         std::pow(w0_norm, 0.5 * (1.0 - params.r));
}

double default_epsilon(const PDEParams& params) {
  params.validate();
  if (!(params.k > 0.0))
    throw std::invalid_argument("params.k must be positive for certificates");
  return 0.9 / (2.0 * std::sqrt(params.k));
}

double default_epsilon0(const DissipationCert& cert) {
  cert.validate();
  return 0.5 * cert.decay_coeff;
}

}  // namespace ftiss
