#include "ftiss/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ftiss {

double dini_forward(std::span<const double> values, std::span<const double> times,
                    std::size_t i) {
  if (values.size() != times.size())
    throw std::invalid_argument("dini_forward: values and times must match");
  if (i + 1 >= values.size())
    throw std::out_of_range("dini_forward: index has no forward neighbor");
  return (values[i + 1] - values[i]) / (times[i + 1] - times[i]);
}

AuditReport dissipation_audit(const TrajectoryRecord& traj, const GKLEnvelope& env,
                              double slack) {
  env.validate();
  if (!(slack >= 0.0))
    throw std::invalid_argument("dissipation_audit: slack must be nonnegative");
  if (traj.size() < 2)
    throw std::invalid_argument("dissipation_audit: need at least 2 records");

  const double chi_u = kfun_eval(env.chi, traj.dist_sup_norm);
  AuditReport rep;
  rep.slack = slack;
  rep.total_steps = static_cast<long>(traj.size()) - 1;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    const double norm = traj.l2_norms[i];
    if (norm < chi_u || norm <= traj.extinction_threshold) continue;
    ++rep.applicable_steps;
    const double v = traj.v_values[i];
    const double dv = dini_forward(traj.v_values, traj.times, i);
    const double allowed =
        -env.decay_modulus * std::pow(v, env.decay_exponent) +
        slack * std::max(1.0, v);
    const double margin = dv - allowed;
    if (margin > 0.0) ++rep.violations;
    worst = std::max(worst, margin);
  }
  rep.worst_margin = rep.applicable_steps > 0 ? worst : 0.0;
  rep.pass_fraction =
      rep.applicable_steps > 0
          ? 1.0 - static_cast<double>(rep.violations) / rep.applicable_steps
          : 1.0;
  return rep;
}

double envelope_audit(const TrajectoryRecord& traj, const GKLEnvelope& env) {
  env.validate();
  if (traj.size() == 0)
    throw std::invalid_argument("envelope_audit: empty trajectory");
  const double s0 = traj.l2_norms[0];
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double norm = traj.l2_norms[i];
    if (norm == 0.0) continue;  // a zero state never violates the bound
    const double bound = envelope_eval(env, s0, traj.times[i], traj.dist_sup_norm);
    const double ratio = bound == 0.0 ? std::numeric_limits<double>::infinity()
                                      : norm / bound;
    worst = std::max(worst, ratio);
  }
  return worst;
}

std::optional<double> extinction_time(const TrajectoryRecord& traj, double threshold) {
  if (!(threshold > 0.0))
    throw std::invalid_argument("extinction_time: threshold must be positive");
  if (traj.size() == 0) return std::nullopt;
  std::size_t first = traj.size();  // first index of the trailing quiet block
  for (std::size_t i = traj.size(); i-- > 0;) {
    if (traj.l2_norms[i] > threshold) break;
    first = i;
  }
  if (first == traj.size()) return std::nullopt;
  return traj.times[first];
}

}  // namespace ftiss
