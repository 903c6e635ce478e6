#pragma once

#include <optional>
#include <span>

#include "ftiss/comparison.hpp"
#include "ftiss/pde.hpp"

namespace ftiss {

// Aggregate outcome of a per-step audit. Steps are forward differences
// between consecutive records; a step is applicable when the state norm
// dominates the gain of the disturbance and sits above the extinction
// threshold.
struct AuditReport {
  long total_steps = 0;
  long applicable_steps = 0;
  long violations = 0;
  double worst_margin = 0.0;   // max of forward dV minus the allowed bound; > 0 violates
  double pass_fraction = 1.0;  // 1 - violations/applicable_steps (1 when vacuous)
  double slack = 0.0;
};

// Forward-difference surrogate for the right-hand upper derivative at
// record i.
double dini_forward(std::span<const double> values, std::span<const double> times,
                    std::size_t i);

// Flags steps where forward dV > -M V^sigma0 + slack * max(1, V) among the
// applicable ones (state norm >= chi(dist_sup_norm) and above the extinction
// threshold).
AuditReport dissipation_audit(const TrajectoryRecord& traj, const GKLEnvelope& env,
                              double slack = 1e-3);

// Worst ratio of the recorded norm to the envelope value; <= 1 certifies the
// run. A zero envelope against a nonzero state reports +infinity.
double envelope_audit(const TrajectoryRecord& traj, const GKLEnvelope& env);

// First recorded time from which the norm stays at or below the threshold.
std::optional<double> extinction_time(const TrajectoryRecord& traj, double threshold);

}  // namespace ftiss
