#include "ftiss/presets.hpp"

#include <stdexcept>

namespace ftiss {

namespace {

SimConfig base_config(double init_amplitude, double dist_amplitude) {
  SimConfig cfg;
  cfg.params = PDEParams{2.0, 0.6};
  cfg.init = InitSpec::profile(init_amplitude);
  cfg.dist = dist_amplitude == 0.0 ? DisturbanceSpec::zero()
                                   : DisturbanceSpec::sine(dist_amplitude);
  cfg.n_cells = 200;
  cfg.dt = 1e-3;
  cfg.t_end = 6.0;
  cfg.record_every = 10;
  cfg.extinction_threshold = 1e-8;
  cfg.early_stop = false;
  return cfg;
}

std::vector<ExperimentPreset> make_presets() {
  const std::vector<AuditKind> undisturbed = {
      AuditKind::Dissipation, AuditKind::Envelope, AuditKind::Extinction};
  const std::vector<AuditKind> disturbed = {AuditKind::Envelope,
                                            AuditKind::Extinction};
  return {
      {"fig1a", base_config(5.0, 0.0), undisturbed},
      {"fig1b", base_config(50.0, 0.0), undisturbed},
      {"fig1c", base_config(5.0, 0.0), undisturbed},
      {"fig2a", base_config(5.0, 20.0), disturbed},
      {"fig2b", base_config(5.0, 40.0), disturbed},
      {"fig2c", base_config(5.0, 20.0), disturbed},
  };
}

}  // namespace

const std::vector<ExperimentPreset>& experiment_presets() {
  static const std::vector<ExperimentPreset> presets = make_presets();
  return presets;
}

const ExperimentPreset* find_preset(const std::string& name) {
  for (const auto& p : experiment_presets())
    if (p.name == name) return &p;
  return nullptr;
}

std::vector<SeriesSpec> reproduce_series(const std::string& figure_id) {
  if (figure_id == "fig1a") return {{"A1=5", base_config(5.0, 0.0)}};
  if (figure_id == "fig1b") return {{"A1=50", base_config(50.0, 0.0)}};
  if (figure_id == "fig1c")
    return {{"A1=5", base_config(5.0, 0.0)}, {"A1=50", base_config(50.0, 0.0)}};
  if (figure_id == "fig2a") return {{"A2=20", base_config(5.0, 20.0)}};
  if (figure_id == "fig2b") return {{"A2=40", base_config(5.0, 40.0)}};
  if (figure_id == "fig2c")
    return {{"A2=20", base_config(5.0, 20.0)}, {"A2=40", base_config(5.0, 40.0)}};
  throw std::invalid_argument("unknown figure id '" + figure_id +
                              "' (expected fig1a..fig2c)");
}

}  // namespace ftiss
