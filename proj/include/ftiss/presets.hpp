#pragma once

#include <string>
#include <vector>

#include "ftiss/pde.hpp"

namespace ftiss {

enum class AuditKind { Dissipation, Envelope, Extinction };

struct ExperimentPreset {
  std::string name;
  SimConfig config;
  std::vector<AuditKind> audits;
};

// fig1a / fig1b: undisturbed runs with initial amplitude 5 / 50.
// fig2a / fig2b: amplitude-5 runs forced with disturbance amplitude 20 / 40.
// fig1c / fig2c: the norm-comparison panels over the corresponding pairs.
const std::vector<ExperimentPreset>& experiment_presets();
const ExperimentPreset* find_preset(const std::string& name);

struct SeriesSpec {
  std::string label;
  SimConfig config;
};

// Simulation series behind a figure id: one for surface panels (a, b), two
// for the norm-comparison panels (c). Unknown ids throw.
std::vector<SeriesSpec> reproduce_series(const std::string& figure_id);

}  // namespace ftiss
