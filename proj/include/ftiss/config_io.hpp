#pragma once

#include <string>

#include "json.hpp"

#include "ftiss/analysis.hpp"
#include "ftiss/pde.hpp"

namespace ftiss {

// 17 significant digits; round-trips doubles through decimal text.
std::string format_g17(double x);

// JSON mirrors the SimConfig fields:
//   {"params": {"k":..., "r":...},
//    "init": {"kind": "profile", "amplitude":...},
//    "dist": {"kind": "sine"|"zero", "amplitude":..., "t_offset":...},
//    "n_cells":..., "dt":..., "t_end":...,
//    "record_every":..., "extinction_threshold":..., "early_stop":...}
// Unknown or ill-typed fields are rejected by name. Custom init/disturbance
// specs are programmatic only and do not serialize.
nlohmann::json sim_config_to_json(const SimConfig& config);
SimConfig sim_config_from_json(const nlohmann::json& j);
SimConfig load_sim_config(const std::string& path);  // adds line diagnostics

std::string trajectory_csv(const TrajectoryRecord& traj);  // t,l2_norm,v,dist_l2
std::string snapshots_csv(const TrajectoryRecord& traj);   // t,y,w
std::string field_csv(const Field& f);                     // y,value

std::string audit_report_text(const AuditReport& rep);
nlohmann::json audit_report_json(const AuditReport& rep);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace ftiss
