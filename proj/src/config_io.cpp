#include "ftiss/config_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ftiss {

namespace {

using nlohmann::json;

const json& require_key(const json& j, const std::string& scope, const char* key) {
  if (!j.is_object())
    throw std::invalid_argument("config: '" + scope + "' must be an object");
  auto it = j.find(key);
  if (it == j.end())
    throw std::invalid_argument("config: missing field '" + scope + key + "'");
  return *it;
}

double number_at(const json& j, const std::string& scope, const char* key) {
  const json& v = require_key(j, scope, key);
  if (!v.is_number())
    throw std::invalid_argument("config: field '" + scope + key +
                                "' must be a number");
  return v.get<double>();
}

double number_or(const json& j, const std::string& scope, const char* key,
                 double fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return number_at(j, scope, key);
}

long integer_at(const json& j, const std::string& scope, const char* key) {
  const json& v = require_key(j, scope, key);
  if (!v.is_number_integer())
    throw std::invalid_argument("config: field '" + scope + key +
                                "' must be an integer");
  return v.get<long>();
}

std::string string_at(const json& j, const std::string& scope, const char* key) {
  const json& v = require_key(j, scope, key);
  if (!v.is_string())
    throw std::invalid_argument("config: field '" + scope + key +
                                "' must be a string");
  return v.get<std::string>();
}

void reject_unknown(const json& j, const std::string& scope,
                    std::initializer_list<const char*> known) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok)
      throw std::invalid_argument("config: unknown field '" + scope + item.key() +
                                  "'");
  }
}

}  // namespace

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json sim_config_to_json(const SimConfig& config) {
  if (config.init.kind == InitSpec::Kind::Custom)
    throw std::invalid_argument("config: custom init specs do not serialize");
  if (config.dist.kind == DisturbanceSpec::Kind::Custom)
    throw std::invalid_argument("config: custom disturbance specs do not serialize");
  json j;
  j["params"] = {{"k", config.params.k}, {"r", config.params.r}};
  j["init"] = {{"kind", "profile"}, {"amplitude", config.init.amplitude}};
  if (config.dist.kind == DisturbanceSpec::Kind::Zero) {
    j["dist"] = {{"kind", "zero"}};
  } else {
    j["dist"] = {{"kind", "sine"},
                 {"amplitude", config.dist.amplitude},
                 {"t_offset", config.dist.t_offset}};
  }
  j["n_cells"] = config.n_cells;
  j["dt"] = config.dt;
  j["t_end"] = config.t_end;
  j["record_every"] = config.record_every;
  j["extinction_threshold"] = config.extinction_threshold;
  j["early_stop"] = config.early_stop;
  return j;
}

SimConfig sim_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: root must be an object");
  reject_unknown(j, "",
                 {"params", "init", "dist", "n_cells", "dt", "t_end", "record_every",
                  "extinction_threshold", "early_stop"});

  SimConfig cfg;
  const json& params = require_key(j, "", "params");
  reject_unknown(params, "params.", {"k", "r"});
  cfg.params.k = number_at(params, "params.", "k");
  cfg.params.r = number_at(params, "params.", "r");

  const json& init = require_key(j, "", "init");
  reject_unknown(init, "init.", {"kind", "amplitude"});
  const std::string init_kind = string_at(init, "init.", "kind");
  if (init_kind != "profile")
    throw std::invalid_argument("config: field 'init.kind' must be \"profile\"");
  cfg.init = InitSpec::profile(number_at(init, "init.", "amplitude"));

  const json& dist = require_key(j, "", "dist");
  reject_unknown(dist, "dist.", {"kind", "amplitude", "t_offset"});
  const std::string dist_kind = string_at(dist, "dist.", "kind");
  if (dist_kind == "zero") {
    cfg.dist = DisturbanceSpec::zero();
  } else if (dist_kind == "sine") {
    cfg.dist = DisturbanceSpec::sine(number_at(dist, "dist.", "amplitude"),
                                     number_or(dist, "dist.", "t_offset", 0.0));
  } else {
    throw std::invalid_argument(
        "config: field 'dist.kind' must be \"sine\" or \"zero\"");
  }

  cfg.n_cells = static_cast<int>(integer_at(j, "", "n_cells"));
  cfg.dt = number_at(j, "", "dt");
  cfg.t_end = number_at(j, "", "t_end");
  if (j.contains("record_every"))
    cfg.record_every = static_cast<int>(integer_at(j, "", "record_every"));
  if (j.contains("extinction_threshold"))
    cfg.extinction_threshold = number_at(j, "", "extinction_threshold");
  if (j.contains("early_stop")) {
    const json& v = j.at("early_stop");
    if (!v.is_boolean())
      throw std::invalid_argument("config: field 'early_stop' must be a boolean");
    cfg.early_stop = v.get<bool>();
  }
  cfg.validate();
  return cfg;
}

SimConfig load_sim_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i < stop; ++i)
      if (text[i] == '\n') ++line;
    std::ostringstream msg;
    msg << "config: parse error in '" << path << "' at line " << line << ": "
        << e.what();
    throw std::invalid_argument(msg.str());
  }
  return sim_config_from_json(j);
}

std::string trajectory_csv(const TrajectoryRecord& traj) {
  std::string out = "t,l2_norm,v,dist_l2\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out += format_g17(traj.times[i]);
    out += ',';
    out += format_g17(traj.l2_norms[i]);
    out += ',';
    out += format_g17(traj.v_values[i]);
    out += ',';
    out += format_g17(traj.dist_l2_norms[i]);
    out += '\n';
  }
  return out;
}

std::string snapshots_csv(const TrajectoryRecord& traj) {
  std::string out = "t,y,w\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const Field& f = traj.fields[i];
    for (int k = 0; k <= f.grid.n_cells; ++k) {
      out += format_g17(traj.times[i]);
      out += ',';
      out += format_g17(f.grid.node(k));
      out += ',';
      out += format_g17(f.values[k]);
      out += '\n';
    }
  }
  return out;
}

std::string field_csv(const Field& f) {
  std::string out = "y,value\n";
  for (int i = 0; i <= f.grid.n_cells; ++i) {
    out += format_g17(f.grid.node(i));
    out += ',';
    out += format_g17(f.values[i]);
    out += '\n';
  }
  return out;
}

std::string audit_report_text(const AuditReport& rep) {
  std::ostringstream out;
  out << "total_steps=" << rep.total_steps << '\n'
      << "applicable_steps=" << rep.applicable_steps << '\n'
      << "violations=" << rep.violations << '\n'
      << "worst_margin=" << format_g17(rep.worst_margin) << '\n'
      << "pass_fraction=" << format_g17(rep.pass_fraction) << '\n'
      << "slack=" << format_g17(rep.slack) << '\n';
  return out.str();
}

nlohmann::json audit_report_json(const AuditReport& rep) {
  return json{{"total_steps", rep.total_steps},
              {"applicable_steps", rep.applicable_steps},
              {"violations", rep.violations},
              {"worst_margin", rep.worst_margin},
              {"pass_fraction", rep.pass_fraction},
              {"slack", rep.slack}};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace ftiss
