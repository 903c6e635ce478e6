#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "ftiss/analysis.hpp"
#include "ftiss/certificate.hpp"
#include "ftiss/config_io.hpp"
#include "ftiss/greens.hpp"
#include "ftiss/inequality.hpp"
#include "ftiss/pde.hpp"
#include "ftiss/presets.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitDivergence = 3;

std::string resolve_out_dir(const std::string& cli_value) {
  if (!cli_value.empty()) return cli_value;
  if (const char* env = std::getenv("FTISS_OUT_DIR"); env && *env) return env;
  return ".";
}

fs::path prepare_out_dir(const std::string& cli_value) {
  fs::path dir = resolve_out_dir(cli_value);
  fs::create_directories(dir);
  return dir;
}

bool has_audit(const std::vector<ftiss::AuditKind>& audits, ftiss::AuditKind kind) {
  for (auto a : audits)
    if (a == kind) return true;
  return false;
}

// Envelope derived from the model certificate at the workbench defaults.
ftiss::GKLEnvelope default_envelope(const ftiss::PDEParams& params) {
  const auto cert = ftiss::pde_certificate(params, ftiss::default_epsilon(params));
  return ftiss::derive_gains(cert, ftiss::default_epsilon0(cert));
}

json run_audits(const ftiss::SimConfig& config, const ftiss::TrajectoryRecord& traj,
                const std::vector<ftiss::AuditKind>& audits) {
  json out;
  out["disturbance_sup"] = {
      {"measured_over_horizon", traj.dist_sup_norm},
      {"analytic_bound", traj.dist_sup_analytic ? json(*traj.dist_sup_analytic)
                                                : json(nullptr)}};
  if (config.params.k > 0.0) {
    const auto env = default_envelope(config.params);
    out["envelope_params"] = {{"decay_modulus", env.decay_modulus},
                              {"decay_exponent", env.decay_exponent},
                              {"mu1", env.mu1},
                              {"mu2", env.mu2},
                              {"chi_at_dist_sup",
                               ftiss::kfun_eval(env.chi, traj.dist_sup_norm)}};
    out["settling_bound_undisturbed"] =
        ftiss::pde_settling_bound(config.params, traj.l2_norms.front());
    if (has_audit(audits, ftiss::AuditKind::Dissipation))
      out["dissipation"] = ftiss::audit_report_json(ftiss::dissipation_audit(traj, env));
    if (has_audit(audits, ftiss::AuditKind::Envelope))
      out["envelope"] = {{"worst_ratio", ftiss::envelope_audit(traj, env)}};
  }
  if (has_audit(audits, ftiss::AuditKind::Extinction)) {
    const auto t = ftiss::extinction_time(traj, config.extinction_threshold);
    out["extinction"] = {{"threshold", config.extinction_threshold},
                         {"time", t ? json(*t) : json(nullptr)}};
  }
  return out;
}

int cmd_simulate(const std::string& config_path, const std::string& preset_name,
                 const std::string& out_opt) {
  ftiss::SimConfig config;
  std::vector<ftiss::AuditKind> audits = {ftiss::AuditKind::Dissipation,
                                          ftiss::AuditKind::Envelope,
                                          ftiss::AuditKind::Extinction};
  if (!config_path.empty() && !preset_name.empty()) {
    std::cerr << "error: pass either --config or --preset, not both\n";
    return kExitValidation;
  }
  if (!config_path.empty()) {
    config = ftiss::load_sim_config(config_path);
  } else if (!preset_name.empty()) {
    const auto* preset = ftiss::find_preset(preset_name);
    if (!preset) {
      std::cerr << "error: unknown preset '" << preset_name << "'\n";
      return kExitValidation;
    }
    config = preset->config;
    audits = preset->audits;
  } else {
    std::cerr << "error: one of --config or --preset is required\n";
    return kExitValidation;
  }

  const fs::path dir = prepare_out_dir(out_opt);
  const auto traj = ftiss::simulate(config);
  ftiss::write_text_file((dir / "trajectory.csv").string(),
                         ftiss::trajectory_csv(traj));
  ftiss::write_text_file((dir / "snapshots.csv").string(),
                         ftiss::snapshots_csv(traj));
  json audit = run_audits(config, traj, audits);
  audit["config"] = ftiss::sim_config_to_json(config);
  ftiss::write_text_file((dir / "audit.json").string(), audit.dump(2) + "\n");

  std::cout << "wrote " << (dir / "trajectory.csv").string() << ", "
            << (dir / "snapshots.csv").string() << ", "
            << (dir / "audit.json").string() << "\n";
  if (audit.contains("extinction")) {
    const auto& t = audit["extinction"]["time"];
    if (t.is_null())
      std::cout << "extinction: none at threshold "
                << config.extinction_threshold << "\n";
    else
      std::cout << "extinction: t = " << t.get<double>() << "\n";
  }
  if (audit.contains("envelope"))
    std::cout << "envelope worst ratio: "
              << audit["envelope"]["worst_ratio"].get<double>() << "\n";
  if (audit.contains("dissipation"))
    std::cout << "dissipation pass fraction: "
              << audit["dissipation"]["pass_fraction"].get<double>() << "\n";
  return kExitOk;
}

int cmd_verify_inequality(int seeds, int cells, double slack,
                          const std::string& out_opt) {
  ftiss::HarnessOptions opt;
  opt.n_fields = seeds;
  opt.n_cells = cells;
  opt.slack = slack;
  const auto res = ftiss::run_inequality_harness(opt);

  const fs::path dir = prepare_out_dir(out_opt);
  std::string csv = "seed,p,q,lhs,rhs,margin\n";
  for (const auto& row : res.interpolation_rows) {
    csv += std::to_string(row.seed) + ',' + ftiss::format_g17(row.a) + ',' +
           ftiss::format_g17(row.b) + ',' + ftiss::format_g17(row.lhs) + ',' +
           ftiss::format_g17(row.rhs) + ',' + ftiss::format_g17(row.margin) + '\n';
  }
  ftiss::write_text_file((dir / "interpolation_margins.csv").string(), csv);
  csv = "seed,r,epsilon,lhs,rhs,margin\n";
  for (const auto& row : res.corollary_rows) {
    csv += std::to_string(row.seed) + ',' + ftiss::format_g17(row.a) + ',' +
           ftiss::format_g17(row.b) + ',' + ftiss::format_g17(row.lhs) + ',' +
           ftiss::format_g17(row.rhs) + ',' + ftiss::format_g17(row.margin) + '\n';
  }
  ftiss::write_text_file((dir / "corollary_margins.csv").string(), csv);

  std::cout << "fields: " << seeds << ", cells: " << cells << "\n"
            << "rows: " << res.interpolation_rows.size() << " interpolation, "
            << res.corollary_rows.size() << " corollary\n"
            << "violations (margin < -" << slack << "*rhs): " << res.violations
            << "\n"
            << "empirical tightness inf(margin/rhs): " << res.min_margin_ratio
            << "\n";
  return res.violations == 0 ? kExitOk : 1;
}

int cmd_verify_greens(const std::vector<double>& rho_grid, int theta_samples,
                      double theta0, int cells, int suite_size,
                      const std::string& out_opt) {
  using std::abs;
  bool ok = true;
  const auto check = [&ok](bool cond, const std::string& what) {
    std::cout << (cond ? "  ok: " : "  FAIL: ") << what << "\n";
    ok = ok && cond;
  };

  // closed form for g == 1 at lambda = 1: u = 1 - (e^x + e^(2-x)) / (1 + e^2)
  {
    const ftiss::Grid1D grid(cells);
    ftiss::Field ones(grid);
    for (auto& v : ones.values) v = 1.0;
    const auto u = ftiss::bvp_solve(ftiss::ComplexSpectral{1.0, 0.0}, ones);
    double worst = 0.0;
    for (int i = 0; i <= grid.n_cells; ++i) {
      const double x = grid.node(i);
      const double exact =
          1.0 - (std::exp(x) + std::exp(2.0 - x)) / (1.0 + std::exp(2.0));
      worst = std::max(worst, std::abs(u.values[i] - exact));
    }
    std::cout << "closed-form max node error: " << worst << "\n";
    check(worst <= 1e-4, "closed-form comparison <= 1e-4");
  }

  // finite-difference residual of lambda^2 u - u'' = g for a smooth g
  {
    const ftiss::Grid1D grid(cells);
    const ftiss::Field g = ftiss::random_test_field(7, 6, grid);
    const ftiss::ComplexSpectral lam{1.0, 0.3};
    const auto u = ftiss::bvp_solve(lam, g);
    const std::complex<double> L2 = lam.lambda() * lam.lambda();
    double num = 0.0, den = 0.0;
    for (int i = 1; i < grid.n_cells; ++i) {
      const std::complex<double> upp =
          (u.values[i + 1] - 2.0 * u.values[i] + u.values[i - 1]) /
          (grid.h * grid.h);
      num += std::norm(L2 * u.values[i] - upp - g.values[i]);
      den += g.values[i] * g.values[i];
    }
    const double rel = std::sqrt(num / den);
    std::cout << "relative residual: " << rel << "\n";
    check(rel <= 1e-3, "bvp residual <= 1e-3 relative");
  }

  // scan plus grid-doubling stability
  {
    std::vector<ftiss::Field> suite;
    const ftiss::Grid1D grid(cells);
    for (int s = 0; s < suite_size; ++s)
      suite.push_back(ftiss::random_test_field(100 + s, 8, grid));
    const auto scan = ftiss::sector_bound_scan(theta0, rho_grid, theta_samples, suite);

    std::vector<ftiss::Field> suite2;
    const ftiss::Grid1D grid2(2 * cells);
    for (int s = 0; s < suite_size; ++s)
      suite2.push_back(ftiss::random_test_field(100 + s, 8, grid2));
    const auto scan2 =
        ftiss::sector_bound_scan(theta0, rho_grid, theta_samples, suite2);

    const fs::path dir = prepare_out_dir(out_opt);
    std::string csv =
        "# bvp parameter lambda = rho e^(i theta); resolvent argument nu = "
        "lambda^2; ratio = |nu| * ||u||_2 / ||g||_2\n"
        "# sampled region: |theta| <= 0.9*theta0 (Re lambda > 0); the wider "
        "sector |arg nu| < 2*theta0 is unverified by this scan\n"
        "rho,theta,g_id,ratio\n";
    for (const auto& row : scan.table)
      csv += ftiss::format_g17(row.rho) + ',' + ftiss::format_g17(row.theta) + ',' +
             std::to_string(row.g_id) + ',' + ftiss::format_g17(row.ratio) + '\n';
    ftiss::write_text_file((dir / "sector_scan.csv").string(), csv);

    const double drift = std::abs(scan2.m_hat - scan.m_hat) / scan.m_hat;
    std::cout << "m_hat = " << scan.m_hat << " (cells " << cells << "), "
              << scan2.m_hat << " (cells " << 2 * cells << "), drift " << drift
              << "\n";
    check(drift <= 0.01, "m_hat stable within 1% under grid doubling");
  }
  return ok ? kExitOk : 1;
}

int cmd_verify_certificate(double k, double r, double eps_opt, double eps0_opt,
                           double w0_norm) {
  const ftiss::PDEParams params{k, r};
  const double eps = eps_opt > 0.0 ? eps_opt : ftiss::default_epsilon(params);
  const auto cert = ftiss::pde_certificate(params, eps);
  const double eps0 =
      eps0_opt > 0.0 ? eps0_opt : ftiss::default_epsilon0(cert);
  const auto env = ftiss::derive_gains(cert, eps0);

  // independent formula evaluation, kept apart from the library routines
  const double b_ref = 16.0 * k * eps / (3.0 + r);
  const double tau_ref = 0.5 * (3.0 + r);
  const double sigma0_ref = 0.5 * tau_ref;
  const double m_ref = b_ref - eps0;  // mu2 = 1
  bool ok = true;
  const auto compare = [&ok](const char* what, double got, double want) {
    const double rel = std::abs(got - want) / std::max(1.0, std::abs(want));
    std::cout << "  " << what << " = " << got << " (reference " << want
              << ", rel err " << rel << ")\n";
    ok = ok && rel <= 1e-12;
  };
  std::cout << "certificate for k=" << k << ", r=" << r << ", eps=" << eps
            << ", eps0=" << eps0 << "\n";
  compare("b", cert.decay_coeff, b_ref);
  compare("tau", cert.decay_power, tau_ref);
  compare("sigma0", env.decay_exponent, sigma0_ref);
  compare("M", env.decay_modulus, m_ref);
  for (double s : {0.5, 1.0, 2.0, 10.0})
    compare(("chi(" + std::to_string(s) + ")").c_str(),
            ftiss::kfun_eval(env.chi, s),
            std::pow(2.0 * s / eps0, 1.0 / (tau_ref - 1.0)));

  std::cout << "settling bounds:\n";
  for (double norm : {w0_norm, std::sqrt(12.5), std::sqrt(1250.0)}) {
    if (!(norm > 0.0)) continue;
    std::cout << "  |w0| = " << norm
              << " -> T* <= " << ftiss::pde_settling_bound(params, norm) << "\n";
  }

  // the abstract bound at eps -> sup reproduces the model bound
  for (double delta : {1e-2, 1e-3, 1e-4}) {
    const double eps_near = (1.0 - delta) / (2.0 * std::sqrt(k));
    const double norm = w0_norm > 0.0 ? w0_norm : std::sqrt(12.5);
    const double abs_bound = ftiss::settling_bound_abstract(
        ftiss::pde_certificate(params, eps_near), norm * norm);
    const double model_bound = ftiss::pde_settling_bound(params, norm);
    const double gap = std::abs(abs_bound - model_bound) / model_bound;
    std::cout << "  limit check delta=" << delta << ": relative gap " << gap
              << "\n";
    ok = ok && gap <= 10.0 * delta;
  }
  std::cout << (ok ? "certificate checks passed\n" : "certificate checks FAILED\n");
  return ok ? kExitOk : 1;
}

void write_series_outputs(const std::string& figure_id,
                          const std::vector<ftiss::SeriesSpec>& series,
                          const std::vector<ftiss::TrajectoryRecord>& trajs,
                          const fs::path& dir) {
  if (series.size() == 1) {
    ftiss::write_text_file((dir / (figure_id + "_surface.csv")).string(),
                           ftiss::snapshots_csv(trajs[0]));
    ftiss::write_text_file((dir / (figure_id + "_trajectory.csv")).string(),
                           ftiss::trajectory_csv(trajs[0]));
    std::cout << "wrote " << (dir / (figure_id + "_surface.csv")).string() << "\n";
    return;
  }
  std::string csv = "series,t,l2_norm\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    for (std::size_t i = 0; i < trajs[s].size(); ++i) {
      csv += series[s].label + ',' + ftiss::format_g17(trajs[s].times[i]) + ',' +
             ftiss::format_g17(trajs[s].l2_norms[i]) + '\n';
    }
  }
  ftiss::write_text_file((dir / (figure_id + "_norms.csv")).string(), csv);
  std::cout << "wrote " << (dir / (figure_id + "_norms.csv")).string() << "\n";
}

int cmd_reproduce(const std::string& figure_id, const std::string& out_opt,
                  int jobs) {
  const auto series = ftiss::reproduce_series(figure_id);
  const fs::path dir = prepare_out_dir(out_opt);
  std::vector<ftiss::TrajectoryRecord> trajs(series.size());
  if (jobs > 1 && series.size() > 1) {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(series.size());
    for (std::size_t s = 0; s < series.size(); ++s)
      workers.emplace_back([&, s] {
        try {
          trajs[s] = ftiss::simulate(series[s].config);
        } catch (...) {
          errors[s] = std::current_exception();
        }
      });
    for (auto& w : workers) w.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  } else {
    for (std::size_t s = 0; s < series.size(); ++s)
      trajs[s] = ftiss::simulate(series[s].config);
  }
  write_series_outputs(figure_id, series, trajs, dir);
  return kExitOk;
}

int cmd_presets() {
  std::cout << "name    k    r    init_amplitude  dist_amplitude  n_cells  dt     "
               "t_end\n";
  for (const auto& p : ftiss::experiment_presets()) {
    std::ostringstream row;
    row << p.name << "  " << p.config.params.k << "  " << p.config.params.r
        << "  " << p.config.init.amplitude << "  " << p.config.dist.amplitude
        << "  " << p.config.n_cells << "  " << p.config.dt << "  "
        << p.config.t_end;
    std::cout << row.str() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-time stability workbench for a sublinear reaction-diffusion "
               "model: simulate, audit, and verify"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "run one simulation and audit it");
  std::string sim_config, sim_preset, sim_out;
  sim->add_option("--config", sim_config, "path to a JSON config");
  sim->add_option("--preset", sim_preset, "preset name (see `presets`)");
  sim->add_option("--out", sim_out, "output directory (default $FTISS_OUT_DIR or .)");

  auto* verify = app.add_subcommand("verify", "run a verification harness");
  std::string verify_kind, verify_out;
  verify->add_option("kind", verify_kind, "inequality | greens | certificate")
      ->required();
  int v_seeds = 1000, v_cells = 2000, v_theta_samples = 3, v_suite = 10;
  double v_slack = 1e-3, v_theta0 = std::numbers::pi / 3.0;
  int vg_cells = 400;
  std::vector<double> v_rho = {0.1, 1.0, 10.0, 100.0};
  double v_k = 2.0, v_r = 0.6, v_eps = -1.0, v_eps0 = -1.0, v_w0 = -1.0;
  verify->add_option("--seeds", v_seeds, "inequality: number of random fields");
  verify->add_option("--cells", v_cells, "inequality: grid cells");
  verify->add_option("--slack", v_slack, "inequality: relative slack");
  verify->add_option("--rho", v_rho, "greens: rho sweep")->delimiter(',');
  verify->add_option("--theta-samples", v_theta_samples, "greens: theta count");
  verify->add_option("--theta0", v_theta0, "greens: sector half-angle");
  verify->add_option("--scan-cells", vg_cells, "greens: grid cells for the scan");
  verify->add_option("--suite", v_suite, "greens: right-hand-side suite size");
  verify->add_option("--k", v_k, "certificate: reaction gain");
  verify->add_option("--r", v_r, "certificate: sublinearity exponent");
  verify->add_option("--eps", v_eps, "certificate: epsilon (default 0.9/(2*sqrt(k)))");
  verify->add_option("--eps0", v_eps0, "certificate: epsilon0 (default b/2)");
  verify->add_option("--w0-norm", v_w0, "certificate: initial norm for bounds");
  verify->add_option("--out", verify_out, "output directory");

  auto* rep = app.add_subcommand("reproduce", "emit the data series behind a figure");
  std::string rep_id, rep_out;
  int rep_jobs = 1;
  rep->add_option("figure-id", rep_id, "fig1a, fig1b, fig1c, fig2a, fig2b, fig2c")
      ->required();
  rep->add_option("--out", rep_out, "output directory");
  rep->add_option("--jobs", rep_jobs, "parallel workers for multi-series figures");

  auto* pre = app.add_subcommand("presets", "list experiment presets");
  (void)pre;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_config, sim_preset, sim_out);
    if (verify->parsed()) {
      if (verify_kind == "inequality")
        return cmd_verify_inequality(v_seeds, v_cells, v_slack, verify_out);
      if (verify_kind == "greens")
        return cmd_verify_greens(v_rho, v_theta_samples, v_theta0, vg_cells, v_suite,
                                 verify_out);
      if (verify_kind == "certificate")
        return cmd_verify_certificate(v_k, v_r, v_eps, v_eps0, v_w0);
      std::cerr << "error: unknown verify kind '" << verify_kind
                << "' (expected inequality, greens, or certificate)\n";
      return kExitValidation;
    }
    if (rep->parsed()) return cmd_reproduce(rep_id, rep_out, rep_jobs);
    if (pre->parsed()) return cmd_presets();
  } catch (const ftiss::integrator_divergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
