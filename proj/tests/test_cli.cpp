#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "ftiss/config_io.hpp"
#include "ftiss/pde.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Runs the installed binary, captures stdout+stderr and the exit code.
struct RunResult {
  int exit_code;
  std::string output;
};

std::string cli_path() {
  const char* bin = std::getenv("FTISS_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "FTISS_BIN must point at the ftiss binary");
  return bin;
}

RunResult run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[512];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe))
    output.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("ftiss_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("presets verb lists the figure presets") {
  const auto res = run_cli("presets");
  CHECK(res.exit_code == 0);
  for (const char* name : {"fig1a", "fig1b", "fig1c", "fig2a", "fig2b", "fig2c"})
    CHECK(res.output.find(name) != std::string::npos);
}

TEST_CASE("simulate a preset and audit the outputs") {
  TempDir dir;
  const auto res = run_cli("simulate --preset fig1a --out " + dir.path.string());
  CHECK(res.exit_code == 0);
  for (const char* f : {"trajectory.csv", "snapshots.csv", "audit.json"})
    CHECK(fs::exists(dir.path / f));
  const json audit = json::parse(slurp(dir.path / "audit.json"));
  REQUIRE(audit.contains("extinction"));
  REQUIRE(!audit["extinction"]["time"].is_null());
  CHECK(audit["extinction"]["time"].get<double>() <= 4.0963);
  CHECK(audit["envelope"]["worst_ratio"].get<double>() <= 1.0);
  CHECK(audit["dissipation"]["pass_fraction"].get<double>() >= 0.99);
  CHECK(audit["config"]["n_cells"] == 200);
}

TEST_CASE("strongly disturbed preset stays bounded and never settles") {
  TempDir dir;
  const auto res = run_cli("simulate --preset fig2b --out " + dir.path.string());
  CHECK(res.exit_code == 0);
  const json audit = json::parse(slurp(dir.path / "audit.json"));
  CHECK(audit["extinction"]["time"].is_null());
  // the norm column stays finite and above the settling floor throughout
  std::istringstream lines(slurp(dir.path / "trajectory.csv"));
  std::string line;
  std::getline(lines, line);
  double min_norm = 1e300, max_norm = 0.0;
  while (std::getline(lines, line)) {
    const double norm = std::strtod(line.c_str() + line.find(',') + 1, nullptr);
    min_norm = std::min(min_norm, norm);
    max_norm = std::max(max_norm, norm);
  }
  CHECK(min_norm > 1e-6);
  CHECK(max_norm < 100.0);
}

TEST_CASE("identical configs produce byte-identical outputs") {
  TempDir dir;
  const fs::path cfg_path = dir.path / "cfg.json";
  ftiss::SimConfig cfg;
  cfg.params = ftiss::PDEParams{2.0, 0.6};
  cfg.init = ftiss::InitSpec::profile(5.0);
  cfg.dist = ftiss::DisturbanceSpec::sine(20.0);
  cfg.n_cells = 64;
  cfg.dt = 1e-3;
  cfg.t_end = 0.5;
  ftiss::write_text_file(cfg_path.string(),
                         ftiss::sim_config_to_json(cfg).dump(2));
  const fs::path out1 = dir.path / "a", out2 = dir.path / "b";
  CHECK(run_cli("simulate --config " + cfg_path.string() + " --out " +
                out1.string())
            .exit_code == 0);
  CHECK(run_cli("simulate --config " + cfg_path.string() + " --out " +
                out2.string())
            .exit_code == 0);
  CHECK(slurp(out1 / "trajectory.csv") == slurp(out2 / "trajectory.csv"));
  CHECK(slurp(out1 / "snapshots.csv") == slurp(out2 / "snapshots.csv"));
  CHECK(slurp(out1 / "audit.json") == slurp(out2 / "audit.json"));
}

TEST_CASE("validation failures exit with code 2") {
  TempDir dir;
  SUBCASE("missing config file") {
    CHECK(run_cli("simulate --config " + (dir.path / "nope.json").string())
              .exit_code == 2);
  }
  SUBCASE("empty config document") {
    const fs::path p = dir.path / "empty.json";
    ftiss::write_text_file(p.string(), "{}\n");
    const auto res = run_cli("simulate --config " + p.string());
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("params") != std::string::npos);
  }
  SUBCASE("malformed json names the line") {
    const fs::path p = dir.path / "broken.json";
    ftiss::write_text_file(p.string(), "{\n\"params\": }\n");
    const auto res = run_cli("simulate --config " + p.string());
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("line") != std::string::npos);
  }
  SUBCASE("unknown preset") {
    CHECK(run_cli("simulate --preset fig9z").exit_code == 2);
  }
  SUBCASE("no input selected") {
    CHECK(run_cli("simulate").exit_code == 2);
  }
  SUBCASE("unknown subcommand") {
    CHECK(run_cli("frobnicate").exit_code == 2);
  }
  SUBCASE("unknown verify kind") {
    CHECK(run_cli("verify spectra").exit_code == 2);
  }
  SUBCASE("unknown figure id") {
    CHECK(run_cli("reproduce fig7q").exit_code == 2);
  }
}

TEST_CASE("integrator divergence exits with code 3") {
  TempDir dir;
  const fs::path p = dir.path / "diverge.json";
  ftiss::SimConfig cfg;
  cfg.params = ftiss::PDEParams{1e300, 0.6};
  cfg.init = ftiss::InitSpec::profile(50.0);
  cfg.dist = ftiss::DisturbanceSpec::sine(1.0);
  cfg.n_cells = 4;
  cfg.dt = 10.0;
  cfg.t_end = 100.0;
  ftiss::write_text_file(p.string(), ftiss::sim_config_to_json(cfg).dump(2));
  const auto res = run_cli("simulate --config " + p.string() + " --out " +
                           dir.path.string());
  CHECK(res.exit_code == 3);
  CHECK(res.output.find("diverged") != std::string::npos);
}

TEST_CASE("reproduce figure data") {
  TempDir dir;
  SUBCASE("surface panel carries the initial profile in its first slice") {
    const auto res = run_cli("reproduce fig1a --out " + dir.path.string());
    CHECK(res.exit_code == 0);
    const std::string csv = slurp(dir.path / "fig1a_surface.csv");
    const ftiss::Grid1D grid(200);
    const ftiss::Field w0 = ftiss::init_field(ftiss::InitSpec::profile(5.0), grid);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);  // header
    for (int i = 0; i <= grid.n_cells; ++i) {
      REQUIRE(std::getline(lines, line));
      const auto c1 = line.find(','), c2 = line.find(',', line.find(',') + 1);
      CHECK(std::strtod(line.c_str(), nullptr) == 0.0);  // t = 0 slice
      CHECK(std::strtod(line.c_str() + c1 + 1, nullptr) == grid.node(i));
      CHECK(std::strtod(line.c_str() + c2 + 1, nullptr) == w0.values[i]);
    }
  }
  SUBCASE("norm pair for the undisturbed amplitudes reaches the floor") {
    const auto res = run_cli("reproduce fig1c --out " + dir.path.string());
    CHECK(res.exit_code == 0);
    const std::string csv = slurp(dir.path / "fig1c_norms.csv");
    CHECK(csv.find("A1=5,") != std::string::npos);
    CHECK(csv.find("A1=50,") != std::string::npos);
    // both series drop below the extinction floor by the end of the horizon
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    double min5 = 1e300, min50 = 1e300;
    while (std::getline(lines, line)) {
      const auto c2 = line.rfind(',');
      const double norm = std::strtod(line.c_str() + c2 + 1, nullptr);
      if (line.rfind("A1=5,", 0) == 0) min5 = std::min(min5, norm);
      if (line.rfind("A1=50,", 0) == 0) min50 = std::min(min50, norm);
    }
    CHECK(min5 <= 1e-6);
    CHECK(min50 <= 1e-6);
  }
  SUBCASE("disturbed norm pair, parallel workers") {
    const auto res = run_cli("reproduce fig2c --jobs 2 --out " + dir.path.string());
    CHECK(res.exit_code == 0);
    const std::string csv = slurp(dir.path / "fig2c_norms.csv");
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    std::vector<std::pair<double, double>> s20, s40;
    while (std::getline(lines, line)) {
      const auto c1 = line.find(',');
      const auto c2 = line.rfind(',');
      const double t = std::strtod(line.c_str() + c1 + 1, nullptr);
      const double norm = std::strtod(line.c_str() + c2 + 1, nullptr);
      if (line.rfind("A2=20,", 0) == 0) s20.emplace_back(t, norm);
      if (line.rfind("A2=40,", 0) == 0) s40.emplace_back(t, norm);
    }
    REQUIRE(s20.size() == s40.size());
    REQUIRE(!s20.empty());
    // stronger forcing dominates pointwise once the transient has passed
    for (std::size_t i = 0; i < s20.size(); ++i) {
      if (s20[i].first < 4.0) continue;
      CHECK(s40[i].second >= s20[i].second);
    }
  }
}

TEST_CASE("verify verbs run their harnesses") {
  TempDir dir;
  const auto ineq = run_cli("verify inequality --seeds 20 --out " + dir.path.string());
  CHECK(ineq.exit_code == 0);
  CHECK(ineq.output.find("violations") != std::string::npos);
  CHECK(fs::exists(dir.path / "interpolation_margins.csv"));
  CHECK(fs::exists(dir.path / "corollary_margins.csv"));

  const auto greens = run_cli("verify greens --scan-cells 200 --out " + dir.path.string());
  CHECK(greens.exit_code == 0);
  CHECK(greens.output.find("m_hat") != std::string::npos);
  const std::string scan = slurp(dir.path / "sector_scan.csv");
  CHECK(scan.find("rho,theta,g_id,ratio") != std::string::npos);
  CHECK(scan.find("lambda^2") != std::string::npos);

  const auto cert = run_cli("verify certificate --k 2 --r 0.6");
  CHECK(cert.exit_code == 0);
  CHECK(cert.output.find("sigma0 = 0.9") != std::string::npos);
}

TEST_CASE("FTISS_OUT_DIR supplies the default output directory") {
  TempDir dir;
  const std::string cmd = "FTISS_OUT_DIR=" + dir.path.string() + " " + cli_path() +
                          " reproduce fig1a 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[256];
  while (std::fread(buf, 1, sizeof buf, pipe) > 0) {
  }
  CHECK(WEXITSTATUS(pclose(pipe)) == 0);
  CHECK(fs::exists(dir.path / "fig1a_surface.csv"));
}
