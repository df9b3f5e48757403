#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(UAVSCF_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf;
  while (std::fgets(buf.data(), buf.size(), pipe)) res.output += buf.data();
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

fs::path tmp_dir() {
  fs::path dir(UAVSCF_TEST_TMP);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

}  // namespace

TEST_CASE("cli: analytic report cross-checks both root-finding routes") {
  auto res = run_cli("analytic --n 65536 --seed 3");
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.output.find("critical range x1* (bisection)") !=
          std::string::npos);
  REQUIRE(res.output.find("relative difference") != std::string::npos);
  auto pos = res.output.find("relative difference ");
  double rel = std::stod(res.output.substr(pos + 20));
  REQUIRE(rel < 1e-9);
}

TEST_CASE("cli: 2d analytic report includes the descent carry term") {
  auto res = run_cli("analytic --dim 2d --n 65536");
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.output.find("h/v") != std::string::npos);
}

TEST_CASE("cli: invalid configuration exits 2 naming the constraint") {
  fs::path cfg = tmp_dir() / "bad_region.json";
  write_file(cfg, R"({"s_m": 3000.0, "v_mps": 20.0, "t0_s": 400.0})");
  auto res = run_cli("analytic --config " + cfg.string());
  REQUIRE(res.exit_code == 2);
  REQUIRE(res.output.find("sqrt(3)/3") != std::string::npos);
}

TEST_CASE("cli: simulate writes byte-identical csv under one seed") {
  fs::path out1 = tmp_dir() / "sim1";
  fs::path out2 = tmp_dir() / "sim2";
  fs::remove_all(out1);
  fs::remove_all(out2);
  std::string base =
      "simulate --n 2048 --seed 12 --trials 2 ";
  auto r1 = run_cli(base + "--out " + out1.string());
  REQUIRE(r1.exit_code == 0);
  auto r2 = run_cli(base + "--out " + out2.string());
  REQUIRE(r2.exit_code == 0);
  REQUIRE(slurp(out1 / "bins.csv") == slurp(out2 / "bins.csv"));
  REQUIRE(fs::exists(out1 / "manifest.json"));
  REQUIRE(fs::exists(out1 / "summary.json"));
  // maneuver encounters are reported as a column
  auto r3 = run_cli("simulate --n 2048 --seed 12 --trials 1 --mobility-J 100 "
                    "--out " +
                    (tmp_dir() / "simJ").string());
  REQUIRE(r3.exit_code == 0);
  std::string csv = slurp(tmp_dir() / "simJ" / "bins.csv");
  REQUIRE(csv.find("maneuver_crossers") != std::string::npos);
}

TEST_CASE("cli: zero trials is a validation error") {
  auto res = run_cli("simulate --n 2048 --trials 0 --out " +
                     (tmp_dir() / "simz").string());
  REQUIRE(res.exit_code == 2);
}

TEST_CASE("cli: sweep with a single grid point emits one row") {
  fs::path spec = tmp_dir() / "sweep1.json";
  write_file(spec, R"({"variable": "t0", "values": [500.0], "trials": 1})");
  fs::path out = tmp_dir() / "sweep_out";
  auto res = run_cli("sweep --spec " + spec.string() + " --n 2048 --out " +
                     out.string());
  REQUIRE(res.exit_code == 0);
  std::string csv = slurp(out / "sweep.csv");
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  REQUIRE(lines == 2);  // header plus one row
}

TEST_CASE("cli: malformed spec exits 2 with diagnostics") {
  fs::path spec = tmp_dir() / "broken.json";
  write_file(spec, "{ not json ");
  auto res = run_cli("sweep --spec " + spec.string() + " --out " +
                     (tmp_dir() / "sx").string());
  REQUIRE(res.exit_code == 2);
  REQUIRE(res.output.find("parse error") != std::string::npos);

  fs::path spec2 = tmp_dir() / "novar.json";
  write_file(spec2, R"({"values": [1.0, 2.0]})");
  auto res2 = run_cli("sweep --spec " + spec2.string() + " --out " +
                      (tmp_dir() / "sy").string());
  REQUIRE(res2.exit_code == 2);
  REQUIRE(res2.output.find("variable") != std::string::npos);
}

TEST_CASE("cli: heatmap emits the stated resolution") {
  fs::path spec = tmp_dir() / "heat.json";
  write_file(spec, R"({"r_m": 0.8, "resolution": 7})");
  fs::path cfg = tmp_dir() / "unit_region.json";
  write_file(cfg,
             R"({"s_m": 1.0, "v_mps": 1.0, "t0_s": 4.0, "n": 512, "seed": 5})");
  fs::path out = tmp_dir() / "heat_out";
  auto res = run_cli("heatmap --spec " + spec.string() + " --config " +
                     cfg.string() + " --out " + out.string());
  REQUIRE(res.exit_code == 0);
  std::string csv = slurp(out / "heatmap.csv");
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  REQUIRE(lines == 1 + 7 * 7 * 4);  // header + nx*ny*nz
  auto meta = nlohmann::json::parse(slurp(out / "heatmap_meta.json"));
  REQUIRE(meta["resolution"]["nx"] == 7);
}

TEST_CASE("cli: delay curve emits grid rows plus the asymptote row") {
  fs::path spec = tmp_dir() / "dc.json";
  write_file(spec, R"({"n_values": [2048.0, 4096.0], "trials": 1})");
  fs::path out = tmp_dir() / "dc_out";
  auto res = run_cli("delay-curve --spec " + spec.string() +
                     " --seed 2 --out " + out.string());
  REQUIRE(res.exit_code == 0);
  std::string csv = slurp(out / "delay_curve.csv");
  REQUIRE(csv.find("asymptote") != std::string::npos);
}

TEST_CASE("cli: unwritable output directory exits 3") {
  fs::path block = tmp_dir() / "blockfile";
  write_file(block, "x");
  auto res = run_cli("analytic --n 65536 --out " +
                     (block / "sub").string());
  REQUIRE(res.exit_code == 3);
}

TEST_CASE("cli: flags override config file values") {
  fs::path cfg = tmp_dir() / "cfg_override.json";
  write_file(cfg, R"({"n": 1024, "seed": 10})");
  fs::path out = tmp_dir() / "ov";
  fs::remove_all(out);
  auto res = run_cli("analytic --config " + cfg.string() +
                     " --n 65536 --out " + out.string());
  REQUIRE(res.exit_code == 0);
  auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
  REQUIRE(manifest["resolved_config"]["n"] == 65536);
  REQUIRE(manifest["resolved_config"]["seed"] == 10);
}

TEST_CASE("cli: help lists the subcommands") {
  auto res = run_cli("--help");
  REQUIRE(res.output.find("analytic") != std::string::npos);
  REQUIRE(res.output.find("simulate") != std::string::npos);
  REQUIRE(res.output.find("sweep") != std::string::npos);
  REQUIRE(res.output.find("heatmap") != std::string::npos);
  REQUIRE(res.output.find("delay-curve") != std::string::npos);
}
