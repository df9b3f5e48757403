// Command-line front end: scenario configuration, subcommand dispatch and
// result emission. Exit codes: 0 success, 2 configuration/validation error,
// 3 I/O error.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uavscf/analytic.hpp"
#include "uavscf/config.hpp"
#include "uavscf/experiments.hpp"
#include "uavscf/io.hpp"
#include "uavscf/simcore.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace uavscf;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string dim;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> seed;
  std::optional<double> mobility_j;
  std::string out_dir;
};

void add_common_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path,
                  "JSON scenario file; flags override file values");
  cmd->add_option("--dim", args.dim, "region mode: 3d or 2d")
      ->check(CLI::IsMember({"3d", "2d"}));
  cmd->add_option("--n", args.n, "UAV count");
  cmd->add_option("--seed", args.seed, "RNG seed (64-bit)");
  cmd->add_option("--mobility-J", args.mobility_j,
                  "maneuver length J in meters (0 disables)");
  cmd->add_option("--out", args.out_dir, "output directory");
}

NetworkConfig resolve_config(const CommonArgs& args) {
  NetworkConfig cfg;
  if (!args.config_path.empty()) cfg = io::load_config(args.config_path);
  if (!args.dim.empty())
    cfg.dim = args.dim == "3d" ? Dim::three_d : Dim::two_d;
  if (args.n) cfg.n = *args.n;
  if (args.seed) cfg.seed = *args.seed;
  if (args.mobility_j) cfg.j_m = *args.mobility_j;
  cfg.validate();
  return cfg;
}

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

// The manifest lands on disk before any computation starts.
void write_manifest(const fs::path& out_dir, const std::string& subcommand,
                    const CommonArgs& args, const NetworkConfig& cfg) {
  fs::create_directories(out_dir);
  json manifest{{"subcommand", subcommand},
                {"config_path", args.config_path},
                {"resolved_config", io::config_to_json(cfg)},
                {"seed", cfg.seed},
                {"out_dir", out_dir.string()},
                {"timestamp", iso_timestamp()}};
  io::write_json(out_dir / "manifest.json", manifest);
}

json sidecar_base(const NetworkConfig& cfg) {
  return json{{"config", io::config_to_json(cfg)},
              {"build", io::build_version()}};
}

json load_spec(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw io::IoError("cannot open spec file " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError("spec parse error in " + path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// analytic
// ---------------------------------------------------------------------------

int cmd_analytic(const CommonArgs& args) {
  NetworkConfig cfg = resolve_config(args);
  analytic::require_n_for_thresholds(cfg);
  std::ostringstream out;
  out.setf(std::ios::fmtflags(0), std::ios::floatfield);
  out.precision(12);

  double radius = cfg.inscribed_radius();
  auto ranges = analytic::critical_ranges(cfg);
  out << "scenario: dim=" << to_string(cfg.dim) << " n=" << cfg.n
      << " s=" << cfg.s_m << " m, v=" << cfg.v_mps << " m/s, t0=" << cfg.t0_s
      << " s";
  if (cfg.dim == Dim::two_d) out << ", h=" << cfg.h_m << " m";
  out << ", alpha=" << cfg.alpha << ", seed=" << cfg.seed << "\n";
  out << "cell side: " << cfg.cell_side()
      << " m, neighborhood radius r_n: " << cfg.neighborhood_radius()
      << " m, pass time: " << cfg.pass_time() << " s\n";
  out << "k_th = " << ranges.k_th << ", u = " << ranges.u
      << ", gamma = " << ranges.gamma << "\n";
  out << "critical range x1* (bisection) = " << ranges.x1_star << " m\n";
  if (ranges.closed_form_valid) {
    double rel = std::abs(ranges.x1_star_closed - ranges.x1_star) /
                 ranges.x1_star;
    out << "critical range x1* (closed form) = " << ranges.x1_star_closed
        << " m (relative difference " << rel << ")\n";
  } else {
    out << "critical range x1* closed form not real for this "
           "configuration; bisection value is authoritative\n";
  }
  if (ranges.regimes_overlap)
    out << "x2*: regimes overlap (u <= gamma); no sparse regime\n";
  else
    out << "x2* = " << ranges.x2_star << " m\n";

  double rate = analytic::per_hop_rate(cfg);
  out << "per-hop rate R = " << rate << "\n";
  out << "\ncapacity profile (per node, rate units of R):\n";
  out << "  x_m  regime  per_node\n";
  for (int i = 1; i <= 20; ++i) {
    double x = radius * i / 20.0;
    auto p = analytic::capacity_scf(cfg, x, ranges);
    out << "  " << x << "  " << analytic::to_string(p.regime) << "  ";
    if (p.has_estimate)
      out << p.per_node;
    else
      out << "bracket [" << p.bracket_lo << ", " << p.bracket_hi << "]";
    out << "\n";
  }

  auto delay = analytic::delay_bound(cfg);
  out << "\ndelay: carry = " << delay.carry_s;
  if (cfg.dim == Dim::two_d)
    out << " s (2K/(3v) = " << 2.0 * radius / (3.0 * cfg.v_mps)
        << " s plus descent h/v = " << cfg.h_m / cfg.v_mps << " s)";
  else
    out << " s ((3/4)L/v)";
  out << "\n";
  out << "delay waiting term: quadrature = " << delay.waiting_quad_s
      << " s, closed-form bound = " << delay.waiting_bound_s << " s\n";
  out << "delay total: quadrature = " << delay.total_quad_s
      << " s, bound = " << delay.total_bound_s << " s\n";

  out << "\nmobility control N(J):\n  J_m  N(J)  threshold  saturates  "
         "monitor_loss_s\n";
  for (double frac : {0.0, 0.125, 0.25, 0.5, 1.0}) {
    double j = cfg.s_m * frac;
    auto mob = analytic::mobility_encounters(cfg, j);
    out << "  " << j << "  " << mob.count << "  " << mob.saturation_level
        << "  " << (mob.saturates ? "yes" : "no") << "  "
        << mob.monitor_loss_s << "\n";
  }

  std::cout << out.str();
  if (!args.out_dir.empty()) {
    fs::path dir(args.out_dir);
    write_manifest(dir, "analytic", args, cfg);
    json rep{{"x1_star_m", ranges.x1_star},
             {"x1_star_closed_m", ranges.closed_form_valid
                                      ? json(ranges.x1_star_closed)
                                      : json()},
             {"x2_star_m", ranges.regimes_overlap ? json() : json(ranges.x2_star)},
             {"u", ranges.u},
             {"gamma", ranges.gamma},
             {"k_th", ranges.k_th},
             {"per_hop_rate", rate},
             {"delay_carry_s", delay.carry_s},
             {"delay_waiting_quad_s", delay.waiting_quad_s},
             {"delay_waiting_bound_s", delay.waiting_bound_s}};
    io::write_json(dir / "analytic.json", rep);
    io::write_text(dir / "analytic.txt", out.str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

void write_bins_csv(const fs::path& path,
                    const experiments::TrialAggregate& agg) {
  io::CsvWriter csv({"bin_lo_m", "bin_hi_m", "x_mean_m", "cell_pop",
                     "shaded_count", "ku_pred", "return_crossers",
                     "maneuver_crossers", "served_share", "served_share_se",
                     "per_cell_rate", "per_node_rate", "per_node_rate_se",
                     "wait_s", "wait_se_s", "delay_s", "delay_se_s",
                     "delay_samples", "censored"});
  for (const auto& b : agg.bins) {
    csv.add_row({b.x_lo, b.x_hi, b.x_mean.mean, b.cell_pop.mean,
                 b.shaded.mean, b.ku_pred.mean, b.return_crossers.mean,
                 b.maneuver_crossers.mean, b.served_share.mean,
                 b.served_share.stderr_, b.per_cell_rate.mean,
                 b.per_node_rate.mean, b.per_node_rate.stderr_,
                 b.wait_s.mean, b.wait_s.stderr_, b.delay_s.mean,
                 b.delay_s.stderr_, b.delay_samples, b.censored});
  }
  csv.write(path);
}

int cmd_simulate(const CommonArgs& args, int trials) {
  if (trials < 1)
    throw ConfigError("trials must be >= 1; got " + std::to_string(trials));
  NetworkConfig cfg = resolve_config(args);
  fs::path dir(args.out_dir.empty() ? "out" : args.out_dir);
  write_manifest(dir, "simulate", args, cfg);

  auto t_start = std::chrono::steady_clock::now();
  sim::SimOptions opts;
  experiments::TrialAggregate agg =
      experiments::run_trials(cfg, opts, cfg.seed, trials);
  double wall = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t_start)
                    .count();

  write_bins_csv(dir / "bins.csv", agg);
  json sidecar = sidecar_base(cfg);
  sidecar["trials"] = trials;
  std::vector<std::uint64_t> seeds;
  for (int t = 0; t < trials; ++t)
    seeds.push_back(experiments::trial_seed(cfg.seed, t));
  sidecar["seeds"] = seeds;
  sidecar["wall_time_s"] = wall;
  sidecar["delay_mean_s"] = agg.delay_s.mean;
  sidecar["wait_mean_s"] = agg.wait_s.mean;
  sidecar["multihop_per_node"] = agg.multihop_per_node.mean;
  sidecar["censored_fraction"] = agg.censored_fraction;
  io::write_json(dir / "summary.json", sidecar);
  std::cout << "wrote " << (dir / "bins.csv").string() << " ("
            << agg.bins.size() << " bins, " << trials << " trials)\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sweep / heatmap / delay-curve
// ---------------------------------------------------------------------------

int cmd_sweep(const CommonArgs& args, const std::string& spec_path) {
  json spec_json = load_spec(spec_path);
  experiments::SweepSpec spec;
  if (!spec_json.contains("variable") || !spec_json.contains("values"))
    throw ConfigError("sweep spec needs fields \"variable\" and \"values\"");
  spec.variable = experiments::sweep_variable_from_string(
      spec_json.at("variable").get<std::string>());
  spec.values = spec_json.at("values").get<std::vector<double>>();
  spec.trials = spec_json.value("trials", 1);
  spec.validate();
  NetworkConfig cfg = resolve_config(args);
  fs::path dir(args.out_dir.empty() ? "out" : args.out_dir);
  write_manifest(dir, "sweep", args, cfg);

  auto t_start = std::chrono::steady_clock::now();
  sim::SimOptions opts;
  auto rows = experiments::sweep(spec, cfg, opts, cfg.seed);
  double wall = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t_start)
                    .count();

  io::CsvWriter csv({"variable", "value", "feasible", "seed", "x1_star_m",
                     "x2_star_m", "k_th", "u", "gamma", "pernode_within",
                     "delay_quad_s", "delay_bound_s", "mobility_count",
                     "served_share", "served_share_se", "per_node_rate",
                     "per_node_rate_se", "delay_s", "delay_se_s", "wait_s",
                     "wait_se_s", "multihop_per_node", "error"});
  std::size_t failed = 0;
  for (const auto& r : rows) {
    if (!r.feasible) ++failed;
    csv.add_row({experiments::to_string(spec.variable), r.value,
                 std::string(r.feasible ? "yes" : "no"), r.seed, r.x1_star,
                 r.x2_star, r.k_th, r.u, r.gamma, r.pernode_within,
                 r.delay_quad_s, r.delay_bound_s, r.mobility_count,
                 r.served_share.mean, r.served_share.stderr_,
                 r.per_node_rate.mean, r.per_node_rate.stderr_,
                 r.delay_s.mean, r.delay_s.stderr_, r.wait_s.mean,
                 r.wait_s.stderr_, r.multihop_per_node.mean, r.error});
  }
  csv.write(dir / "sweep.csv");
  json sidecar = sidecar_base(cfg);
  sidecar["spec"] = spec_json;
  sidecar["wall_time_s"] = wall;
  std::vector<std::uint64_t> seeds;
  for (const auto& r : rows) seeds.push_back(r.seed);
  sidecar["seeds"] = seeds;
  io::write_json(dir / "sweep_meta.json", sidecar);
  std::cout << "wrote " << (dir / "sweep.csv").string() << " (" << rows.size()
            << " rows)\n";
  if (failed == rows.size())
    throw ConfigError("sweep: every grid point failed validation");
  return 0;
}

int cmd_heatmap(const CommonArgs& args, const std::string& spec_path) {
  json spec = load_spec(spec_path);
  if (!spec.contains("r_m"))
    throw ConfigError("heatmap spec needs field \"r_m\"");
  double r = spec.at("r_m").get<double>();
  int resolution = spec.value("resolution", 21);
  NetworkConfig cfg = resolve_config(args);
  fs::path dir(args.out_dir.empty() ? "out" : args.out_dir);
  write_manifest(dir, "heatmap", args, cfg);

  auto t_start = std::chrono::steady_clock::now();
  auto hm = experiments::heatmap(cfg, r, resolution, cfg.seed);
  double wall = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t_start)
                    .count();

  io::CsvWriter csv({"x_m", "y_m", "z_m", "count"});
  for (std::size_t i = 0; i < hm.points.size(); ++i)
    csv.add_row({hm.points[i].x, hm.points[i].y, hm.points[i].z,
                 hm.counts[i]});
  csv.write(dir / "heatmap.csv");
  json sidecar = sidecar_base(cfg);
  sidecar["spec"] = spec;
  sidecar["resolution"] = {{"nx", hm.nx}, {"ny", hm.ny}, {"nz", hm.nz}};
  sidecar["wall_time_s"] = wall;
  sidecar["seeds"] = {cfg.seed};
  io::write_json(dir / "heatmap_meta.json", sidecar);
  std::cout << "wrote " << (dir / "heatmap.csv").string() << " (" << hm.nx
            << "x" << hm.ny << "x" << hm.nz << ")\n";
  return 0;
}

int cmd_delay_curve(const CommonArgs& args, const std::string& spec_path) {
  json spec = load_spec(spec_path);
  if (!spec.contains("n_values"))
    throw ConfigError("delay-curve spec needs field \"n_values\"");
  std::vector<double> n_grid = spec.at("n_values").get<std::vector<double>>();
  int trials = spec.value("trials", 1);
  if (trials < 1) throw ConfigError("delay-curve: trials must be >= 1");
  NetworkConfig cfg = resolve_config(args);
  fs::path dir(args.out_dir.empty() ? "out" : args.out_dir);
  write_manifest(dir, "delay-curve", args, cfg);

  auto t_start = std::chrono::steady_clock::now();
  sim::SimOptions opts;
  auto rows = experiments::delay_curve(cfg, n_grid, trials, opts, cfg.seed);
  double wall = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t_start)
                    .count();

  io::CsvWriter csv({"kind", "n", "feasible", "seed", "sim_delay_s",
                     "sim_delay_se_s", "sim_wait_s", "sim_wait_se_s",
                     "carry_s", "waiting_quad_s", "waiting_bound_s",
                     "total_quad_s", "total_bound_s"});
  for (const auto& r : rows)
    csv.add_row({std::string("grid"), r.n,
                 std::string(r.feasible ? "yes" : "no"), r.seed,
                 r.sim_delay_s.mean, r.sim_delay_s.stderr_, r.sim_wait_s.mean,
                 r.sim_wait_s.stderr_, r.carry_s, r.waiting_quad_s,
                 r.waiting_bound_s, r.total_quad_s, r.total_bound_s});
  if (!rows.empty())
    csv.add_row({std::string("asymptote"), 0.0, std::string("yes"),
                 std::uint64_t{0}, 0.0, 0.0, 0.0, 0.0, rows.back().carry_s,
                 0.0, 0.0, rows.back().asymptote_s, rows.back().asymptote_s});
  csv.write(dir / "delay_curve.csv");
  json sidecar = sidecar_base(cfg);
  sidecar["spec"] = spec;
  sidecar["wall_time_s"] = wall;
  std::vector<std::uint64_t> seeds;
  for (const auto& r : rows) seeds.push_back(r.seed);
  sidecar["seeds"] = seeds;
  io::write_json(dir / "delay_curve_meta.json", sidecar);
  std::cout << "wrote " << (dir / "delay_curve.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo simulator and analytic toolkit for UAV sensor "
               "networks with store-carry-and-forward delivery"};
  app.require_subcommand(1);

  CommonArgs a_analytic, a_sim, a_sweep, a_heat, a_delay;
  int trials = 1;
  std::string sweep_spec, heat_spec, delay_spec;

  CLI::App* c_analytic = app.add_subcommand(
      "analytic", "evaluate every closed-form quantity for a scenario");
  add_common_flags(c_analytic, a_analytic);

  CLI::App* c_sim = app.add_subcommand(
      "simulate", "run Monte Carlo trials and emit per-bin statistics");
  add_common_flags(c_sim, a_sim);
  c_sim->add_option("--trials", trials, "number of trials (>= 1)");

  CLI::App* c_sweep = app.add_subcommand(
      "sweep", "sweep one scenario variable over a grid");
  add_common_flags(c_sweep, a_sweep);
  c_sweep->add_option("--spec", sweep_spec, "sweep spec JSON file")
      ->required();

  CLI::App* c_heat = app.add_subcommand(
      "heatmap", "potential-encounter counts over a location grid");
  add_common_flags(c_heat, a_heat);
  c_heat->add_option("--spec", heat_spec, "heatmap spec JSON file")
      ->required();

  CLI::App* c_delay = app.add_subcommand(
      "delay-curve", "simulated and analytic delay over an n grid");
  add_common_flags(c_delay, a_delay);
  c_delay->add_option("--spec", delay_spec, "delay-curve spec JSON file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_analytic->parsed()) return cmd_analytic(a_analytic);
    if (c_sim->parsed()) return cmd_simulate(a_sim, trials);
    if (c_sweep->parsed()) return cmd_sweep(a_sweep, sweep_spec);
    if (c_heat->parsed()) return cmd_heatmap(a_heat, heat_spec);
    if (c_delay->parsed()) return cmd_delay_curve(a_delay, delay_spec);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const io::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
