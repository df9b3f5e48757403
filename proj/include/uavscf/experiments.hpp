#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "uavscf/analytic.hpp"
#include "uavscf/config.hpp"
#include "uavscf/numerics.hpp"
#include "uavscf/simcore.hpp"

namespace uavscf::experiments {

inline int worker_count() {
  if (const char* env = std::getenv("UAVSCF_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(0..count-1) on the worker pool. fn must only touch its own output
// slot; results are then independent of scheduling.
inline void parallel_for(std::size_t count,
                         const std::function<void(std::size_t)>& fn) {
  int workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

// Deterministic per-trial seeds derived from the base seed.
inline std::uint64_t trial_seed(std::uint64_t base, std::size_t trial) {
  return mix64(base ^ mix64(0x7261696C74ull + trial));
}

// ---------------------------------------------------------------------------
// Repeated trials with across-trial statistics.
// ---------------------------------------------------------------------------

// Maps trials to extracted summaries in trial order. The extractor runs in
// worker threads, so it must be pure.
template <typename T>
std::vector<T> map_trials(
    const NetworkConfig& cfg, const sim::SimOptions& opts,
    std::uint64_t base_seed, int trials,
    const std::function<T(const sim::SimReport&)>& extract) {
  std::vector<T> out(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t i) {
    sim::SimReport rep = sim::run_scf_trial(cfg, opts, trial_seed(base_seed, i));
    out[i] = extract(rep);
  });
  return out;
}

struct BinAggregate {
  double x_lo = 0.0, x_hi = 0.0;
  num::MeanStderr x_mean;
  num::MeanStderr cell_pop;
  num::MeanStderr shaded;
  num::MeanStderr ku_pred;
  num::MeanStderr return_crossers;
  num::MeanStderr maneuver_crossers;
  num::MeanStderr served_share;
  num::MeanStderr per_cell_rate;
  num::MeanStderr per_node_rate;
  num::MeanStderr wait_s;
  num::MeanStderr delay_s;
  num::MeanStderr expected_wait_s;
  num::MeanStderr expected_delay_s;
  std::int64_t delay_samples = 0;
  std::int64_t censored = 0;
};

struct TrialAggregate {
  NetworkConfig cfg;
  sim::SimOptions opts;
  std::uint64_t base_seed = 0;
  int trials = 0;
  std::vector<BinAggregate> bins;
  num::MeanStderr delay_s;       // density-weighted trial means
  num::MeanStderr wait_s;
  num::MeanStderr expected_wait_s;  // integrated-wait counterparts
  num::MeanStderr expected_delay_s;
  num::MeanStderr multihop_per_node;
  double censored_fraction = 0.0;
};

inline TrialAggregate run_trials(const NetworkConfig& cfg,
                                 const sim::SimOptions& opts,
                                 std::uint64_t base_seed, int trials) {
  struct Slice {
    std::vector<sim::BinStat> bins;
    double delay = 0.0, wait = 0.0, censored = 0.0;
    double ewait = 0.0, edelay = 0.0;
    double multihop = 0.0;
    bool has_multihop = false;
  };
  auto slices = map_trials<Slice>(
      cfg, opts, base_seed, trials, [](const sim::SimReport& rep) {
        Slice s;
        s.bins = rep.bins;
        s.delay = rep.delay_mean_s;
        s.wait = rep.wait_mean_s;
        s.ewait = rep.expected_wait_mean_s;
        s.edelay = rep.expected_delay_mean_s;
        s.censored = rep.censored_fraction;
        if (rep.multihop) {
          s.multihop = rep.multihop->per_node_rate;
          s.has_multihop = true;
        }
        return s;
      });

  TrialAggregate agg;
  agg.cfg = cfg;
  agg.opts = opts;
  agg.base_seed = base_seed;
  agg.trials = trials;
  std::size_t nbins = slices.empty() ? 0 : slices.front().bins.size();
  agg.bins.resize(nbins);
  std::vector<double> col(slices.size());
  auto column = [&](auto getter) {
    for (std::size_t t = 0; t < slices.size(); ++t)
      col[t] = getter(slices[t]);
    return num::mean_stderr(col);
  };
  for (std::size_t b = 0; b < nbins; ++b) {
    BinAggregate& ba = agg.bins[b];
    ba.x_lo = slices.front().bins[b].x_lo;
    ba.x_hi = slices.front().bins[b].x_hi;
    auto bin_col = [&](auto member) {
      for (std::size_t t = 0; t < slices.size(); ++t)
        col[t] = slices[t].bins[b].*member;
      return num::mean_stderr(col);
    };
    ba.x_mean = bin_col(&sim::BinStat::x_mean);
    ba.cell_pop = bin_col(&sim::BinStat::cell_pop_mean);
    ba.shaded = bin_col(&sim::BinStat::shaded_mean);
    ba.ku_pred = bin_col(&sim::BinStat::ku_pred_mean);
    ba.return_crossers = bin_col(&sim::BinStat::return_crossers_mean);
    ba.maneuver_crossers = bin_col(&sim::BinStat::maneuver_crossers_mean);
    ba.served_share = bin_col(&sim::BinStat::served_share_mean);
    ba.per_cell_rate = bin_col(&sim::BinStat::per_cell_rate_mean);
    ba.per_node_rate = bin_col(&sim::BinStat::per_node_rate_mean);
    ba.wait_s = bin_col(&sim::BinStat::wait_mean_s);
    ba.delay_s = bin_col(&sim::BinStat::delay_mean_s);
    ba.expected_wait_s = bin_col(&sim::BinStat::expected_wait_mean_s);
    ba.expected_delay_s = bin_col(&sim::BinStat::expected_delay_mean_s);
    for (const auto& s : slices) {
      ba.delay_samples += s.bins[b].delay_samples;
      ba.censored += s.bins[b].censored;
    }
  }
  agg.delay_s = column([](const Slice& s) { return s.delay; });
  agg.wait_s = column([](const Slice& s) { return s.wait; });
  agg.expected_wait_s = column([](const Slice& s) { return s.ewait; });
  agg.expected_delay_s = column([](const Slice& s) { return s.edelay; });
  double censored = 0.0;
  for (const auto& s : slices) censored += s.censored;
  agg.censored_fraction = slices.empty() ? 0.0 : censored / slices.size();
  bool has_mh = !slices.empty() && slices.front().has_multihop;
  if (has_mh)
    agg.multihop_per_node = column([](const Slice& s) { return s.multihop; });
  return agg;
}

// ---------------------------------------------------------------------------
// Scaling-exponent fits.
// ---------------------------------------------------------------------------

struct ScalingFit {
  std::string metric;
  double exponent = 0.0;
  double intercept = 0.0;  // of log(metric) against log(n)
  double r2 = 0.0;
  int points_used = 0;
  std::vector<std::size_t> excluded;  // nonpositive metric values
};

// Least-squares slope of log(metric) against log(grid). Callers divide out
// known logarithmic factors beforehand when the target is a pure power law.
inline ScalingFit fit_scaling(const std::string& metric_name,
                              const std::vector<double>& grid,
                              const std::vector<double>& metric) {
  if (grid.size() != metric.size())
    throw std::invalid_argument("fit_scaling: grid/metric size mismatch");
  ScalingFit fit;
  fit.metric = metric_name;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(metric[i] > 0.0) || !(grid[i] > 0.0)) {
      fit.excluded.push_back(i);
      continue;
    }
    lx.push_back(std::log(grid[i]));
    ly.push_back(std::log(metric[i]));
  }
  if (lx.size() < 4)
    throw std::invalid_argument(
        "fit_scaling: need at least 4 usable grid points, have " +
        std::to_string(lx.size()));
  auto ls = num::least_squares(lx, ly);
  fit.exponent = ls.slope;
  fit.intercept = ls.intercept;
  fit.r2 = ls.r2;
  fit.points_used = static_cast<int>(lx.size());
  return fit;
}

// ---------------------------------------------------------------------------
// Parameter sweeps.
// ---------------------------------------------------------------------------

enum class SweepVariable { n, t0, v, s, j, alpha };

inline std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::n: return "n";
    case SweepVariable::t0: return "t0_s";
    case SweepVariable::v: return "v_mps";
    case SweepVariable::s: return "s_m";
    case SweepVariable::j: return "J_m";
    default: return "alpha";
  }
}

inline SweepVariable sweep_variable_from_string(const std::string& s) {
  if (s == "n") return SweepVariable::n;
  if (s == "t0" || s == "t0_s") return SweepVariable::t0;
  if (s == "v" || s == "v_mps") return SweepVariable::v;
  if (s == "s" || s == "s_m") return SweepVariable::s;
  if (s == "J" || s == "J_m" || s == "j") return SweepVariable::j;
  if (s == "alpha") return SweepVariable::alpha;
  throw ConfigError("unknown sweep variable \"" + s + "\"");
}

struct SweepSpec {
  SweepVariable variable = SweepVariable::n;
  std::vector<double> values;  // strictly increasing
  int trials = 1;

  void validate() const {
    if (values.empty()) throw ConfigError("sweep: empty grid");
    for (std::size_t i = 1; i < values.size(); ++i)
      if (!(values[i] > values[i - 1]))
        throw ConfigError("sweep: grid must be strictly increasing");
    if (trials < 1) throw ConfigError("sweep: trials must be >= 1");
  }
};

inline NetworkConfig apply_sweep_value(NetworkConfig cfg, SweepVariable var,
                                       double value) {
  switch (var) {
    case SweepVariable::n:
      cfg.n = static_cast<std::uint64_t>(value);
      break;
    case SweepVariable::t0: cfg.t0_s = value; break;
    case SweepVariable::v: cfg.v_mps = value; break;
    case SweepVariable::s: cfg.s_m = value; break;
    case SweepVariable::j: cfg.j_m = value; break;
    case SweepVariable::alpha: cfg.alpha = value; break;
  }
  return cfg;
}

struct SweepRow {
  double value = 0.0;
  bool feasible = false;
  std::string error;  // validation message when infeasible
  std::uint64_t seed = 0;
  // analytic
  double x1_star = 0.0, x2_star = 0.0, k_th = 0.0, u = 0.0, gamma = 0.0;
  double pernode_within = 0.0;
  double delay_quad_s = 0.0, delay_bound_s = 0.0;
  double mobility_count = 0.0;
  // simulated
  num::MeanStderr served_share;   // mean over all bins
  num::MeanStderr per_node_rate;
  num::MeanStderr delay_s;
  num::MeanStderr wait_s;
  num::MeanStderr multihop_per_node;
};

inline std::vector<SweepRow> sweep(const SweepSpec& spec,
                                   const NetworkConfig& cfg_base,
                                   const sim::SimOptions& opts,
                                   std::uint64_t base_seed) {
  spec.validate();
  std::vector<SweepRow> rows;
  for (std::size_t gi = 0; gi < spec.values.size(); ++gi) {
    SweepRow row;
    row.value = spec.values[gi];
    row.seed = mix64(base_seed ^ mix64(gi + 0x5357454550ull));
    NetworkConfig cfg = apply_sweep_value(cfg_base, spec.variable, row.value);
    try {
      cfg.validate();
      analytic::require_n_for_thresholds(cfg);
      row.feasible = true;
    } catch (const std::exception& e) {
      row.feasible = false;
      row.error = e.what();
      rows.push_back(row);
      continue;
    }
    auto ranges = analytic::critical_ranges(cfg);
    row.x1_star = ranges.x1_star;
    row.x2_star = ranges.x2_star;
    row.k_th = ranges.k_th;
    row.u = ranges.u;
    row.gamma = ranges.gamma;
    row.pernode_within =
        analytic::per_hop_rate(cfg) /
        (analytic::cell_population_constant(cfg) *
         std::log(static_cast<double>(cfg.n)));
    auto delay = analytic::delay_bound(cfg);
    row.delay_quad_s = delay.total_quad_s;
    row.delay_bound_s = delay.total_bound_s;
    row.mobility_count = analytic::mobility_encounters(cfg, cfg.j_m).count;

    TrialAggregate agg = run_trials(cfg, opts, row.seed, spec.trials);
    std::vector<double> shares, pernode;
    for (const auto& b : agg.bins) {
      shares.push_back(b.served_share.mean);
      pernode.push_back(b.per_node_rate.mean);
    }
    row.served_share = num::mean_stderr(shares);
    row.per_node_rate = num::mean_stderr(pernode);
    row.delay_s = agg.delay_s;
    row.wait_s = agg.wait_s;
    row.multihop_per_node = agg.multihop_per_node;
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Heatmap of potential returner encounters.
// ---------------------------------------------------------------------------

struct Heatmap {
  int nx = 0, ny = 0, nz = 0;  // nz == 1 in 2D
  std::vector<geom::Vec3> points;
  std::vector<std::int64_t> counts;  // trajectories crossing each ball
};

// Potential encounters only: every returning trajectory crossing the ball
// of radius r at a grid location counts, with no receiver exclusivity.
inline Heatmap heatmap(const NetworkConfig& cfg, double r, int resolution,
                       std::uint64_t seed) {
  if (resolution < 2) throw ConfigError("heatmap: resolution must be >= 2");
  if (r < 0.0) throw ConfigError("heatmap: radius must be >= 0");
  cfg.validate();
  auto uavs = geom::sample_network(cfg, seed);
  std::vector<geom::Trajectory> paths(uavs.size());
  for (std::size_t i = 0; i < uavs.size(); ++i)
    paths[i] = geom::returning_trajectory(uavs[i].pos, cfg, 0.0);

  Heatmap hm;
  hm.nx = hm.ny = resolution;
  hm.nz = cfg.dim == Dim::three_d ? (resolution + 1) / 2 : 1;
  double s = cfg.s_m;
  for (int k = 0; k < hm.nz; ++k)
    for (int j = 0; j < hm.ny; ++j)
      for (int i = 0; i < hm.nx; ++i) {
        geom::Vec3 p;
        p.x = -s + 2.0 * s * (i + 0.5) / hm.nx;
        p.y = -s + 2.0 * s * (j + 0.5) / hm.ny;
        p.z = cfg.dim == Dim::three_d ? s * (k + 0.5) / hm.nz : cfg.h_m;
        hm.points.push_back(p);
      }
  hm.counts.assign(hm.points.size(), 0);
  if (r == 0.0) return hm;

  parallel_for(hm.points.size(), [&](std::size_t pi) {
    const geom::Vec3& p = hm.points[pi];
    std::int64_t count = 0;
    for (const auto& path : paths) {
      for (const auto& seg : path.segments) {
        if (seg.phase == geom::Phase::return_descent) continue;
        if (geom::segment_ball_encounter(seg, p, r)) {
          ++count;
          break;  // count trajectories, not crossings
        }
      }
    }
    hm.counts[pi] = count;
  });
  return hm;
}

// ---------------------------------------------------------------------------
// Delay convergence curve.
// ---------------------------------------------------------------------------

struct DelayCurveRow {
  double n = 0.0;
  bool feasible = true;
  std::uint64_t seed = 0;
  num::MeanStderr sim_delay_s;
  num::MeanStderr sim_wait_s;
  num::MeanStderr sim_expected_wait_s;
  double carry_s = 0.0;
  double waiting_quad_s = 0.0;
  double waiting_bound_s = 0.0;
  double total_quad_s = 0.0;
  double total_bound_s = 0.0;
  double asymptote_s = 0.0;  // carry term only
};

inline std::vector<DelayCurveRow> delay_curve(const NetworkConfig& cfg_base,
                                              const std::vector<double>& n_grid,
                                              int trials,
                                              const sim::SimOptions& opts,
                                              std::uint64_t base_seed) {
  std::vector<DelayCurveRow> rows;
  for (std::size_t gi = 0; gi < n_grid.size(); ++gi) {
    DelayCurveRow row;
    row.n = n_grid[gi];
    row.seed = mix64(base_seed ^ mix64(gi + 0x44454C4159ull));
    NetworkConfig cfg = cfg_base;
    cfg.n = static_cast<std::uint64_t>(row.n);
    try {
      cfg.validate();
    } catch (const std::exception&) {
      row.feasible = false;
      rows.push_back(row);
      continue;
    }
    auto est = analytic::delay_bound(cfg);
    row.carry_s = est.carry_s;
    row.waiting_quad_s = est.waiting_quad_s;
    row.waiting_bound_s = est.waiting_bound_s;
    row.total_quad_s = est.total_quad_s;
    row.total_bound_s = est.total_bound_s;
    row.asymptote_s = est.carry_s;
    TrialAggregate agg = run_trials(cfg, opts, row.seed, trials);
    row.sim_delay_s = agg.delay_s;
    row.sim_wait_s = agg.wait_s;
    row.sim_expected_wait_s = agg.expected_wait_s;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace uavscf::experiments
