#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "uavscf/analytic.hpp"
#include "uavscf/config.hpp"
#include "uavscf/geometry.hpp"
#include "uavscf/rng.hpp"

namespace uavscf::sim {

enum class RegionMode { inscribed, full };

// Knobs of a single trial. The schedule repeats with period t0; the first
// warmup periods are discarded so the sky is already populated when
// accounting starts.
struct SimOptions {
  int periods = 3;
  int warmup_periods = 1;
  RegionMode region = RegionMode::inscribed;

  int x_bins = 24;
  int observers_per_bin = 4;
  double x_lo_frac = 0.02;  // observer radii as fractions of L (K)
  double x_hi_frac = 0.98;
  // Equal-width bins by default; equal distance-density mass when set, which
  // concentrates observers near the rim where waits are long and noisy.
  bool bin_by_mass = false;
  // Observer direction band: in 3D the z/|q| range, in 2D the |cos| of the
  // azimuth against the maneuver axis. Full span by default.
  double dir_lo = 0.0;
  double dir_hi = 1.0;

  // Shift the return earlier than energy exhaustion by this much.
  double return_slack_s = 0.0;

  int delay_samples_per_observer = 100;
  bool collect_gaps = true;
  bool run_multihop = true;
};

// ---------------------------------------------------------------------------
// Schedule.
// ---------------------------------------------------------------------------

struct Schedule {
  struct Entry {
    double dispatch_s = 0.0;
    double travel_s = 0.0;        // return path duration incl. maneuver
    double return_start_s = 0.0;
    double arrival_s = 0.0;
  };
  std::vector<Entry> entries;
  double period_s = 0.0;
  int periods = 0;
  int warmup_periods = 0;

  double window_lo() const { return warmup_periods * period_s; }
  double window_hi() const { return periods * period_s; }
};

// Returns start so that the UAV reaches the station exactly at energy
// exhaustion (minus the optional slack). Return marks are then uniform on a
// window of one period.
inline Schedule build_schedule(const NetworkConfig& cfg,
                               const std::vector<geom::Uav>& uavs,
                               const std::vector<geom::Trajectory>& paths,
                               const SimOptions& opts) {
  if (uavs.size() != paths.size())
    throw std::invalid_argument("build_schedule: uavs/paths size mismatch");
  Schedule sched;
  sched.period_s = cfg.t0_s;
  sched.periods = opts.periods;
  sched.warmup_periods = opts.warmup_periods;
  sched.entries.resize(uavs.size());
  for (std::size_t i = 0; i < uavs.size(); ++i) {
    Schedule::Entry& e = sched.entries[i];
    e.dispatch_s = uavs[i].dispatch_s;
    e.travel_s = paths[i].path_length() / cfg.v_mps;
    double lead = e.travel_s + opts.return_slack_s;
    if (lead > cfg.t0_s + 1e-9)
      throw ConfigError(
          "infeasible schedule: return path needs " + std::to_string(lead) +
          " s but the flight duration is " + std::to_string(cfg.t0_s) + " s");
    e.return_start_s = e.dispatch_s + cfg.t0_s - lead;
    e.arrival_s = e.return_start_s + e.travel_s;
  }
  return sched;
}

// ---------------------------------------------------------------------------
// Per-observer bookkeeping.
// ---------------------------------------------------------------------------

struct Observer {
  geom::Vec3 pos;   // absolute position
  double x = 0.0;   // distance to the return focus (station / plane center)
  int bin = 0;
};

// Bin edges over [x_lo, x_hi] * R, either equal width or equal mass of the
// distance density (x^2 in 3D, x in 2D).
inline std::vector<double> bin_edges(const NetworkConfig& cfg,
                                     const SimOptions& opts) {
  double radius = cfg.inscribed_radius();
  double lo = radius * opts.x_lo_frac;
  double hi = radius * opts.x_hi_frac;
  std::vector<double> edges(static_cast<std::size_t>(opts.x_bins) + 1);
  for (int b = 0; b <= opts.x_bins; ++b) {
    double f = static_cast<double>(b) / opts.x_bins;
    if (!opts.bin_by_mass) {
      edges[static_cast<std::size_t>(b)] = lo + (hi - lo) * f;
    } else if (cfg.dim == Dim::three_d) {
      double m = lo * lo * lo + (hi * hi * hi - lo * lo * lo) * f;
      edges[static_cast<std::size_t>(b)] = std::cbrt(m);
    } else {
      double m = lo * lo + (hi * hi - lo * lo) * f;
      edges[static_cast<std::size_t>(b)] = std::sqrt(m);
    }
  }
  return edges;
}

struct ObserverAccount {
  Observer obs;
  int cell_pop = 0;

  int shaded_count = 0;       // returnees inside the analytic shaded region
  int return_crossers = 0;    // distinct returnees crossing per period
  int maneuver_crossers = 0;  // distinct maneuver sweeps crossing per period

  double served_s = 0.0;      // one-receiver union of pass time in window
  int handoffs = 0;

  std::vector<double> entry_marks;  // return-phase entries, one period
  std::vector<double> gaps;         // sorted-mark spacings
  std::vector<double> waits_s;
  std::vector<double> delays_s;
  int censored = 0;

  // Exact mean of the same wait over a uniform instant, integrated from the
  // credited schedule instead of sampled; NaN when nothing is ever credited.
  double expected_wait_s = 0.0;
  double expected_delay_s = 0.0;
  double censored_measure_s = 0.0;  // window tail with no later service
};

struct BinStat {
  double x_lo = 0.0, x_hi = 0.0;
  int observers = 0;
  double x_mean = 0.0;
  double cell_pop_mean = 0.0;
  double shaded_mean = 0.0;
  double ku_pred_mean = 0.0;
  double return_crossers_mean = 0.0;
  double maneuver_crossers_mean = 0.0;
  double served_share_mean = 0.0;
  double per_cell_rate_mean = 0.0;
  double per_node_rate_mean = 0.0;
  double wait_mean_s = 0.0;
  double delay_mean_s = 0.0;
  double expected_wait_mean_s = 0.0;   // integrated-wait counterpart
  double expected_delay_mean_s = 0.0;
  std::int64_t delay_samples = 0;
  std::int64_t censored = 0;
};

struct MultihopResult {
  Channel channel = Channel::multihop_3d;
  double per_node_rate = 0.0;
  std::int64_t bottleneck_flows = 0;  // flows through the busiest cell
  std::int64_t max_relay_load = 0;    // busiest cell other than the sink
};

// A pass interval a returner spends inside an observer ball, in absolute
// trial time.
struct PassInterval {
  double t_in = 0.0;
  double t_out = 0.0;
  std::uint32_t returner = 0;
};

struct CreditResult {
  std::vector<double> lo, hi;  // disjoint credited intervals, sorted
  double served_s = 0.0;
  int handoffs = 0;
};

// One-receiver rule over a window: the earliest entrant is served (ties by
// UAV id), a waiting returner takes over the moment the served one leaves,
// and at any instant at most one returner is credited. The credited set is
// the union of the pass intervals clipped to the window.
inline CreditResult credit_one_receiver(std::vector<PassInterval> events,
                                        double window_lo, double window_hi) {
  std::sort(events.begin(), events.end(),
            [](const PassInterval& a, const PassInterval& b) {
              if (a.t_in != b.t_in) return a.t_in < b.t_in;
              return a.returner < b.returner;
            });
  CreditResult out;
  double last_end = window_lo;
  for (const auto& ev : events) {
    double st = std::max(ev.t_in, last_end);
    double en = std::min(ev.t_out, window_hi);
    if (en <= st) continue;
    if (!out.hi.empty() && st <= out.hi.back() + 1e-12) {
      out.hi.back() = en;
    } else {
      out.lo.push_back(st);
      out.hi.push_back(en);
    }
    ++out.handoffs;
    out.served_s += en - st;
    last_end = en;
  }
  return out;
}

struct SimReport {
  NetworkConfig cfg;
  SimOptions opts;
  std::uint64_t seed = 0;
  Channel channel = Channel::scf_3d;  // mode the rates belong to
  std::vector<BinStat> bins;
  std::vector<ObserverAccount> observers;  // full per-observer detail
  double delay_mean_s = 0.0;   // position-density weighted over bins
  double wait_mean_s = 0.0;
  double expected_delay_mean_s = 0.0;
  double expected_wait_mean_s = 0.0;
  double censored_fraction = 0.0;
  std::optional<MultihopResult> multihop;
};

// ---------------------------------------------------------------------------
// Multi-hop baseline.
// ---------------------------------------------------------------------------

// Straight-line cell routing: every flow walks the cell chain from its own
// cell to the sink cell, moving one cell per step in up to all three axes
// (26-neighborhood; 8 in 2D). Loads count every flow in every cell it
// visits, destination included.
inline MultihopResult run_multihop_baseline(const NetworkConfig& cfg,
                                            const std::vector<geom::Uav>& uavs) {
  geom::CellGrid grid = geom::cell_grid(cfg);
  if (grid.cell_count() > (1ll << 26))
    throw ConfigError("multihop baseline: grid too fine (" +
                      std::to_string(grid.cell_count()) + " cells)");
  std::vector<std::int64_t> load(static_cast<std::size_t>(grid.cell_count()),
                                 0);
  geom::Vec3 sink_pos = cfg.dim == Dim::three_d ? geom::station_position()
                                                : geom::plane_center(cfg);
  auto sink = grid.coords_of(sink_pos);
  for (const auto& u : uavs) {
    auto c = grid.coords_of(u.pos);
    int di = sink[0] - c[0], dj = sink[1] - c[1], dk = sink[2] - c[2];
    int steps = std::max({std::abs(di), std::abs(dj), std::abs(dk)});
    std::int64_t prev = -1;
    for (int q = 0; q <= steps; ++q) {
      double f = steps == 0 ? 0.0 : static_cast<double>(q) / steps;
      std::array<int, 3> cell = {
          c[0] + static_cast<int>(std::lround(di * f)),
          c[1] + static_cast<int>(std::lround(dj * f)),
          c[2] + static_cast<int>(std::lround(dk * f))};
      std::int64_t idx = grid.flatten(cell);
      if (idx != prev) {
        ++load[static_cast<std::size_t>(idx)];
        prev = idx;
      }
    }
  }
  MultihopResult out;
  out.channel = cfg.dim == Dim::three_d ? Channel::multihop_3d
                                        : Channel::multihop_2d;
  std::int64_t sink_idx = grid.flatten(sink);
  for (std::size_t i = 0; i < load.size(); ++i) {
    out.bottleneck_flows = std::max(out.bottleneck_flows, load[i]);
    if (static_cast<std::int64_t>(i) != sink_idx)
      out.max_relay_load = std::max(out.max_relay_load, load[i]);
  }
  double rate = analytic::per_hop_rate(cfg);
  out.per_node_rate =
      out.bottleneck_flows > 0 ? rate / static_cast<double>(out.bottleneck_flows)
                               : rate;
  return out;
}

inline MultihopResult run_multihop_baseline(const NetworkConfig& cfg,
                                            std::uint64_t seed) {
  return run_multihop_baseline(cfg, geom::sample_network(cfg, seed));
}

// ---------------------------------------------------------------------------
// SCF trial.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<Observer> place_observers(const NetworkConfig& cfg,
                                             const SimOptions& opts,
                                             std::uint64_t seed) {
  std::vector<Observer> out;
  std::vector<double> edges = bin_edges(cfg, opts);
  Rng base = Rng(seed).fork(stream::observers);
  for (int b = 0; b < opts.x_bins; ++b) {
    double lo = edges[static_cast<std::size_t>(b)];
    double hi = edges[static_cast<std::size_t>(b) + 1];
    for (int m = 0; m < opts.observers_per_bin; ++m) {
      Rng r = base.fork(static_cast<std::uint64_t>(b) << 20 | m);
      Observer obs;
      obs.bin = b;
      obs.x = r.uniform(lo, hi);
      if (cfg.dim == Dim::three_d) {
        double zfrac = r.uniform(opts.dir_lo, opts.dir_hi);
        double az = r.uniform(0.0, 2.0 * std::numbers::pi);
        double rho = obs.x * std::sqrt(std::max(0.0, 1.0 - zfrac * zfrac));
        obs.pos = {rho * std::cos(az), rho * std::sin(az), obs.x * zfrac};
      } else {
        // azimuth measured against the maneuver (x) axis
        double az;
        do {
          az = r.uniform(0.0, 2.0 * std::numbers::pi);
        } while (std::abs(std::cos(az)) < opts.dir_lo ||
                 std::abs(std::cos(az)) > opts.dir_hi);
        obs.pos = {obs.x * std::cos(az), obs.x * std::sin(az), cfg.h_m};
      }
      out.push_back(obs);
    }
  }
  return out;
}

}  // namespace detail

// One full Monte Carlo trial: placement, schedule, encounter detection, the
// one-receiver crediting, interval statistics and delay sampling.
inline SimReport run_scf_trial(const NetworkConfig& cfg,
                               const SimOptions& opts, std::uint64_t seed) {
  cfg.validate();
  SimReport report;
  report.cfg = cfg;
  report.opts = opts;
  report.seed = seed;
  report.channel =
      cfg.dim == Dim::three_d ? Channel::scf_3d : Channel::scf_2d;

  const double radius = cfg.inscribed_radius();
  const double r_n = cfg.neighborhood_radius();
  const double rate = analytic::per_hop_rate(cfg);
  const geom::Vec3 focus = cfg.dim == Dim::three_d ? geom::station_position()
                                                   : geom::plane_center(cfg);

  std::vector<geom::Uav> uavs = geom::sample_network(cfg, seed);

  // Return paths, timestamped from zero; shifted per schedule below.
  std::vector<geom::Trajectory> paths(uavs.size());
  for (std::size_t i = 0; i < uavs.size(); ++i)
    paths[i] = geom::returning_trajectory(uavs[i].pos, cfg, 0.0);
  Schedule sched = build_schedule(cfg, uavs, paths, opts);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    double shift = sched.entries[i].return_start_s;
    for (auto& seg : paths[i].segments) {
      seg.t0 += shift;
      seg.t1 += shift;
    }
  }

  // Participation in the return-phase SCF accounting. Inscribed mode keeps
  // only returnees inside the hemisphere (disk), which is the population the
  // closed-form counts integrate over; maneuver sweeps always participate.
  std::vector<char> participates(uavs.size(), 1);
  if (opts.region == RegionMode::inscribed) {
    for (std::size_t i = 0; i < uavs.size(); ++i) {
      double d = cfg.dim == Dim::three_d ? uavs[i].pos.norm()
                                         : (uavs[i].pos - focus).norm();
      participates[i] = d <= radius ? 1 : 0;
    }
  }

  // Cell populations, sparse map over occupied cells.
  geom::CellGrid grid = geom::cell_grid(cfg);
  std::unordered_map<std::int64_t, int> cell_pop;
  cell_pop.reserve(uavs.size());
  for (const auto& u : uavs) ++cell_pop[grid.index_of(u.pos)];

  std::vector<Observer> observers = detail::place_observers(cfg, opts, seed);
  report.observers.resize(observers.size());

  const double window_lo = sched.window_lo();
  const double window_hi = sched.window_hi();
  const double window_len = window_hi - window_lo;
  const double sample_hi = (sched.periods - 1) * sched.period_s;
  const double t0 = cfg.t0_s;

  std::vector<PassInterval> events;
  std::vector<double> cred_lo, cred_hi;

  for (std::size_t oi = 0; oi < observers.size(); ++oi) {
    ObserverAccount& acct = report.observers[oi];
    acct.obs = observers[oi];
    auto it = cell_pop.find(grid.index_of(acct.obs.pos));
    acct.cell_pop = it == cell_pop.end() ? 0 : it->second;

    events.clear();
    acct.entry_marks.clear();

    for (std::uint32_t ri = 0; ri < paths.size(); ++ri) {
      bool return_hit = false;
      bool maneuver_hit = false;
      for (const auto& seg : paths[ri].segments) {
        if (seg.phase == geom::Phase::return_descent) continue;
        bool is_maneuver = seg.phase == geom::Phase::maneuver;
        if (!is_maneuver && !participates[ri]) continue;
        auto hit = geom::segment_ball_encounter(seg, acct.obs.pos, r_n);
        if (!hit) continue;
        if (is_maneuver)
          maneuver_hit = true;
        else {
          return_hit = true;
          acct.entry_marks.push_back(std::fmod(hit->t_in, t0));
        }
        events.push_back({hit->t_in, hit->t_out, ri});
      }
      if (return_hit) ++acct.return_crossers;
      if (maneuver_hit) ++acct.maneuver_crossers;
      if (participates[ri] &&
          geom::in_shaded_region(uavs[ri].pos - focus, acct.obs.pos - focus,
                                 acct.obs.x, r_n, radius))
        ++acct.shaded_count;
    }

    // Replicate the one-period event set across the horizon, then apply
    // the one-receiver rule.
    std::vector<PassInterval> abs_events;
    abs_events.reserve(events.size() * static_cast<std::size_t>(
                                            sched.periods + 2));
    for (int m = sched.warmup_periods - 2; m <= sched.periods; ++m) {
      double shift = m * sched.period_s;
      for (const auto& ev : events) {
        double lo = ev.t_in + shift;
        double hi = ev.t_out + shift;
        if (hi <= window_lo || lo >= window_hi) continue;
        abs_events.push_back({lo, hi, ev.returner});
      }
    }
    CreditResult credit =
        credit_one_receiver(std::move(abs_events), window_lo, window_hi);
    acct.served_s = credit.served_s;
    acct.handoffs = credit.handoffs;
    cred_lo = std::move(credit.lo);
    cred_hi = std::move(credit.hi);

    // Spacings between the per-period return marks.
    std::sort(acct.entry_marks.begin(), acct.entry_marks.end());
    if (opts.collect_gaps && acct.entry_marks.size() >= 2) {
      acct.gaps.reserve(acct.entry_marks.size() - 1);
      for (std::size_t i = 1; i < acct.entry_marks.size(); ++i)
        acct.gaps.push_back(acct.entry_marks[i] - acct.entry_marks[i - 1]);
    }

    double carry = cfg.dim == Dim::three_d
                       ? acct.obs.x / cfg.v_mps
                       : (acct.obs.x + cfg.h_m) / cfg.v_mps;

    // Exact mean wait over a uniform instant: zero inside credited service,
    // otherwise the distance to the next credited start, integrated run by
    // run. A window tail with no later service is censored out, matching
    // how censored samples are dropped from the sampled means.
    {
      double total = 0.0;
      double prev = window_lo;
      for (std::size_t k = 0; k < cred_lo.size() && prev < sample_hi; ++k) {
        double b = std::min(cred_lo[k], sample_hi);
        if (b > prev) {
          double full = cred_lo[k] - prev;
          double rest = cred_lo[k] - b;
          total += 0.5 * (full * full - rest * rest);
        }
        prev = std::max(prev, cred_hi[k]);
      }
      acct.censored_measure_s = std::max(0.0, sample_hi - prev);
      double denom = (sample_hi - window_lo) - acct.censored_measure_s;
      if (denom > 0.0) {
        acct.expected_wait_s = total / denom;
        acct.expected_delay_s = acct.expected_wait_s + carry;
      } else {
        acct.expected_wait_s = analytic::nan_d;
        acct.expected_delay_s = analytic::nan_d;
      }
    }

    // Poisson data instants; delay = wait for the next credited service
    // plus the carry to the station.
    double span = sample_hi - window_lo;
    if (opts.delay_samples_per_observer > 0 && span > 0.0) {
      Rng arr = trial_stream(seed, 0, stream::data_arrivals)
                    .fork(static_cast<std::uint64_t>(oi));
      double arr_rate = opts.delay_samples_per_observer / span;
      double t = window_lo + arr.exponential(arr_rate);
      while (t < sample_hi) {
        auto up = std::upper_bound(cred_hi.begin(), cred_hi.end(), t);
        std::size_t idx = static_cast<std::size_t>(up - cred_hi.begin());
        if (idx >= cred_lo.size()) {
          ++acct.censored;
        } else {
          double wait = std::max(0.0, cred_lo[idx] - t);
          acct.waits_s.push_back(wait);
          acct.delays_s.push_back(wait + carry);
        }
        t += arr.exponential(arr_rate);
      }
    }
  }

  // Bin aggregation.
  std::vector<double> edges = bin_edges(cfg, opts);
  report.bins.assign(static_cast<std::size_t>(opts.x_bins), BinStat{});
  for (int b = 0; b < opts.x_bins; ++b) {
    BinStat& bs = report.bins[static_cast<std::size_t>(b)];
    bs.x_lo = edges[static_cast<std::size_t>(b)];
    bs.x_hi = edges[static_cast<std::size_t>(b) + 1];
  }
  std::vector<int> exp_valid(report.bins.size(), 0);
  for (const auto& acct : report.observers) {
    BinStat& bs = report.bins[static_cast<std::size_t>(acct.obs.bin)];
    ++bs.observers;
    bs.x_mean += acct.obs.x;
    bs.cell_pop_mean += acct.cell_pop;
    bs.shaded_mean += acct.shaded_count;
    bs.ku_pred_mean += analytic::ku(cfg, acct.obs.x);
    bs.return_crossers_mean += acct.return_crossers;
    bs.maneuver_crossers_mean += acct.maneuver_crossers;
    double share = window_len > 0.0 ? acct.served_s / window_len : 0.0;
    double per_cell = std::min(rate, share * rate);
    bs.served_share_mean += share;
    bs.per_cell_rate_mean += per_cell;
    bs.per_node_rate_mean +=
        per_cell / std::max(1, acct.cell_pop);
    for (double w : acct.waits_s) bs.wait_mean_s += w;
    for (double d : acct.delays_s) bs.delay_mean_s += d;
    bs.delay_samples += static_cast<std::int64_t>(acct.delays_s.size());
    bs.censored += acct.censored;
    if (std::isfinite(acct.expected_wait_s)) {
      bs.expected_wait_mean_s += acct.expected_wait_s;
      bs.expected_delay_mean_s += acct.expected_delay_s;
      ++exp_valid[static_cast<std::size_t>(acct.obs.bin)];
    }
  }
  double wsum = 0.0, wait_acc = 0.0, delay_acc = 0.0;
  double ewsum = 0.0, ewait_acc = 0.0, edelay_acc = 0.0;
  std::int64_t total_samples = 0, total_censored = 0;
  for (std::size_t bi = 0; bi < report.bins.size(); ++bi) {
    BinStat& bs = report.bins[bi];
    if (bs.observers > 0) {
      bs.x_mean /= bs.observers;
      bs.cell_pop_mean /= bs.observers;
      bs.shaded_mean /= bs.observers;
      bs.ku_pred_mean /= bs.observers;
      bs.return_crossers_mean /= bs.observers;
      bs.maneuver_crossers_mean /= bs.observers;
      bs.served_share_mean /= bs.observers;
      bs.per_cell_rate_mean /= bs.observers;
      bs.per_node_rate_mean /= bs.observers;
    }
    if (bs.delay_samples > 0) {
      bs.wait_mean_s /= static_cast<double>(bs.delay_samples);
      bs.delay_mean_s /= static_cast<double>(bs.delay_samples);
    }
    if (exp_valid[bi] > 0) {
      bs.expected_wait_mean_s /= exp_valid[bi];
      bs.expected_delay_mean_s /= exp_valid[bi];
    }
    total_samples += bs.delay_samples;
    total_censored += bs.censored;
    // weight by the distance density mass of the bin
    double w;
    if (cfg.dim == Dim::three_d)
      w = (std::pow(bs.x_hi, 3) - std::pow(bs.x_lo, 3)) / std::pow(radius, 3);
    else
      w = (bs.x_hi * bs.x_hi - bs.x_lo * bs.x_lo) / (radius * radius);
    if (bs.delay_samples > 0) {
      wsum += w;
      wait_acc += w * bs.wait_mean_s;
      delay_acc += w * bs.delay_mean_s;
    }
    if (exp_valid[bi] > 0) {
      ewsum += w;
      ewait_acc += w * bs.expected_wait_mean_s;
      edelay_acc += w * bs.expected_delay_mean_s;
    }
  }
  if (wsum > 0.0) {
    report.wait_mean_s = wait_acc / wsum;
    report.delay_mean_s = delay_acc / wsum;
  }
  if (ewsum > 0.0) {
    report.expected_wait_mean_s = ewait_acc / ewsum;
    report.expected_delay_mean_s = edelay_acc / ewsum;
  }
  report.censored_fraction =
      total_samples + total_censored > 0
          ? static_cast<double>(total_censored) /
                static_cast<double>(total_samples + total_censored)
          : 0.0;

  if (opts.run_multihop) report.multihop = run_multihop_baseline(cfg, uavs);
  return report;
}

// Mobility-control trial: identical mechanics with the maneuver legs taken
// from cfg.j_m; with J = 0 this is exactly run_scf_trial.
inline SimReport run_mobility_trial(const NetworkConfig& cfg,
                                    const SimOptions& opts,
                                    std::uint64_t seed) {
  return run_scf_trial(cfg, opts, seed);
}

}  // namespace uavscf::sim
