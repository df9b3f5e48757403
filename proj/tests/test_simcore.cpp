#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "uavscf/analytic.hpp"
#include "uavscf/numerics.hpp"
#include "uavscf/simcore.hpp"

using namespace uavscf;
namespace an = uavscf::analytic;

namespace {
sim::SimOptions quick_opts() {
  sim::SimOptions opts;
  opts.periods = 3;
  opts.warmup_periods = 1;
  opts.x_bins = 6;
  opts.observers_per_bin = 3;
  opts.delay_samples_per_observer = 40;
  opts.run_multihop = false;
  return opts;
}
}  // namespace

TEST_CASE("schedule: arrival hits energy exhaustion") {
  NetworkConfig cfg = test::cfg_3d();
  cfg.n = 500;
  cfg.j_m = 200.0;
  auto uavs = geom::sample_network(cfg, 3);
  std::vector<geom::Trajectory> paths(uavs.size());
  for (std::size_t i = 0; i < uavs.size(); ++i)
    paths[i] = geom::returning_trajectory(uavs[i].pos, cfg, 0.0);
  auto sched = sim::build_schedule(cfg, uavs, paths, quick_opts());
  for (std::size_t i = 0; i < uavs.size(); ++i) {
    const auto& e = sched.entries[i];
    REQUIRE(e.arrival_s <= e.dispatch_s + cfg.t0_s + 1e-9);
    REQUIRE(e.arrival_s ==
            Catch::Approx(e.dispatch_s + cfg.t0_s).epsilon(1e-12));
    REQUIRE(e.return_start_s >= e.dispatch_s);
  }
}

TEST_CASE("schedule: station uav returns at the last moment") {
  NetworkConfig cfg = test::cfg_3d();
  cfg.n = 2;
  std::vector<geom::Uav> uavs(2);
  uavs[0].pos = {0.0, 0.0, 0.0};
  uavs[0].dispatch_s = 17.0;
  uavs[1].pos = {0.0, 0.0, 500.0};
  uavs[1].dispatch_s = 40.0;
  std::vector<geom::Trajectory> paths;
  for (const auto& u : uavs)
    paths.push_back(geom::returning_trajectory(u.pos, cfg, 0.0));
  auto sched = sim::build_schedule(cfg, uavs, paths, quick_opts());
  REQUIRE(sched.entries[0].return_start_s ==
          Catch::Approx(17.0 + cfg.t0_s));
  REQUIRE(sched.entries[1].return_start_s ==
          Catch::Approx(40.0 + cfg.t0_s - 500.0 / cfg.v_mps));
}

TEST_CASE("schedule: vertex return at the feasibility limit takes t0/2") {
  NetworkConfig cfg = test::cfg_3d();
  double limit = std::sqrt(3.0) / 3.0 * cfg.t0_s * cfg.v_mps / 2.0;
  cfg.s_m = limit * (1.0 - 1e-12);
  cfg.n = 2;
  std::vector<geom::Uav> uavs(2);
  uavs[0].pos = {cfg.s_m, cfg.s_m, cfg.s_m};
  uavs[1].pos = {0.0, 0.0, 1.0};
  std::vector<geom::Trajectory> paths;
  for (const auto& u : uavs)
    paths.push_back(geom::returning_trajectory(u.pos, cfg, 0.0));
  auto sched = sim::build_schedule(cfg, uavs, paths, quick_opts());
  REQUIRE(sched.entries[0].travel_s ==
          Catch::Approx(cfg.t0_s / 2.0).epsilon(1e-9));
}

TEST_CASE("schedule: oversized slack is an internal error") {
  NetworkConfig cfg = test::cfg_3d();
  cfg.n = 10;
  auto uavs = geom::sample_network(cfg, 5);
  std::vector<geom::Trajectory> paths;
  for (const auto& u : uavs)
    paths.push_back(geom::returning_trajectory(u.pos, cfg, 0.0));
  sim::SimOptions opts = quick_opts();
  opts.return_slack_s = cfg.t0_s;
  REQUIRE_THROWS_AS(sim::build_schedule(cfg, uavs, paths, opts), ConfigError);
}

TEST_CASE("schedule: return marks are uniform over one period") {
  NetworkConfig cfg = test::cfg_3d();
  cfg.n = 10000;
  auto uavs = geom::sample_network(cfg, 21);
  std::vector<geom::Trajectory> paths(uavs.size());
  for (std::size_t i = 0; i < uavs.size(); ++i)
    paths[i] = geom::returning_trajectory(uavs[i].pos, cfg, 0.0);
  auto sched = sim::build_schedule(cfg, uavs, paths, quick_opts());
  std::vector<double> marks;
  for (const auto& e : sched.entries)
    marks.push_back(std::fmod(e.return_start_s, cfg.t0_s) / cfg.t0_s);
  double ks = num::ks_statistic(
      marks, [](double x) { return std::clamp(x, 0.0, 1.0); });
  REQUIRE(ks < 0.05);
}

TEST_CASE("one-receiver rule credits the union, one at a time") {
  // two overlapping passes and a disjoint one
  std::vector<sim::PassInterval> events{
      {10.0, 20.0, 2}, {15.0, 30.0, 5}, {50.0, 55.0, 1}};
  auto credit = sim::credit_one_receiver(events, 0.0, 100.0);
  REQUIRE(credit.served_s == Catch::Approx(25.0));  // 10..30 plus 50..55
  REQUIRE(credit.handoffs == 3);
  REQUIRE(credit.lo.size() == credit.hi.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < credit.lo.size(); ++i) {
    REQUIRE(credit.lo[i] < credit.hi[i]);
    if (i > 0) REQUIRE(credit.lo[i] >= credit.hi[i - 1] - 1e-12);
    sum += credit.hi[i] - credit.lo[i];
  }
  REQUIRE(sum == Catch::Approx(credit.served_s));

  // fully eclipsed pass adds nothing
  auto eclipsed = sim::credit_one_receiver(
      {{10.0, 30.0, 1}, {12.0, 20.0, 2}}, 0.0, 100.0);
  REQUIRE(eclipsed.served_s == Catch::Approx(20.0));

  // window clipping
  auto clipped = sim::credit_one_receiver({{-5.0, 5.0, 1}, {95.0, 120.0, 2}},
                                          0.0, 100.0);
  REQUIRE(clipped.served_s == Catch::Approx(10.0));
}

TEST_CASE("trials are bit-identical under a fixed seed") {
  NetworkConfig cfg = test::cfg_3d();
  cfg.n = 3000;
  cfg.c0 = 0.05;
  auto opts = quick_opts();
  auto a = sim::run_scf_trial(cfg, opts, 99);
  auto b = sim::run_scf_trial(cfg, opts, 99);
  REQUIRE(a.bins.size() == b.bins.size());
  for (std::size_t i = 0; i < a.bins.size(); ++i) {
    REQUIRE(a.bins[i].served_share_mean == b.bins[i].served_share_mean);
    REQUIRE(a.bins[i].delay_mean_s == b.bins[i].delay_mean_s);
    REQUIRE(a.bins[i].shaded_mean == b.bins[i].shaded_mean);
  }
  REQUIRE(a.delay_mean_s == b.delay_mean_s);
  auto c = sim::run_scf_trial(cfg, opts, 100);
  REQUIRE(a.delay_mean_s != c.delay_mean_s);
}

TEST_CASE("observers inside the critical range are served continuously") {
  NetworkConfig cfg = test::cfg_3d();
  cfg.n = 20000;
  cfg.c0 = 0.02;
  cfg.c4 = an::mean_pass_chord_constant(Dim::three_d);
  sim::SimOptions opts = quick_opts();
  opts.x_bins = 3;
  opts.observers_per_bin = 5;
  opts.x_lo_frac = 0.05;
  opts.x_hi_frac = 0.15;  // well inside the critical range (~0.37 L)
  opts.delay_samples_per_observer = 0;
  double share = 0.0;
  int trials = 3;
  for (int t = 0; t < trials; ++t) {
    auto rep = sim::run_scf_trial(cfg, opts, 500 + t);
    double s = 0.0;
    for (const auto& b : rep.bins) s += b.served_share_mean;
    share += s / rep.bins.size();
  }
  REQUIRE(share / trials >= 0.99);
}

TEST_CASE("no returners means zero throughput and censored delays") {
  NetworkConfig cfg = test::cfg_3d();
  cfg.n = 16;
  cfg.c0 = 1e-6;
  sim::SimOptions opts = quick_opts();
  opts.x_bins = 2;
  opts.observers_per_bin = 2;
  opts.x_lo_frac = 0.93;
  opts.x_hi_frac = 0.98;
  opts.dir_lo = 0.3;
  opts.dir_hi = 0.7;
  opts.delay_samples_per_observer = 20;
  auto rep = sim::run_scf_trial(cfg, opts, 4);
  bool any_served = false;
  for (const auto& acct : rep.observers)
    if (acct.served_s > 0.0) any_served = true;
  REQUIRE_FALSE(any_served);
  REQUIRE(rep.censored_fraction == Catch::Approx(1.0));
}

TEST_CASE("inter-encounter gaps follow the spacing law") {
  NetworkConfig cfg = test::cfg_3d();
  cfg.n = 20000;
  cfg.c0 = 0.003;
  cfg.c4 = an::mean_pass_chord_constant(Dim::three_d);
  sim::SimOptions opts = quick_opts();
  opts.x_bins = 1;
  opts.observers_per_bin = 12;
  opts.x_lo_frac = 0.45;
  opts.x_hi_frac = 0.55;
  opts.dir_lo = 0.35;
  opts.dir_hi = 0.9;
  opts.delay_samples_per_observer = 0;
  std::vector<double> gaps;
  double ku_sum = 0.0;
  int obs_count = 0;
  for (int t = 0; t < 10; ++t) {
    auto rep = sim::run_scf_trial(cfg, opts, 900 + t);
    for (const auto& acct : rep.observers) {
      gaps.insert(gaps.end(), acct.gaps.begin(), acct.gaps.end());
      ku_sum += an::ku(cfg, acct.obs.x);
      ++obs_count;
    }
  }
  double k = ku_sum / obs_count;
  REQUIRE(gaps.size() > 2000);
  double ks = num::ks_statistic(gaps, [&](double w) {
    return an::interval_cdf(w, k, cfg.t0_s);
  });
  REQUIRE(ks < 0.05);
}

TEST_CASE("multihop baseline funnels everything through the sink cell") {
  NetworkConfig cfg = test::cfg_3d();
  cfg.n = 4096;
  auto uavs = geom::sample_network(cfg, 77);
  auto mh = sim::run_multihop_baseline(cfg, uavs);
  REQUIRE(mh.bottleneck_flows == static_cast<std::int64_t>(cfg.n));
  double rate = an::per_hop_rate(cfg);
  REQUIRE(mh.per_node_rate ==
          Catch::Approx(rate / static_cast<double>(cfg.n)).epsilon(1e-12));
  REQUIRE(mh.max_relay_load < mh.bottleneck_flows);

  NetworkConfig c2 = test::cfg_2d();
  c2.n = 4096;
  auto mh2 = sim::run_multihop_baseline(c2, geom::sample_network(c2, 78));
  REQUIRE(mh2.bottleneck_flows == static_cast<std::int64_t>(c2.n));
  REQUIRE(mh2.per_node_rate == Catch::Approx(1.0 / 4096.0));
}

TEST_CASE("single uav adjacent to the sink keeps the full rate") {
  NetworkConfig cfg = test::cfg_3d();
  cfg.n = 16;  // grid config; the flow list below has one uav
  std::vector<geom::Uav> one(1);
  one[0].pos = {cfg.cell_side() * 1.2, 0.0, 0.0};  // next to the sink cell
  auto mh = sim::run_multihop_baseline(cfg, one);
  REQUIRE(mh.bottleneck_flows == 1);
  REQUIRE(mh.per_node_rate == Catch::Approx(an::per_hop_rate(cfg)));
}

TEST_CASE("mobility: monitoring loss is exactly 2J/v") {
  NetworkConfig cfg = test::cfg_3d();
  cfg.n = 200;
  auto uavs = geom::sample_network(cfg, 8);
  std::vector<geom::Trajectory> plain, mob;
  NetworkConfig cfg_j = cfg;
  cfg_j.j_m = 350.0;
  for (const auto& u : uavs) {
    plain.push_back(geom::returning_trajectory(u.pos, cfg, 0.0));
    mob.push_back(geom::returning_trajectory(u.pos, cfg_j, 0.0));
  }
  auto s0 = sim::build_schedule(cfg, uavs, plain, quick_opts());
  auto s1 = sim::build_schedule(cfg_j, uavs, mob, quick_opts());
  for (std::size_t i = 0; i < uavs.size(); ++i) {
    double monitor0 = s0.entries[i].return_start_s - s0.entries[i].dispatch_s;
    double monitor1 = s1.entries[i].return_start_s - s1.entries[i].dispatch_s;
    REQUIRE(monitor0 - monitor1 ==
            Catch::Approx(2.0 * cfg_j.j_m / cfg.v_mps).epsilon(1e-12));
  }
}

TEST_CASE("mobility trial reduces to the plain trial at J = 0") {
  NetworkConfig cfg = test::cfg_3d();
  cfg.n = 2000;
  cfg.c0 = 0.05;
  auto opts = quick_opts();
  auto plain = sim::run_scf_trial(cfg, opts, 42);
  auto mob = sim::run_mobility_trial(cfg, opts, 42);
  REQUIRE(plain.bins.size() == mob.bins.size());
  for (std::size_t i = 0; i < plain.bins.size(); ++i) {
    REQUIRE(plain.bins[i].served_share_mean == mob.bins[i].served_share_mean);
    REQUIRE(plain.bins[i].maneuver_crossers_mean == 0.0);
  }
}

TEST_CASE("maneuver sweeps generate separately counted encounters") {
  NetworkConfig cfg = test::cfg_3d();
  cfg.n = 5000;
  cfg.c0 = 0.05;
  cfg.j_m = 400.0;
  sim::SimOptions opts = quick_opts();
  opts.x_bins = 3;
  opts.observers_per_bin = 4;
  opts.x_lo_frac = 0.3;
  opts.x_hi_frac = 0.7;
  opts.dir_lo = 0.4;
  opts.dir_hi = 0.6;
  opts.delay_samples_per_observer = 0;
  auto rep = sim::run_scf_trial(cfg, opts, 11);
  double maneuver = 0.0;
  for (const auto& b : rep.bins) maneuver += b.maneuver_crossers_mean;
  REQUIRE(maneuver > 0.0);
}

TEST_CASE("served time never exceeds the window and caps the rate") {
  NetworkConfig cfg = test::cfg_3d();
  cfg.n = 30000;
  cfg.c0 = 0.5;  // very dense coverage
  auto opts = quick_opts();
  opts.delay_samples_per_observer = 0;
  auto rep = sim::run_scf_trial(cfg, opts, 1);
  double window = (opts.periods - opts.warmup_periods) * cfg.t0_s;
  double rate = an::per_hop_rate(cfg);
  for (const auto& acct : rep.observers) {
    REQUIRE(acct.served_s <= window + 1e-9);
  }
  for (const auto& b : rep.bins) {
    REQUIRE(b.per_cell_rate_mean <= rate + 1e-12);
    REQUIRE(b.served_share_mean <= 1.0 + 1e-12);
  }
}

TEST_CASE("simulated mean delay respects the analytic bound") {
  NetworkConfig cfg = test::cfg_3d();
  cfg.n = 30000;
  cfg.c0 = 0.1;
  sim::SimOptions opts = quick_opts();
  opts.x_bins = 16;
  opts.observers_per_bin = 3;
  opts.x_lo_frac = 0.02;
  opts.x_hi_frac = 1.0;
  opts.periods = 4;
  std::vector<double> delays;
  for (int t = 0; t < 5; ++t)
    delays.push_back(sim::run_scf_trial(cfg, opts, 300 + t).delay_mean_s);
  auto ms = num::mean_stderr(delays);
  double bound = an::delay_bound(cfg).total_bound_s;
  REQUIRE(ms.mean <= bound + 3.0 * ms.stderr_);
}
