#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "uavscf/config.hpp"
#include "uavscf/rng.hpp"

namespace uavscf::geom {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double k) const { return {x * k, y * k, z * k}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }
  // Distance from the vertical axis through the origin.
  double norm_xy() const { return std::sqrt(x * x + y * y); }
};

enum class Phase : std::uint8_t {
  monitor,
  maneuver,
  return_flight,    // 3D straight return
  return_inplane,   // 2D leg toward the plane center
  return_descent,   // 2D vertical drop to the station
};

struct Segment {
  Vec3 a, b;
  double t0 = 0.0, t1 = 0.0;
  Phase phase = Phase::return_flight;

  double length() const { return (b - a).norm(); }
  double duration() const { return t1 - t0; }
};

struct Trajectory {
  std::vector<Segment> segments;

  double start_time() const {
    return segments.empty() ? 0.0 : segments.front().t0;
  }
  double end_time() const {
    return segments.empty() ? 0.0 : segments.back().t1;
  }
  double path_length() const {
    double sum = 0.0;
    for (const auto& s : segments) sum += s.length();
    return sum;
  }
};

struct Uav {
  Vec3 pos;            // monitor position
  double dispatch_s = 0.0;
};

inline Vec3 station_position() { return {0.0, 0.0, 0.0}; }

inline Vec3 plane_center(const NetworkConfig& cfg) {
  return {0.0, 0.0, cfg.h_m};
}

// ---------------------------------------------------------------------------
// Placement.
// ---------------------------------------------------------------------------

// i.i.d. uniform positions and dispatch times, deterministic per
// (seed, uav index).
inline std::vector<Uav> sample_network(const NetworkConfig& cfg,
                                       std::uint64_t seed) {
  cfg.validate();
  std::vector<Uav> uavs(cfg.n);
  Rng pos_base = Rng(seed).fork(stream::positions);
  Rng disp_base = Rng(seed).fork(stream::dispatch);
  double window = cfg.t0_effective();
  for (std::uint64_t i = 0; i < cfg.n; ++i) {
    Rng pr = pos_base.fork(i);
    Uav& u = uavs[i];
    u.pos.x = pr.uniform(-cfg.s_m, cfg.s_m);
    u.pos.y = pr.uniform(-cfg.s_m, cfg.s_m);
    u.pos.z = (cfg.dim == Dim::three_d) ? pr.uniform(0.0, cfg.s_m) : cfg.h_m;
    u.dispatch_s = disp_base.fork(i).uniform(0.0, window);
  }
  return uavs;
}

inline std::vector<Uav> sample_network(const NetworkConfig& cfg) {
  return sample_network(cfg, cfg.seed);
}

// ---------------------------------------------------------------------------
// Cell grid.
// ---------------------------------------------------------------------------

struct CellGrid {
  double side = 0.0;
  int nx = 0, ny = 0, nz = 0;  // nz == 1 in 2D
  Vec3 corner;                 // lowest corner of cell (0,0,0)

  std::int64_t cell_count() const {
    return static_cast<std::int64_t>(nx) * ny * nz;
  }

  std::array<int, 3> coords_of(const Vec3& p) const {
    auto clampi = [](int v, int hi) { return std::clamp(v, 0, hi - 1); };
    int i = clampi(static_cast<int>(std::floor((p.x - corner.x) / side)), nx);
    int j = clampi(static_cast<int>(std::floor((p.y - corner.y) / side)), ny);
    int k = nz == 1 ? 0
                    : clampi(static_cast<int>(std::floor((p.z - corner.z) /
                                                         side)),
                             nz);
    return {i, j, k};
  }

  std::int64_t flatten(const std::array<int, 3>& c) const {
    return (static_cast<std::int64_t>(c[2]) * ny + c[1]) * nx + c[0];
  }

  std::int64_t index_of(const Vec3& p) const { return flatten(coords_of(p)); }

  // Whole-cell extent fits inside the region; cells on the far faces may be
  // partial and are excluded from per-cell statistics.
  bool is_full_cell(const std::array<int, 3>& c, double sx, double sz) const {
    double eps = side * 1e-9;
    bool x_ok = corner.x + (c[0] + 1) * side <= sx + eps;
    bool y_ok = corner.y + (c[1] + 1) * side <= sx + eps;
    bool z_ok = nz == 1 || corner.z + (c[2] + 1) * side <= sz + eps;
    return x_ok && y_ok && z_ok;
  }
};

inline CellGrid cell_grid(const NetworkConfig& cfg) {
  if (cfg.n < 3)
    throw ConfigError("cell_grid: needs n >= 3 so that log n > 1");
  double side = cfg.cell_side();
  if (!(side < cfg.s_m))
    throw ConfigError("cell_grid: degenerate grid, cell side " +
                      std::to_string(side) + " m >= s");
  CellGrid g;
  g.side = side;
  g.nx = static_cast<int>(std::ceil(2.0 * cfg.s_m / side));
  g.ny = g.nx;
  g.nz = cfg.dim == Dim::three_d
             ? static_cast<int>(std::ceil(cfg.s_m / side))
             : 1;
  g.corner = {-cfg.s_m, -cfg.s_m, cfg.dim == Dim::three_d ? 0.0 : cfg.h_m};
  return g;
}

inline double neighborhood_radius(const NetworkConfig& cfg) {
  return cfg.neighborhood_radius();
}

// ---------------------------------------------------------------------------
// Returning trajectories.
// ---------------------------------------------------------------------------

namespace detail {
inline void append_leg(Trajectory& t, Vec3 from, Vec3 to, double& clock,
                       double v, Phase phase) {
  double len = (to - from).norm();
  if (len < 1e-12) return;  // skip degenerate legs
  Segment s;
  s.a = from;
  s.b = to;
  s.t0 = clock;
  clock += len / v;
  s.t1 = clock;
  s.phase = phase;
  t.segments.push_back(s);
}
}  // namespace detail

// Return path started at start_s from the monitor position. With J > 0 the
// UAV first sweeps a maneuver of total length exactly 2J (up/down in 3D,
// left/right in 2D) and ends back at the monitor spot; legs that would exit
// the region are shortened and the lost length moves to the opposite leg.
inline Trajectory returning_trajectory(const Vec3& monitor,
                                       const NetworkConfig& cfg,
                                       double start_s) {
  Trajectory t;
  double clock = start_s;
  double j = cfg.j_m;
  if (cfg.dim == Dim::three_d) {
    if (j > 0.0) {
      // up a, down J, up J - a; net zero, total 2J
      double a = std::clamp(j / 2.0, std::max(0.0, j - monitor.z),
                            std::min(j, cfg.s_m - monitor.z));
      Vec3 top = {monitor.x, monitor.y, monitor.z + a};
      Vec3 bottom = {monitor.x, monitor.y, monitor.z + a - j};
      detail::append_leg(t, monitor, top, clock, cfg.v_mps, Phase::maneuver);
      detail::append_leg(t, top, bottom, clock, cfg.v_mps, Phase::maneuver);
      detail::append_leg(t, bottom, monitor, clock, cfg.v_mps,
                         Phase::maneuver);
    }
    detail::append_leg(t, monitor, station_position(), clock, cfg.v_mps,
                       Phase::return_flight);
  } else {
    if (j > 0.0) {
      // left a, right J, left J - a along the x axis
      double a = std::clamp(j / 2.0, std::max(0.0, monitor.x + j - cfg.s_m),
                            std::min(j, monitor.x + cfg.s_m));
      Vec3 left = {monitor.x - a, monitor.y, monitor.z};
      Vec3 right = {monitor.x - a + j, monitor.y, monitor.z};
      detail::append_leg(t, monitor, left, clock, cfg.v_mps, Phase::maneuver);
      detail::append_leg(t, left, right, clock, cfg.v_mps, Phase::maneuver);
      detail::append_leg(t, right, monitor, clock, cfg.v_mps,
                         Phase::maneuver);
    }
    detail::append_leg(t, monitor, plane_center(cfg), clock, cfg.v_mps,
                       Phase::return_inplane);
    detail::append_leg(t, plane_center(cfg), station_position(), clock,
                       cfg.v_mps, Phase::return_descent);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Exact segment / ball intersection.
// ---------------------------------------------------------------------------

struct BallHit {
  double t_in = 0.0;
  double t_out = 0.0;
  double chord_m = 0.0;
};

// Entry/exit times of a point moving along the segment through the ball of
// radius r. Tangent contact and zero-length crossings count as no hit. The
// crossing is clipped to the segment, so a path starting inside the ball
// enters at the segment start.
inline std::optional<BallHit> segment_ball_encounter(const Segment& seg,
                                                     const Vec3& center,
                                                     double r) {
  if (r <= 0.0) return std::nullopt;
  Vec3 d = seg.b - seg.a;
  double len = d.norm();
  if (len < 1e-12) return std::nullopt;
  Vec3 u = d * (1.0 / len);
  Vec3 w = center - seg.a;
  double proj = u.dot(w);
  double disc = proj * proj - w.norm2() + r * r;
  if (disc <= 0.0) return std::nullopt;
  double sq = std::sqrt(disc);
  double d_in = std::max(proj - sq, 0.0);
  double d_out = std::min(proj + sq, len);
  if (d_out <= d_in) return std::nullopt;
  double speed = len / seg.duration();
  BallHit hit;
  hit.t_in = seg.t0 + d_in / speed;
  hit.t_out = seg.t0 + d_out / speed;
  hit.chord_m = d_out - d_in;
  return hit;
}

struct EncounterEvent {
  std::uint32_t observer = 0;
  std::uint32_t returner = 0;
  double t_in = 0.0;
  double t_out = 0.0;
  double chord_m = 0.0;
  Phase phase = Phase::return_flight;
};

// All events of the given trajectories against one observer ball, sorted by
// entry time (ties by returner id). Descent legs are vertical and cannot
// cross the in-plane neighborhood disk, so they never produce events.
inline std::vector<EncounterEvent> encounters(
    const Vec3& observer_pos, std::uint32_t observer_id,
    const std::vector<Trajectory>& returners, double r_n) {
  std::vector<EncounterEvent> events;
  for (std::uint32_t id = 0; id < returners.size(); ++id) {
    for (const Segment& seg : returners[id].segments) {
      if (seg.phase == Phase::return_descent) continue;
      if (auto hit = segment_ball_encounter(seg, observer_pos, r_n)) {
        EncounterEvent ev;
        ev.observer = observer_id;
        ev.returner = id;
        ev.t_in = hit->t_in;
        ev.t_out = hit->t_out;
        ev.chord_m = hit->chord_m;
        ev.phase = seg.phase;
        events.push_back(ev);
      }
    }
  }
  std::sort(events.begin(), events.end(),
            [](const EncounterEvent& a, const EncounterEvent& b) {
              if (a.t_in != b.t_in) return a.t_in < b.t_in;
              return a.returner < b.returner;
            });
  return events;
}

// ---------------------------------------------------------------------------
// Shaded-region membership (the analytic counting region).
// ---------------------------------------------------------------------------

// True when a UAV at q lies in the shaded shell of the observer at distance
// x from the station: within the cone subtending the observer ball and in
// the radial band [x - r_n, R_in]. This is the exact region whose volume
// (area) the closed-form count integrates. Both q and observer_rel are
// relative to the return focus (station in 3D, plane center in 2D).
inline bool in_shaded_region(const Vec3& q, const Vec3& observer_rel,
                             double x, double r_n, double r_inscribed) {
  double qn = q.norm();
  if (qn < x - r_n || qn > r_inscribed) return false;
  if (x <= r_n) return true;  // cone degenerates to the half space
  double cos_half = std::sqrt(x * x - r_n * r_n) / x;
  if (qn < 1e-300) return false;
  double cos_angle = q.dot(observer_rel) / (qn * x);
  return cos_angle >= cos_half;
}

}  // namespace uavscf::geom
