#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace uavscf {

enum class Dim { three_d, two_d };

inline std::string to_string(Dim d) {
  return d == Dim::three_d ? "3d" : "2d";
}

// Channel tags for traffic accounting. The channels are nonoverlapping, so
// they never interact; the tag only says which mode a rate belongs to.
enum class Channel {
  multihop_3d,   // relay traffic, 3D grid
  scf_3d,        // store-carry-and-forward, 3D
  multihop_2d,   // relay traffic, 2D grid
  hub_link_2d,   // central cell to ground station
  scf_2d,        // store-carry-and-forward, 2D
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Full scenario description. Distances in meters, times in seconds.
//
// 3D: n UAVs uniform in the 2s x 2s x s box, ground station at the center
// of the bottom face (origin). 2D: n UAVs uniform on the 2s x 2s plane at
// altitude h; returns route through the plane center and descend to the
// station on the ground below it.
struct NetworkConfig {
  std::uint64_t n = 1 << 16;  // UAV count
  double s_m = 1000.0;        // region half-side
  double v_mps = 20.0;        // cruise speed
  double t0_s = 400.0;        // flight duration per charge
  double h_m = 100.0;         // plane altitude (2D only)
  double alpha = 3.0;         // path-loss exponent
  Dim dim = Dim::three_d;

  // Free model constants. c0/c2 set the cell volume/area, c4/c6 the pass
  // chord in cell sides, c5/c9 the per-cell population normalization,
  // kappa the maneuver corridor width.
  double c0 = 1.0;
  double c2 = 1.0;
  double c4 = 3.0 * std::numbers::sqrt3;  // diametral chord by default
  double c6 = 3.0 * std::numbers::sqrt2;
  double c5 = 1.0;
  double c9 = 1.0;
  double kappa = 1.0;

  double j_m = 0.0;  // maneuver length; 0 disables mobility control
  std::uint64_t seed = 1;

  // --- derived quantities ---

  // Inscribed hemisphere / disk radius.
  double inscribed_radius() const { return s_m; }

  double t0_effective() const {
    return dim == Dim::three_d ? t0_s : t0_s - 2.0 * h_m / v_mps;
  }

  double region_volume() const {
    // 2s * 2s * s box or 2s * 2s plane.
    return dim == Dim::three_d ? 4.0 * s_m * s_m * s_m : 4.0 * s_m * s_m;
  }

  double uav_density() const {
    return static_cast<double>(n) / region_volume();
  }

  double c1() const { return 4.0 * s_m * s_m * s_m * c0; }
  double c3() const { return 4.0 * s_m * s_m * c2; }

  // Grid cell side: (c1 log n / n)^(1/3) or (c3 log n / n)^(1/2).
  double cell_side() const {
    double ln = std::log(static_cast<double>(n));
    if (dim == Dim::three_d)
      return std::cbrt(c1() * ln / static_cast<double>(n));
    return std::sqrt(c3() * ln / static_cast<double>(n));
  }

  // Circumscribed sphere/circle of the 27-cube / 9-cell neighborhood.
  double neighborhood_radius() const {
    double side = cell_side();
    if (dim == Dim::three_d) return 1.5 * std::sqrt(3.0) * side;
    return 1.5 * std::sqrt(2.0) * side;
  }

  // Chord-based pass time through a neighborhood ball/disk.
  double pass_time() const {
    double chord = (dim == Dim::three_d ? c4 : c6) * cell_side();
    return chord / v_mps;
  }

  void validate() const;
};

inline double max_pass_chord_constant(Dim d) {
  return d == Dim::three_d ? 3.0 * std::sqrt(3.0) : 3.0 * std::sqrt(2.0);
}

inline void NetworkConfig::validate() const {
  if (n < 2) throw ConfigError("n must be >= 2; got " + std::to_string(n));
  if (s_m <= 0.0 || v_mps <= 0.0 || t0_s <= 0.0)
    throw ConfigError("s, v and t0 must be positive");
  if (alpha <= 2.0)
    throw ConfigError("path-loss exponent alpha must be > 2; got " +
                      std::to_string(alpha));
  if (c0 <= 0.0 || c2 <= 0.0 || c5 <= 0.0 || c9 <= 0.0 || kappa <= 0.0)
    throw ConfigError("constants c0, c2, c5, c9, kappa must be positive");
  double c4_max = max_pass_chord_constant(Dim::three_d);
  double c6_max = max_pass_chord_constant(Dim::two_d);
  if (c4 <= 0.0 || c4 > c4_max + 1e-12)
    throw ConfigError("c4 must lie in (0, 3*sqrt(3)]; got " +
                      std::to_string(c4));
  if (c6 <= 0.0 || c6 > c6_max + 1e-12)
    throw ConfigError("c6 must lie in (0, 3*sqrt(2)]; got " +
                      std::to_string(c6));
  if (j_m < 0.0) throw ConfigError("maneuver length J must be >= 0");
  if (j_m > s_m)
    throw ConfigError(
        "maneuver length J must be <= s so the maneuver fits the region; "
        "got J = " +
        std::to_string(j_m) + ", s = " + std::to_string(s_m));

  if (dim == Dim::three_d) {
    // Round trip to the farthest vertex must fit one charge:
    // s < (sqrt(3)/3) * (t0 * v / 2).
    double limit = std::sqrt(3.0) / 3.0 * t0_s * v_mps / 2.0;
    if (!(s_m < limit))
      throw ConfigError(
          "region constraint violated: s < (sqrt(3)/3)*(t0*v/2) requires s < " +
          std::to_string(limit) + " m, got s = " + std::to_string(s_m) + " m");
  } else {
    if (h_m <= 0.0) throw ConfigError("altitude h must be positive in 2D");
    // sqrt(2)*s + h < t0*v/2.
    double limit = t0_s * v_mps / 2.0;
    double reach = std::sqrt(2.0) * s_m + h_m;
    if (!(reach < limit))
      throw ConfigError(
          "region constraint violated: sqrt(2)*s + h < t0*v/2 requires " +
          std::to_string(reach) + " < " + std::to_string(limit));
  }

  // Grid nondegeneracy (cell side < s) is enforced by the grid and
  // threshold operations, which are the ones that need it; plain placement
  // and trajectories work for any n >= 2.
}

}  // namespace uavscf
