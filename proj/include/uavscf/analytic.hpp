#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "uavscf/config.hpp"
#include "uavscf/numerics.hpp"

namespace uavscf::analytic {

inline constexpr double nan_d = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------------------
// Per-hop rates (order constants normalized to 1).
// ---------------------------------------------------------------------------

// 3D per-hop rate, piecewise in the path-loss exponent. The 1/27 prefactor
// is the TDMA share of a 27-cube cluster.
inline double per_hop_rate_3d(double alpha, double n) {
  if (alpha <= 2.0)
    throw std::domain_error("per_hop_rate_3d: alpha must be > 2");
  if (n < std::exp(1.0) - 1e-9)
    throw std::domain_error("per_hop_rate_3d: need log n >= 1");
  if (alpha < 3.0) return std::pow(n, (alpha - 3.0) / 3.0) / 27.0;
  if (alpha == 3.0) return 1.0 / (27.0 * std::log(n));
  return 1.0 / 27.0;
}

// 2D per-hop rate is a constant for alpha > 2.
inline double per_hop_rate_2d(double alpha) {
  if (alpha <= 2.0)
    throw std::domain_error("per_hop_rate_2d: alpha must be > 2");
  return 1.0;
}

// Relay capacity of the 2D network: min of the per-hop rate and the
// dedicated hub link, both normalized constants.
inline double multihop_capacity_2d(double alpha) {
  return std::min(per_hop_rate_2d(alpha), 1.0);
}

inline double per_hop_rate(const NetworkConfig& cfg) {
  return cfg.dim == Dim::three_d
             ? per_hop_rate_3d(cfg.alpha, static_cast<double>(cfg.n))
             : per_hop_rate_2d(cfg.alpha);
}

// ---------------------------------------------------------------------------
// Order statistics of return marks.
// ---------------------------------------------------------------------------

// PDF of the spacing between adjacent marks when k marks fall uniformly in
// [0, t0]: g(w) = (k/t0) (1 - w/t0)^(k-1). Zero outside the support.
inline double interval_pdf(double w, double k, double t0) {
  if (k < 1.0) throw std::domain_error("interval_pdf: k must be >= 1");
  if (t0 <= 0.0) throw std::domain_error("interval_pdf: t0 must be positive");
  if (w < 0.0 || w > t0) return 0.0;
  return (k / t0) * std::pow(1.0 - w / t0, k - 1.0);
}

inline double interval_cdf(double w, double k, double t0) {
  if (w <= 0.0) return 0.0;
  if (w >= t0) return 1.0;
  return 1.0 - std::pow(1.0 - w / t0, k);
}

inline double interval_mean(double k, double t0) { return t0 / (k + 1.0); }

// Probability that a spacing is below 1/k_th of the window, i.e. that the
// next returner arrives before the current pass ends.
inline double prob_multi_pass(double k, double k_th) {
  if (k < 0.0) throw std::domain_error("prob_multi_pass: k must be >= 0");
  if (k_th <= 1.0) throw std::domain_error("prob_multi_pass: k_th must be > 1");
  return 1.0 - std::pow(1.0 - 1.0 / k_th, k);
}

// ---------------------------------------------------------------------------
// Encounter geometry: spherical sectors (3D) and circular sectors (2D).
// ---------------------------------------------------------------------------

struct SectorValue {
  double value = 0.0;
  bool station_inside = false;  // x < r_n: observer ball contains the station
};

// Volume of the spherical sector of radius L subtending the neighborhood
// ball of radius r_n at distance x: (2*pi/3) L^3 (1 - sqrt(x^2-r_n^2)/x).
inline SectorValue sector_volume_3d(double l, double x, double r_n) {
  if (l <= 0.0 || r_n <= 0.0 || x <= 0.0)
    throw std::domain_error("sector_volume_3d: L, x, r_n must be positive");
  double full = 2.0 * std::numbers::pi / 3.0 * l * l * l;
  if (x < r_n) return {full, true};
  double cos_half = std::sqrt(x * x - r_n * r_n) / x;
  return {full * (1.0 - cos_half), false};
}

// Volume of the shaded shell of the sector between radii x - r_n and L.
inline SectorValue shaded_volume_3d(double l, double x, double r_n) {
  SectorValue sector = sector_volume_3d(l, x, r_n);
  double inner = std::clamp(x - r_n, 0.0, l);
  double frac = 1.0 - (inner / l) * (inner / l) * (inner / l);
  return {sector.value * frac, sector.station_inside};
}

// 2D sector area: K^2 * arcsin(r_n/x).
inline SectorValue sector_area_2d(double k, double x, double r_n) {
  if (k <= 0.0 || r_n <= 0.0 || x <= 0.0)
    throw std::domain_error("sector_area_2d: K, x, r_n must be positive");
  if (x < r_n) return {k * k * std::numbers::pi / 2.0, true};
  return {k * k * std::asin(r_n / x), false};
}

// 2D shaded annular sector: (K^2 - (x-r_n)^2) * arcsin(r_n/x).
inline SectorValue shaded_area_2d(double k, double x, double r_n) {
  if (k <= 0.0 || r_n <= 0.0 || x <= 0.0)
    throw std::domain_error("shaded_area_2d: K, x, r_n must be positive");
  double angle =
      (x < r_n) ? std::numbers::pi / 2.0 : std::asin(r_n / x);
  double inner = std::clamp(x - r_n, 0.0, k);
  return {(k * k - inner * inner) * angle, x < r_n};
}

// Expected number of UAVs in the shaded region whose returns cross the
// neighborhood at distance x. Density is n over the full region volume.
inline double ku_3d(double n, double l, double x, double r_n) {
  return n * shaded_volume_3d(l, x, r_n).value / (4.0 * l * l * l);
}

inline double ku_2d(double n, double k, double x, double r_n) {
  return n * shaded_area_2d(k, x, r_n).value / (4.0 * k * k);
}

inline double ku(const NetworkConfig& cfg, double x) {
  double n = static_cast<double>(cfg.n);
  double r_n = cfg.neighborhood_radius();
  return cfg.dim == Dim::three_d ? ku_3d(n, cfg.inscribed_radius(), x, r_n)
                                 : ku_2d(n, cfg.inscribed_radius(), x, r_n);
}

// ---------------------------------------------------------------------------
// Return-rate thresholds.
// ---------------------------------------------------------------------------

inline void require_n_for_thresholds(const NetworkConfig& cfg) {
  if (cfg.n < 16)
    throw std::domain_error(
        "threshold formulas need n >= 16 (log log n must be positive)");
  if (!(cfg.cell_side() < cfg.s_m))
    throw std::domain_error("degenerate grid: cell side " +
                            std::to_string(cfg.cell_side()) +
                            " m is not below s; raise n or lower c0/c2");
}

// Number of returners per window needed for back-to-back passes.
inline double k_threshold(const NetworkConfig& cfg) {
  require_n_for_thresholds(cfg);
  return cfg.t0_effective() / cfg.pass_time();
}

// Critical-range condition level: the shaded-count condition
// k_u >= k_th log k_th reduces to (1 - (x/L)^3)/x^2 >= u in 3D and
// (K^2 - x^2)/x >= u in 2D.
inline double u_value(const NetworkConfig& cfg) {
  double k_th = k_threshold(cfg);
  double n = static_cast<double>(cfg.n);
  double r_n = cfg.neighborhood_radius();
  if (cfg.dim == Dim::three_d)
    return 12.0 * k_th * std::log(k_th) / (std::numbers::pi * n * r_n * r_n);
  double k = cfg.inscribed_radius();
  return 4.0 * k * k * k_th * std::log(k_th) / (n * r_n);
}

// Sparse-regime level: k_u <= k_th / log k_th.
inline double gamma_value(const NetworkConfig& cfg) {
  double k_th = k_threshold(cfg);
  double n = static_cast<double>(cfg.n);
  double r_n = cfg.neighborhood_radius();
  if (cfg.dim == Dim::three_d)
    return 12.0 * k_th / (std::numbers::pi * n * r_n * r_n * std::log(k_th));
  double k = cfg.inscribed_radius();
  return 4.0 * k * k * k_th / (n * r_n * std::log(k_th));
}

// ---------------------------------------------------------------------------
// Critical ranges.
// ---------------------------------------------------------------------------

// Closed cubic-root solution of (1/x^2)(1 - x^3/L^3) = u, i.e. of
// x^3 + u L^3 x^2 - L^3 = 0. Real only when 27 - 4 L^6 u^3 >= 0.
inline double critical_range_closed_3d(double l, double u) {
  double l3 = l * l * l;
  double disc = 27.0 - 4.0 * l3 * l3 * u * u * u;
  if (disc < 0.0) return nan_d;
  double inner = 27.0 * l3 - 2.0 * l3 * l3 * l3 * u * u * u +
                 3.0 * l3 * std::sqrt(3.0 * disc);
  double croot = std::cbrt(inner);
  double cbrt2 = std::cbrt(2.0);
  return cbrt2 * l3 * l3 * u * u / (3.0 * croot) + croot / (3.0 * cbrt2) -
         l3 * u / 3.0;
}

// Bisection on the defining condition; the left side is strictly
// decreasing on (0, L], so the root is unique.
inline double critical_range_bisect_3d(double l, double u) {
  if (l <= 0.0 || u <= 0.0)
    throw std::domain_error("critical_range_bisect_3d: L, u must be positive");
  auto f = [&](double x) {
    return (1.0 - (x / l) * (x / l) * (x / l)) / (x * x) - u;
  };
  return num::bisect(f, l * 1e-12, l, l * 1e-15);
}

// 2D critical range: positive root of x^2 + u x - K^2 = 0.
inline double critical_range_2d(double k, double u) {
  if (k <= 0.0 || u < 0.0)
    throw std::domain_error("critical_range_2d: K must be positive, u >= 0");
  return 0.5 * std::sqrt(4.0 * k * k + u * u) - 0.5 * u;
}

struct CriticalRanges {
  double x1_star = nan_d;
  double x2_star = nan_d;
  double x1_star_closed = nan_d;  // cross-check path; NaN when not real
  double u = nan_d;
  double gamma = nan_d;
  double k_th = nan_d;
  bool closed_form_valid = false;
  bool regimes_overlap = false;  // u <= gamma: no sparse regime
};

inline CriticalRanges critical_ranges(const NetworkConfig& cfg) {
  CriticalRanges out;
  out.u = u_value(cfg);
  out.gamma = gamma_value(cfg);
  out.k_th = k_threshold(cfg);
  double radius = cfg.inscribed_radius();
  if (cfg.dim == Dim::three_d) {
    out.x1_star = critical_range_bisect_3d(radius, out.u);
    out.x1_star_closed = critical_range_closed_3d(radius, out.u);
    out.closed_form_valid = std::isfinite(out.x1_star_closed);
    if (out.u > out.gamma) {
      auto f = [&](double x) {
        return (1.0 - (x / radius) * (x / radius) * (x / radius)) / (x * x) -
               out.gamma;
      };
      out.x2_star = num::bisect(f, out.x1_star, radius, radius * 1e-15);
    } else {
      out.regimes_overlap = true;
    }
  } else {
    out.x1_star = critical_range_2d(radius, out.u);
    out.x1_star_closed = out.x1_star;
    out.closed_form_valid = true;
    if (out.u > out.gamma) {
      auto f = [&](double x) {
        return (radius * radius - x * x) / x - out.gamma;
      };
      out.x2_star = num::bisect(f, out.x1_star, radius, radius * 1e-15);
    } else {
      out.regimes_overlap = true;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Per-node capacity profile.
// ---------------------------------------------------------------------------

enum class Regime { within_critical, transition, outside_critical };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::within_critical: return "within";
    case Regime::transition: return "transition";
    default: return "outside";
  }
}

struct CapacityPoint {
  double x = 0.0;
  Regime regime = Regime::within_critical;
  bool has_estimate = true;   // transition points carry only a bracket
  double per_cell = nan_d;    // rate shared by the observer's cell
  double per_node = nan_d;
  double bracket_lo = nan_d;  // transition regime: bounding values
  double bracket_hi = nan_d;
};

inline double cell_population_constant(const NetworkConfig& cfg) {
  return cfg.dim == Dim::three_d ? cfg.c5 : cfg.c9;
}

// Sparse-regime per-cell rate: pass time * R * k_u(x) / window.
inline double capacity_per_cell_sparse(const NetworkConfig& cfg, double x) {
  double rate = per_hop_rate(cfg);
  return std::min(rate,
                  cfg.pass_time() * rate * ku(cfg, x) / cfg.t0_effective());
}

inline CapacityPoint capacity_scf(const NetworkConfig& cfg, double x,
                                  const CriticalRanges& ranges) {
  double radius = cfg.inscribed_radius();
  if (x <= 0.0 || x > radius)
    throw std::domain_error("capacity_scf: x must lie in (0, L]");
  double rate = per_hop_rate(cfg);
  double share = cell_population_constant(cfg) *
                 std::log(static_cast<double>(cfg.n));
  CapacityPoint p;
  p.x = x;
  if (x <= ranges.x1_star) {
    p.regime = Regime::within_critical;
    p.per_cell = rate;
    p.per_node = rate / share;
  } else if (!ranges.regimes_overlap && x >= ranges.x2_star) {
    p.regime = Regime::outside_critical;
    p.per_cell = capacity_per_cell_sparse(cfg, x);
    p.per_node = p.per_cell / share;
  } else {
    // The expectation has no clean form between the regimes; report the
    // bracketing values only.
    p.regime = Regime::transition;
    p.has_estimate = false;
    p.bracket_lo = capacity_per_cell_sparse(cfg, x) / share;
    p.bracket_hi = rate / share;
  }
  return p;
}

inline CapacityPoint capacity_scf(const NetworkConfig& cfg, double x) {
  return capacity_scf(cfg, x, critical_ranges(cfg));
}

inline std::vector<CapacityPoint> capacity_profile(
    const NetworkConfig& cfg, const std::vector<double>& x_grid) {
  auto ranges = critical_ranges(cfg);
  std::vector<CapacityPoint> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) out.push_back(capacity_scf(cfg, x, ranges));
  return out;
}

// ---------------------------------------------------------------------------
// Mobility control.
// ---------------------------------------------------------------------------

struct MobilityPrediction {
  double count = 0.0;            // N(J): corridor UAVs crossing per window
  double k_th_maneuver = 0.0;    // threshold base for maneuver passes
  double saturation_level = 0.0; // k_th * log k_th
  bool saturates = false;        // N(J) >= k_th * log k_th
  double monitor_loss_s = 0.0;   // monitoring time given up per UAV
};

// Corridor count for a maneuver of length J: the per-cell population times
// the number of cell layers the maneuver sweeps, with the neighborhood
// cross-section (9 cells in 3D, 3 in 2D).
inline MobilityPrediction mobility_encounters(const NetworkConfig& cfg,
                                              double j_m) {
  if (j_m < 0.0)
    throw std::domain_error("mobility_encounters: J must be >= 0");
  require_n_for_thresholds(cfg);
  double side = cfg.cell_side();
  double ln = std::log(static_cast<double>(cfg.n));
  MobilityPrediction out;
  if (cfg.dim == Dim::three_d)
    out.count = 9.0 * cfg.kappa * j_m / side * cfg.c5 * ln;
  else
    out.count = 3.0 * cfg.kappa * j_m / side * cfg.c9 * ln;
  // Maneuver passes cross the 3-cell neighborhood side, not the chord.
  out.k_th_maneuver = cfg.t0_s * cfg.v_mps / (3.0 * side);
  out.saturation_level = out.k_th_maneuver * std::log(out.k_th_maneuver);
  out.saturates = out.count >= out.saturation_level;
  out.monitor_loss_s = 2.0 * j_m / cfg.v_mps;
  return out;
}

// kappa for which N(J) equals the expected count of UAVs whose maneuver
// sweep crosses the circumscribed ball: the ball cross-section replaces the
// 9-cell (3-cell) one, giving pi r_n^2 J vs 9 s_n^2 J in 3D and 2 r_n J vs
// 3 xi_n J in 2D (with c5 = c0, c9 = c2).
inline double ball_corridor_kappa(Dim dim) {
  return dim == Dim::three_d ? 3.0 * std::numbers::pi / 4.0
                             : std::numbers::sqrt2;
}

// Chord constant matching the mean crossing chord of the circumscribed
// ball/circle under a uniform impact parameter: (4/3) r_n in 3D and
// (pi/2) r_n in 2D.
inline double mean_pass_chord_constant(Dim dim) {
  return dim == Dim::three_d
             ? 2.0 * std::numbers::sqrt3
             : 3.0 * std::numbers::sqrt2 * std::numbers::pi / 4.0;
}

// ---------------------------------------------------------------------------
// Delay.
// ---------------------------------------------------------------------------

// Distance-to-station density of a uniform point in the inscribed
// hemisphere (3D) or disk (2D).
inline double delay_position_pdf(const NetworkConfig& cfg, double x) {
  double radius = cfg.inscribed_radius();
  if (x < 0.0 || x > radius) return 0.0;
  if (cfg.dim == Dim::three_d)
    return 3.0 * x * x / (radius * radius * radius);
  return 2.0 * x / (radius * radius);
}

struct DelayEstimate {
  double carry_s = 0.0;          // mean carry time to the station
  double waiting_quad_s = 0.0;   // waiting term, quadrature of the exact form
  double waiting_bound_s = 0.0;  // waiting term, closed-form upper bound
  double total_quad_s = 0.0;
  double total_bound_s = 0.0;
};

inline DelayEstimate delay_bound(const NetworkConfig& cfg) {
  double n = static_cast<double>(cfg.n);
  double r_n = cfg.neighborhood_radius();
  DelayEstimate out;
  if (cfg.dim == Dim::three_d) {
    double l = cfg.inscribed_radius();
    double rho = r_n / l;
    out.carry_s = 0.75 * l / cfg.v_mps;
    double pref = 36.0 * cfg.t0_s / (std::numbers::pi * n * r_n * r_n);
    // integral of x^4 / (L^3 - (x - r_n)^3) dx over [0, L], normalized
    auto integrand = [&](double xh) {
      double d = xh - rho;
      return xh * xh * xh * xh / (1.0 - d * d * d);
    };
    out.waiting_quad_s =
        pref * l * l * num::adaptive_simpson(integrand, 0.0, 1.0, 1e-10);
    double lp = l + r_n;
    double bracket =
        lp * lp * lp * lp * std::log(lp / r_n) -
        l / 12.0 *
            (25.0 * l * l * l + 52.0 * l * l * r_n + 42.0 * l * r_n * r_n +
             12.0 * r_n * r_n * r_n);
    out.waiting_bound_s = pref / (l * l) * bracket;
  } else {
    double k = cfg.inscribed_radius();
    double rho = r_n / k;
    out.carry_s = 2.0 * k / (3.0 * cfg.v_mps) + cfg.h_m / cfg.v_mps;
    double pref = 8.0 * cfg.t0_s / (n * r_n);
    auto integrand = [&](double xh) {
      double d = xh - rho;
      return xh * xh / (1.0 - d * d);
    };
    out.waiting_quad_s =
        pref * k * num::adaptive_simpson(integrand, 0.0, 1.0, 1e-10);
    double kp = k + r_n;
    double bracket = kp * kp * std::log(kp / r_n) -
                     k / 2.0 * (3.0 * k + 2.0 * r_n);
    out.waiting_bound_s = pref / k * bracket;
  }
  out.total_quad_s = out.carry_s + out.waiting_quad_s;
  out.total_bound_s = out.carry_s + out.waiting_bound_s;
  return out;
}

// ---------------------------------------------------------------------------
// 2D/3D comparison gap.
// ---------------------------------------------------------------------------

// g(x) = (1 - (x/K)^2)/x - (1 - (x/L)^3)/x^2. Sign is reported as observed;
// it is negative for small x when K = L.
inline double capacity_gap_g(double x, double k, double l) {
  if (x <= 0.0) throw std::domain_error("capacity_gap_g: x must be positive");
  double a = (1.0 - (x / k) * (x / k)) / x;
  double b = (1.0 - (x / l) * (x / l) * (x / l)) / (x * x);
  return a - b;
}

}  // namespace uavscf::analytic
