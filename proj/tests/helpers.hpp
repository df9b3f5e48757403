#pragma once

#include "uavscf/config.hpp"

namespace uavscf::test {

// Baseline 3D scenario: region constraint holds with margin
// ((sqrt(3)/3)*(t0*v/2) = 2309 m > s = 1000 m).
inline NetworkConfig cfg_3d() {
  NetworkConfig cfg;
  cfg.dim = Dim::three_d;
  cfg.n = 1 << 16;
  cfg.s_m = 1000.0;
  cfg.v_mps = 20.0;
  cfg.t0_s = 400.0;
  cfg.alpha = 3.0;
  cfg.seed = 1;
  return cfg;
}

inline NetworkConfig cfg_2d() {
  NetworkConfig cfg = cfg_3d();
  cfg.dim = Dim::two_d;
  cfg.h_m = 100.0;
  return cfg;
}

}  // namespace uavscf::test
