#pragma once

#include <cstdint>

#include "rieszlab/grid.hpp"

namespace rieszlab {

/// Reproducible generator of smooth compactly supported test fields:
/// Gaussian random Fourier coefficients up to `bandwidth`, brought to real
/// space and multiplied by a radial C^2 smoothstep bump supported in the
/// inner half of the box.
struct EnsembleSpec {
  std::uint64_t seed = 1;
  int count = 100;
  int bandwidth = 0;  // 0 -> resolution/8
  bool real_valued = true;
};

/// C^2 radial cutoff: 1 on B_{inner}, 0 outside B_{outer} (quintic smoothstep
/// in between).
double smoothstep_c2(double t);                       // 1 for t<=0, 0 for t>=1
double radial_cutoff(double r, double inner, double outer);

/// One member; index selects the member within the seeded stream.
GridField ensemble_member(const Box& box, const std::vector<int>& resolution,
                          int value_dim, const EnsembleSpec& spec, int index);

}  // namespace rieszlab
