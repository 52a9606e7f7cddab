#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace rieszlab {

/// Deterministic quasi-uniform sample of the unit sphere S^{N-1}:
/// equispaced angles for N=2, a Fibonacci spiral for N=3, normalized
/// Halton points pushed through the inverse normal CDF for N>3.
/// Augmented with `random_count` seeded uniformly random directions.
std::vector<Eigen::VectorXd> sphere_sample(int N, int count, int random_count = 64,
                                           std::uint64_t seed = 0x5eed5eedULL);

/// Surface area of the unit sphere S^{N-1} in R^N.
double sphere_surface_area(int N);

/// Volume of the unit ball in R^N.
double ball_volume(int N);

}  // namespace rieszlab
