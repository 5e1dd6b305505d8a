#pragma once

#include "nullgeo/engel.hpp"
#include "nullgeo/metric.hpp"
#include "nullgeo/quaternion.hpp"

#include <Eigen/Core>

#include <random>

namespace nullgeo::sampling {

/// Uniform point of S^3.
quat::Quaternion unit_quaternion(std::mt19937_64& rng);

/// Uniform orthonormal pair.
quat::FramePair frame_pair(std::mt19937_64& rng);

/// Prolongation point suited to m. For the stereographic charts (ids
/// round-sphere, s2s1:c=*, warped-time) the spatial part starts on a great
/// circle whose height stays below 0.6, keeping the whole circle inside the
/// chart; other metrics sample the central part of their box, capped to
/// [-1, 1]^3. theta is uniform in [0, 2 pi).
engel::ProlongationPoint prolongation_point(const DiagonalMetric& m, std::mt19937_64& rng);

/// Lorentz quadric A^T diag(1,1,-1) A / |det A|^(2/3) with cond(A) < 10.
Eigen::Matrix3d lorentz_quadric(std::mt19937_64& rng, Eigen::Matrix3d* transform = nullptr);

} // namespace nullgeo::sampling
