#pragma once

#include "nullgeo/metric.hpp"

namespace nullgeo::metrics {

/// diag(1, 1, -1) on R^3.
DiagonalMetric minkowski3();

/// Round metric 4/(1+x1^2+x2^2)^2 (dx1^2 + dx2^2) in the stereographic chart
/// from the north pole, plus a constant time component g33 < 0.
DiagonalMetric stereographic_product(double g33, std::string id);

/// Round-sphere chart with g33 = -1.
DiagonalMetric round_sphere_chart();

/// S^2 x S^1 with g_c = g_round - dt^2 / c^2 in stereographic x angle coordinates.
DiagonalMetric s2s1_chart(int c);

/// Separable metric with a time-dependent time component:
/// stereographic round spatial part and g33 = -(1 + x3^2 / 4).
DiagonalMetric warped_time();

/// A non-separable diagonal metric for exercising the general kernel formula.
DiagonalMetric skew_test();

/// Stereographic projection from the north pole (0, 0, 1).
Eigen::Vector2d stereographic_project(const Eigen::Vector3d& X);
/// Inverse of stereographic_project.
Eigen::Vector3d stereographic_lift(const Eigen::Vector2d& y);
/// Chart velocity of a curve through X on S^2 with ambient velocity w.
Eigen::Vector2d stereographic_push(const Eigen::Vector3d& X, const Eigen::Vector3d& w);

} // namespace nullgeo::metrics
