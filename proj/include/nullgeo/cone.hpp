#pragma once

#include "nullgeo/metric.hpp"

#include <Eigen/Core>

#include <span>

namespace nullgeo {

/// Symmetric 3x3 quadric with |det| = 1 and signature (+,+,-).
struct ConeQuadric {
    Eigen::Matrix3d G;

    double quadratic(const TangentVector& v) const { return v.dot(G * v); }
};

/// Recovers the Lorentz quadric whose null cone contains every sample.
/// Needs at least five pairwise non-proportional directions; throws
/// DegenerateConeError when the samples do not pin down a unique quadric
/// and NotLorentzConeError when the recovered form is not of signature (2,1).
ConeQuadric metric_from_cone(std::span<const TangentVector> samples);

/// Positive / negative eigenvalue counts of a symmetric matrix.
std::pair<int, int> signature(const Eigen::Matrix3d& G);

} // namespace nullgeo
