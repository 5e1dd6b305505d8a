#pragma once

#include "nullgeo/quaternion.hpp"

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <random>

namespace testsupport {

inline constexpr double kPi = std::numbers::pi;

/// Hamilton product via the left-multiplication matrix, independent of qmul.
inline Eigen::Vector4d hamilton(const Eigen::Vector4d& a, const Eigen::Vector4d& b)
{
    Eigen::Matrix4d L;
    L << a[0], -a[1], -a[2], -a[3],
         a[1],  a[0], -a[3],  a[2],
         a[2],  a[3],  a[0], -a[1],
         a[3], -a[2],  a[1],  a[0];
    return L * b;
}

inline Eigen::Vector4d conj4(const Eigen::Vector4d& q) { return {q[0], -q[1], -q[2], -q[3]}; }

/// s r s^{-1} for unit s through two matrix products.
inline Eigen::Vector3d conjugate_by(const Eigen::Vector4d& s, const Eigen::Vector3d& r)
{
    const Eigen::Vector4d rq(0.0, r.x(), r.y(), r.z());
    return hamilton(hamilton(s, rq), conj4(s)).tail<3>();
}

/// Rotation of r by angle alpha about the unit axis z (Rodrigues).
inline Eigen::Vector3d rodrigues(const Eigen::Vector3d& z, double alpha, const Eigen::Vector3d& r)
{
    return r * std::cos(alpha) + z.cross(r) * std::sin(alpha) + z * z.dot(r) * (1.0 - std::cos(alpha));
}

inline Eigen::Vector3d random_unit3(std::mt19937_64& rng)
{
    std::normal_distribution<double> normal;
    Eigen::Vector3d v(normal(rng), normal(rng), normal(rng));
    return v.normalized();
}

inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

} // namespace testsupport
