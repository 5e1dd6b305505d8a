#include "nullgeo/sampling.hpp"

#include "nullgeo/metrics.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>

namespace nullgeo::sampling {

namespace {

bool stereographic_chart(const std::string& id)
{
    return id == "round-sphere" || id == "warped-time" || id.rfind("s2s1:c=", 0) == 0;
}

Eigen::Vector3d gaussian3(std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    const double a = n(rng);
    const double b = n(rng);
    const double c = n(rng);
    return {a, b, c};
}

} // namespace

quat::Quaternion unit_quaternion(std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    for (;;) {
        const double w = n(rng);
        const double x = n(rng);
        const double y = n(rng);
        const double z = n(rng);
        const quat::Quaternion q(w, x, y, z);
        if (q.norm2() > 1e-12) {
            return q.normalized();
        }
    }
}

quat::FramePair frame_pair(std::mt19937_64& rng)
{
    for (;;) {
        const Eigen::Vector3d a = gaussian3(rng);
        const Eigen::Vector3d b = gaussian3(rng);
        if (a.norm() < 1e-6) {
            continue;
        }
        const Eigen::Vector3d u = a.normalized();
        const Eigen::Vector3d w = b - b.dot(u) * u;
        if (w.norm() > 1e-6) {
            return {u, w.normalized()};
        }
    }
}

engel::ProlongationPoint prolongation_point(const DiagonalMetric& m, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double theta_draw = 2.0 * std::numbers::pi * unit(rng);
    if (stereographic_chart(m.id())) {
        for (;;) {
            const quat::FramePair f = frame_pair(rng);
            // Height of the great circle through f.u with velocity f.v peaks at |(u3, v3)|.
            if (std::hypot(f.u[2], f.v[2]) > 0.6) {
                continue;
            }
            const Eigen::Vector2d y = metrics::stereographic_project(f.u);
            const Eigen::Vector2d vel = metrics::stereographic_push(f.u, f.v);
            const double x3 = 2.0 * unit(rng) - 1.0;
            // Conformal chart: the null direction angle is the chart velocity angle.
            return {ChartPoint(y[0], y[1], x3), std::atan2(vel[1], vel[0])};
        }
    }
    const Box3& box = m.domain();
    ChartPoint x;
    for (int i = 0; i < 3; ++i) {
        const double mid = 0.5 * (box.lo[i] + box.hi[i]);
        const double half = std::min(1.0, 0.25 * (box.hi[i] - box.lo[i]));
        x[i] = mid + half * (2.0 * unit(rng) - 1.0);
    }
    return {x, theta_draw};
}

Eigen::Matrix3d lorentz_quadric(std::mt19937_64& rng, Eigen::Matrix3d* transform)
{
    std::normal_distribution<double> n(0.0, 1.0);
    for (;;) {
        Eigen::Matrix3d A;
        for (int i = 0; i < 9; ++i) {
            A(i / 3, i % 3) = n(rng);
        }
        const Eigen::Vector3d sv = A.jacobiSvd().singularValues();
        if (!(sv(2) > 0.0) || sv(0) / sv(2) > 10.0) {
            continue;
        }
        const double scale = std::cbrt(std::abs(A.determinant()));
        A /= scale;
        if (transform) {
            *transform = A;
        }
        const Eigen::Vector3d eta(1.0, 1.0, -1.0);
        return A.transpose() * eta.asDiagonal() * A;
    }
}

} // namespace nullgeo::sampling
