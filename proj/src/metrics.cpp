#include "nullgeo/metrics.hpp"

#include "nullgeo/error.hpp"

#include <cmath>
#include <string>

namespace nullgeo::metrics {

namespace {

double conformal(const ChartPoint& x)
{
    const double d = 1.0 + x[0] * x[0] + x[1] * x[1];
    return 4.0 / (d * d);
}

// d/dx_j of 4/(1+r^2)^2 = -16 x_j / (1+r^2)^3
Eigen::Vector3d conformal_gradient(const ChartPoint& x)
{
    const double d = 1.0 + x[0] * x[0] + x[1] * x[1];
    const double f = -16.0 / (d * d * d);
    return {f * x[0], f * x[1], 0.0};
}

} // namespace

DiagonalMetric minkowski3()
{
    return DiagonalMetric(
        "minkowski3",
        {[](const ChartPoint&) { return 1.0; }, [](const ChartPoint&) { return 1.0; },
         [](const ChartPoint&) { return -1.0; }},
        Box3::everywhere(), true, [](const ChartPoint&) { return Eigen::Matrix3d::Zero().eval(); });
}

DiagonalMetric stereographic_product(double g33, std::string id)
{
    if (!(g33 < 0.0)) {
        throw SignatureError("stereographic_product: g33 must be negative");
    }
    Box3 box{Eigen::Vector3d(-20.0, -20.0, -1e6), Eigen::Vector3d(20.0, 20.0, 1e6)};
    return DiagonalMetric(
        std::move(id),
        {conformal, conformal, [g33](const ChartPoint&) { return g33; }}, box, true,
        [](const ChartPoint& x) {
            Eigen::Matrix3d p = Eigen::Matrix3d::Zero();
            const Eigen::Vector3d grad = conformal_gradient(x);
            p.row(0) = grad.transpose();
            p.row(1) = grad.transpose();
            return p;
        });
}

DiagonalMetric round_sphere_chart() { return stereographic_product(-1.0, "round-sphere"); }

DiagonalMetric s2s1_chart(int c)
{
    if (c < 1) {
        throw InvalidOrderError("s2s1_chart: c must be >= 1");
    }
    return stereographic_product(-1.0 / (static_cast<double>(c) * c), "s2s1:c=" + std::to_string(c));
}

DiagonalMetric warped_time()
{
    Box3 box{Eigen::Vector3d(-20.0, -20.0, -1e3), Eigen::Vector3d(20.0, 20.0, 1e3)};
    return DiagonalMetric(
        "warped-time",
        {conformal, conformal, [](const ChartPoint& x) { return -(1.0 + 0.25 * x[2] * x[2]); }}, box, true,
        [](const ChartPoint& x) {
            Eigen::Matrix3d p = Eigen::Matrix3d::Zero();
            const Eigen::Vector3d grad = conformal_gradient(x);
            p.row(0) = grad.transpose();
            p.row(1) = grad.transpose();
            p(2, 2) = -0.5 * x[2];
            return p;
        });
}

DiagonalMetric skew_test()
{
    Box3 box{Eigen::Vector3d::Constant(-2.0), Eigen::Vector3d::Constant(2.0)};
    return DiagonalMetric(
        "skew-test",
        {[](const ChartPoint& x) { return 1.0 + 0.2 * std::sin(x[1] + x[2]); },
         [](const ChartPoint& x) { return 1.0 + 0.1 * std::cos(x[0]) + 0.05 * x[2] * x[2]; },
         [](const ChartPoint& x) { return -(1.0 + 0.1 * x[0] * x[0] + 0.1 * std::sin(x[1])); }},
        box, false, [](const ChartPoint& x) {
            Eigen::Matrix3d p = Eigen::Matrix3d::Zero();
            p(0, 1) = 0.2 * std::cos(x[1] + x[2]);
            p(0, 2) = 0.2 * std::cos(x[1] + x[2]);
            p(1, 0) = -0.1 * std::sin(x[0]);
            p(1, 2) = 0.1 * x[2];
            p(2, 0) = -0.2 * x[0];
            p(2, 1) = -0.1 * std::cos(x[1]);
            return p;
        });
}

Eigen::Vector2d stereographic_project(const Eigen::Vector3d& X)
{
    return {X[0] / (1.0 - X[2]), X[1] / (1.0 - X[2])};
}

Eigen::Vector3d stereographic_lift(const Eigen::Vector2d& y)
{
    const double r2 = y.squaredNorm();
    return Eigen::Vector3d(2.0 * y[0], 2.0 * y[1], r2 - 1.0) / (1.0 + r2);
}

Eigen::Vector2d stereographic_push(const Eigen::Vector3d& X, const Eigen::Vector3d& w)
{
    const double d = 1.0 - X[2];
    return {w[0] / d + X[0] * w[2] / (d * d), w[1] / d + X[1] * w[2] / (d * d)};
}

} // namespace nullgeo::metrics
