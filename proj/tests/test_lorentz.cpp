#include "support.hpp"

#include "nullgeo/cone.hpp"
#include "nullgeo/error.hpp"
#include "nullgeo/geodesic.hpp"
#include "nullgeo/metric.hpp"
#include "nullgeo/metrics.hpp"
#include "nullgeo/sampling.hpp"

#include <doctest.h>

#include <Eigen/LU>

#include <random>
#include <vector>

using namespace nullgeo;
using testsupport::kPi;

namespace {

/// Levi-Civita symbols from the full (non-diagonal) formula, with the metric
/// matrix differentiated by central differences of the components.
ChristoffelTensor christoffel_oracle(const DiagonalMetric& m, const ChartPoint& x, double h = 1e-5)
{
    std::array<Eigen::Matrix3d, 3> dg;
    for (int l = 0; l < 3; ++l) {
        const Eigen::Vector3d e = Eigen::Vector3d::Unit(l);
        const Eigen::Vector3d d = (m.components(x + h * e) - m.components(x - h * e)) / (2.0 * h);
        dg[l] = d.asDiagonal();
    }
    const Eigen::Matrix3d ginv = Eigen::Matrix3d(m.components(x).asDiagonal()).inverse();
    ChristoffelTensor out;
    for (int k = 0; k < 3; ++k) {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                double sum = 0.0;
                for (int l = 0; l < 3; ++l) {
                    sum += ginv(k, l) * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
                }
                out.gamma[k](i, j) = 0.5 * sum;
            }
        }
    }
    return out;
}

double max_diff(const ChristoffelTensor& a, const ChristoffelTensor& b)
{
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
        worst = std::max(worst, (a.gamma[k] - b.gamma[k]).cwiseAbs().maxCoeff());
    }
    return worst;
}

/// Great circle through x with unit velocity u, mapped into the stereographic chart.
struct ChartCircle {
    Eigen::Vector3d x;
    Eigen::Vector3d u;
    double time_rate = 0.0;

    ChartPoint position(double s) const
    {
        const Eigen::Vector3d X = x * std::cos(s) + u * std::sin(s);
        const Eigen::Vector2d y = metrics::stereographic_project(X);
        return {y.x(), y.y(), time_rate * s};
    }
    TangentVector velocity(double s) const
    {
        const Eigen::Vector3d X = x * std::cos(s) + u * std::sin(s);
        const Eigen::Vector3d W = -x * std::sin(s) + u * std::cos(s);
        const Eigen::Vector2d w = metrics::stereographic_push(X, W);
        return {w.x(), w.y(), time_rate};
    }
};

ChartCircle tilted_circle(double tilt, double time_rate)
{
    return {Eigen::Vector3d::UnitX(), Eigen::Vector3d(0.0, std::cos(tilt), std::sin(tilt)), time_rate};
}

double circle_error(const DiagonalMetric& m, const ChartCircle& circle, double s_max, double h)
{
    const GeodesicTrace trace = integrate_geodesic(m, circle.position(0.0), circle.velocity(0.0), s_max, h);
    double worst = 0.0;
    for (const GeodesicSample& sample : trace.samples) {
        worst = std::max(worst, (sample.x - circle.position(sample.s)).norm());
    }
    return worst;
}

} // namespace

TEST_CASE("Minkowski Christoffel symbols vanish")
{
    const DiagonalMetric m = metrics::minkowski3();
    std::mt19937_64 rng(31);
    for (int n = 0; n < 20; ++n) {
        const ChartPoint x(testsupport::uniform(rng, -5, 5), testsupport::uniform(rng, -5, 5),
                           testsupport::uniform(rng, -5, 5));
        CHECK(christoffel(m, x).max_abs() == 0.0);
        const auto [dx, dv] = geodesic_rhs(m, x, Eigen::Vector3d(0.3, -1.0, 2.0));
        CHECK(dx == Eigen::Vector3d(0.3, -1.0, 2.0));
        CHECK(dv.norm() == 0.0);
    }
    CHECK(christoffel(m.without_partials(), ChartPoint(1.0, 2.0, 3.0)).max_abs() < 1e-6);
}

TEST_CASE("Christoffel symbols match the full finite-difference formula")
{
    std::mt19937_64 rng(32);
    for (const DiagonalMetric& m : {metrics::round_sphere_chart(), metrics::warped_time(), metrics::skew_test()}) {
        for (int n = 0; n < 30; ++n) {
            const ChartPoint x(testsupport::uniform(rng, -1.5, 1.5), testsupport::uniform(rng, -1.5, 1.5),
                               testsupport::uniform(rng, -1.5, 1.5));
            const ChristoffelTensor g = christoffel(m, x);
            CHECK(max_diff(g, christoffel_oracle(m, x)) < 1e-6);
            CHECK(max_diff(g, christoffel(m.without_partials(), x)) < 1e-6);
            for (int k = 0; k < 3; ++k) {
                CHECK(g.gamma[k] == g.gamma[k].transpose());
            }
            CHECK((m.partials(x) - m.fd_partials(x)).cwiseAbs().maxCoeff() < 1e-6);
        }
    }
}

TEST_CASE("separable metrics have no mixed time symbols")
{
    std::mt19937_64 rng(33);
    for (const DiagonalMetric& m : {metrics::s2s1_chart(2), metrics::warped_time()}) {
        REQUIRE(m.separable());
        CHECK(m.validate_on_grid());
        for (int n = 0; n < 20; ++n) {
            const ChartPoint x(testsupport::uniform(rng, -2, 2), testsupport::uniform(rng, -2, 2),
                               testsupport::uniform(rng, -2, 2));
            const ChristoffelTensor g = christoffel(m, x);
            for (int k = 0; k < 3; ++k) {
                for (int i = 0; i < 3; ++i) {
                    for (int j = 0; j < 3; ++j) {
                        const bool touches_time = k == 2 || i == 2 || j == 2;
                        const bool all_time = k == 2 && i == 2 && j == 2;
                        if (touches_time && !all_time) {
                            CHECK(g(k, i, j) == 0.0);
                        }
                    }
                }
            }
        }
    }
    CHECK_FALSE(metrics::skew_test().looks_separable());
}

TEST_CASE("domain and signature errors")
{
    const DiagonalMetric sphere = metrics::round_sphere_chart();
    CHECK_THROWS_AS(christoffel(sphere, ChartPoint(30.0, 0.0, 0.0)), DomainError);
    CHECK_THROWS_AS(null_cone_vector(sphere, ChartPoint(0.0, -21.0, 0.0), 0.0), DomainError);

    const DiagonalMetric riemannian("riemannian",
                                    {[](const ChartPoint&) { return 1.0; }, [](const ChartPoint&) { return 1.0; },
                                     [](const ChartPoint&) { return 1.0; }},
                                    Box3::everywhere(), true);
    CHECK_THROWS_AS(christoffel(riemannian, ChartPoint::Zero()), SignatureError);
    CHECK_FALSE(riemannian.validate_on_grid());
}

TEST_CASE("geodesic acceleration along a chart great circle")
{
    const DiagonalMetric m = metrics::round_sphere_chart();
    const ChartCircle circle = tilted_circle(0.5, 0.7);
    const double h = 1e-4;
    for (double s : {0.3, 1.1, 2.0, 4.4}) {
        const Eigen::Vector3d fd_accel =
            (circle.position(s + h) - 2.0 * circle.position(s) + circle.position(s - h)) / (h * h);
        const auto [dx, dv] = geodesic_rhs(m, circle.position(s), circle.velocity(s));
        CHECK((dx - circle.velocity(s)).norm() < 1e-15);
        CHECK((dv - fd_accel).norm() < 1e-6);
    }
    const auto [dx, dv] = geodesic_rhs(m, ChartPoint(0.4, -0.2, 0.0), TangentVector::Zero());
    CHECK(dx.norm() == 0.0);
    CHECK(dv.norm() == 0.0);
}

TEST_CASE("integrate_geodesic")
{
    const DiagonalMetric mink = metrics::minkowski3();
    const GeodesicTrace line = integrate_geodesic(mink, ChartPoint::Zero(), TangentVector(1.0, 0.0, 1.0), 1.0, 0.3);
    REQUIRE(line.samples.size() == 5);
    CHECK(line.back().s == 1.0);
    for (const GeodesicSample& sample : line.samples) {
        CHECK((sample.x - ChartPoint(sample.s, 0.0, sample.s)).norm() < 1e-15);
    }
    const GeodesicTrace backwards =
        integrate_geodesic(mink, ChartPoint::Zero(), TangentVector(1.0, 0.0, 1.0), -1.0, 1e-3);
    CHECK(backwards.back().s == -1.0);
    CHECK((backwards.back().x - ChartPoint(-1.0, 0.0, -1.0)).norm() < 1e-12);

    const GeodesicTrace single = integrate_geodesic(mink, ChartPoint(1.0, 2.0, 3.0), TangentVector(0.0, 1.0, 1.0), 0.0, 1e-3);
    REQUIRE(single.samples.size() == 1);
    CHECK(single.back().x == ChartPoint(1.0, 2.0, 3.0));
    CHECK(single.back().v == TangentVector(0.0, 1.0, 1.0));
    CHECK_FALSE(single.exited);

    CHECK_THROWS_AS(integrate_geodesic(mink, ChartPoint::Zero(), TangentVector::UnitX(), 1.0, 0.0), ArgumentError);
}

TEST_CASE("chart geodesic follows the great circle")
{
    const DiagonalMetric m = metrics::round_sphere_chart();
    const ChartCircle circle = tilted_circle(0.5, 0.0);
    CHECK(circle_error(m, circle, 2.0 * kPi, 1e-3) < 1e-7);

    const GeodesicTrace trace = integrate_geodesic(m, circle.position(0.0), circle.velocity(0.0), 2.0 * kPi, 1e-3);
    CHECK_FALSE(trace.exited);
    CHECK(trace.length_drift(m) < 1e-8);
    CHECK(std::abs(norm_sq(m, trace.back().x, trace.back().v) - 1.0) < 1e-8);
}

TEST_CASE("RK4 endpoint error is fourth order")
{
    const DiagonalMetric m = metrics::round_sphere_chart();
    const ChartCircle circle = tilted_circle(0.4, 0.0);
    auto endpoint_error = [&](double h) {
        const GeodesicTrace trace = integrate_geodesic(m, circle.position(0.0), circle.velocity(0.0), 3.0, h);
        return (trace.back().x - circle.position(3.0)).norm();
    };
    const double coarse = endpoint_error(0.05);
    const double fine = endpoint_error(0.025);
    const double ratio = coarse / fine;
    MESSAGE("RK4 halving ratio " << ratio);
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("null and constant-length preservation")
{
    std::mt19937_64 rng(34);
    for (const DiagonalMetric& m : {metrics::s2s1_chart(2), metrics::warped_time(), metrics::skew_test()}) {
        for (int n = 0; n < 5; ++n) {
            const engel::ProlongationPoint p = sampling::prolongation_point(m, rng);
            const TangentVector v = null_cone_vector(m, p.x, p.theta);
            CHECK(std::abs(norm_sq(m, p.x, v)) < 1e-12);
            const double s_max = m.id() == "skew-test" ? 0.5 : 2.0 * kPi;
            const GeodesicTrace trace = integrate_geodesic(m, p.x, v, s_max, 1e-3);
            CHECK_FALSE(trace.exited);
            CHECK(trace.max_abs_norm_sq(m) < 1e-8);

            const TangentVector w = v + TangentVector(0.1, -0.2, 0.05);
            CHECK(integrate_geodesic(m, p.x, w, s_max, 1e-3).length_drift(m) < 1e-8);
        }
    }
}

TEST_CASE("chart exit truncates the trace")
{
    const DiagonalMetric m = metrics::round_sphere_chart();
    const ChartCircle polar{Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitZ(), 0.0};
    const GeodesicTrace trace = integrate_geodesic(m, polar.position(0.0), polar.velocity(0.0), 2.0 * kPi, 1e-3);
    CHECK(trace.exited);
    CHECK(trace.back().s < kPi / 2);
    CHECK(m.domain().contains(trace.back().x));
}

TEST_CASE("null_cone_vector and norm_sq")
{
    const DiagonalMetric mink = metrics::minkowski3();
    CHECK((null_cone_vector(mink, ChartPoint::Zero(), 0.0) - TangentVector(1.0, 0.0, 1.0)).norm() == 0.0);
    CHECK((null_cone_vector(mink, ChartPoint::Zero(), kPi / 2) - TangentVector(0.0, 1.0, 1.0)).norm() < 1e-16);
    for (int c = 1; c <= 4; ++c) {
        const DiagonalMetric gc = metrics::s2s1_chart(c);
        const TangentVector v = null_cone_vector(gc, ChartPoint::Zero(), 0.0);
        CHECK((v - TangentVector(0.5, 0.0, c)).norm() < 1e-15);
        CHECK(std::abs(norm_sq(gc, ChartPoint::Zero(), v)) < 1e-12);
    }
    CHECK(norm_sq(mink, ChartPoint::Zero(), TangentVector(1.0, 0.0, 1.0)) == 0.0);
    CHECK(norm_sq(mink, ChartPoint::Zero(), TangentVector(0.0, 0.0, 1.0)) == -1.0);
    CHECK(norm_sq(metrics::skew_test(), ChartPoint(0.3, 0.1, 0.2), TangentVector::Zero()) == 0.0);
}

TEST_CASE("spray is homogeneous of degree two")
{
    std::mt19937_64 rng(35);
    for (int n = 0; n < 20; ++n) {
        const ChartPoint x(testsupport::uniform(rng, -1, 1), testsupport::uniform(rng, -1, 1),
                           testsupport::uniform(rng, -1, 1));
        const TangentVector v(testsupport::uniform(rng, -1, 1), testsupport::uniform(rng, -1, 1),
                              testsupport::uniform(rng, -1, 1));
        CHECK(spray_euler_bracket(metrics::minkowski3(), x, v, 1e-5) < 1e-10);
        CHECK(spray_euler_bracket(metrics::round_sphere_chart(), x, v, 1e-5) < 1e-4);
        CHECK(spray_euler_bracket(metrics::skew_test(), x, v, 1e-5) < 1e-4);
        CHECK(spray_euler_bracket(metrics::round_sphere_chart(), x, TangentVector::Zero(), 1e-5) == 0.0);
    }
}

TEST_CASE("metric_from_cone")
{
    std::vector<TangentVector> minkowski;
    for (int n = 0; n < 8; ++n) {
        const double t = 2.0 * kPi * n / 8.0;
        minkowski.emplace_back(std::cos(t), std::sin(t), 1.0);
    }
    const ConeQuadric standard = metric_from_cone(minkowski);
    CHECK((standard.G - Eigen::Vector3d(1.0, 1.0, -1.0).asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() < 1e-12);

    std::mt19937_64 rng(36);
    for (int n = 0; n < 100; ++n) {
        Eigen::Matrix3d A;
        const Eigen::Matrix3d G0 = sampling::lorentz_quadric(rng, &A);
        REQUIRE(std::abs(std::abs(G0.determinant()) - 1.0) < 1e-10);
        const Eigen::Matrix3d Ainv = A.inverse();
        std::vector<TangentVector> samples;
        for (int k = 0; k < 8; ++k) {
            const double t = testsupport::uniform(rng, 0.0, 2.0 * kPi);
            samples.push_back(Ainv * Eigen::Vector3d(std::cos(t), std::sin(t), 1.0));
        }
        const ConeQuadric recovered = metric_from_cone(samples);
        CHECK((recovered.G - G0).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(signature(recovered.G) == std::pair{2, 1});
        for (const TangentVector& v : samples) {
            CHECK(std::abs(recovered.quadratic(v)) < 1e-9 * v.squaredNorm());
        }
    }
}

TEST_CASE("metric_from_cone rejects degenerate input")
{
    std::vector<TangentVector> four;
    for (int n = 0; n < 4; ++n) {
        four.emplace_back(std::cos(n * 1.3), std::sin(n * 1.3), 1.0);
    }
    CHECK_THROWS_AS(metric_from_cone(four), DegenerateConeError);

    // Two planes x = y and x = -y: the only quadric through them is x^2 - y^2.
    std::vector<TangentVector> planes;
    for (int n = 0; n < 4; ++n) {
        planes.emplace_back(1.0, 1.0, 0.5 * n - 0.7);
        planes.emplace_back(1.0, -1.0, 0.3 * n + 0.2);
    }
    CHECK_THROWS_AS(metric_from_cone(planes), DegenerateConeError);

    std::mt19937_64 rng(37);
    std::vector<TangentVector> scattered;
    for (int n = 0; n < 8; ++n) {
        scattered.push_back(testsupport::random_unit3(rng));
    }
    CHECK_THROWS_AS(metric_from_cone(scattered), DegenerateConeError);
}
