#include "support.hpp"

#include "nullgeo/contact.hpp"
#include "nullgeo/error.hpp"
#include "nullgeo/metrics.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace nullgeo;
using namespace nullgeo::contact;
using testsupport::kPi;

namespace {

OneFormField constant_form(const Eigen::Vector3d& a)
{
    return {3, [a](const Point&) { return Eigen::VectorXd(a); }, std::nullopt};
}

VectorField linear_field(const Eigen::MatrixXd& A)
{
    return [A](const Point& p) { return Eigen::VectorXd(A * p); };
}

DistributionFrame standard_kernel_frame()
{
    return {3, 2, [](const Point& p) {
                Eigen::MatrixXd F(3, 2);
                F.col(0) = Eigen::Vector3d(1.0, 0.0, 0.0);
                F.col(1) = Eigen::Vector3d(0.0, 1.0, -p[0]);
                return F;
            }};
}

} // namespace

TEST_CASE("exterior derivative examples")
{
    const OneFormField standard = standard_contact_form();
    std::mt19937_64 rng(41);
    for (int n = 0; n < 20; ++n) {
        const Point x = Eigen::Vector3d(testsupport::uniform(rng, -2, 2), testsupport::uniform(rng, -2, 2),
                                        testsupport::uniform(rng, -2, 2));
        const Eigen::MatrixXd d = exterior_d(standard, x);
        Eigen::Matrix3d expected = Eigen::Matrix3d::Zero();
        expected(0, 1) = 1.0;
        expected(1, 0) = -1.0;
        CHECK((d - expected).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(d == -d.transpose());

        CHECK(exterior_d(constant_form(Eigen::Vector3d(0.3, -2.0, 5.0)), x).cwiseAbs().maxCoeff() == 0.0);

        const OneFormField exact{3, [](const Point& p) { return Eigen::Vector3d(p[0], 0.0, 0.0).eval(); }, std::nullopt};
        CHECK(exterior_d(exact, x).cwiseAbs().maxCoeff() < 1e-10);

        // d of the exact form d(x y z) vanishes up to the difference error.
        const OneFormField gradient{3,
                                    [](const Point& p) {
                                        return Eigen::Vector3d(p[1] * p[2], p[0] * p[2], p[0] * p[1]).eval();
                                    },
                                    std::nullopt};
        CHECK(exterior_d(gradient, x).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("exterior derivative respects the domain margin")
{
    BoxN box{Eigen::Vector3d::Constant(-1.0), Eigen::Vector3d::Constant(1.0)};
    OneFormField alpha = standard_contact_form();
    alpha.domain = box;
    CHECK_NOTHROW(exterior_d(alpha, Eigen::Vector3d(0.9, 0.0, 0.0)));
    CHECK_THROWS_AS(exterior_d(alpha, Eigen::Vector3d(1.0 - 1e-6, 0.0, 0.0)), MarginError);
    CHECK_THROWS_AS(exterior_d(alpha, Eigen::Vector3d(0.0, 0.0, -2.0)), MarginError);
}

TEST_CASE("contact condition")
{
    const std::vector<Point> grid = cube_grid(-1.0, 1.0, 6);
    const WedgeReport standard = contact_condition_3d(standard_contact_form(), grid);
    CHECK(standard.n_samples == 216);
    CHECK(std::abs(standard.min_abs - 1.0) < 1e-6);
    for (double c : standard.coefficients) {
        CHECK(std::abs(c - 1.0) < 1e-6);
    }

    const WedgeReport integrable = contact_condition_3d(constant_form(Eigen::Vector3d::UnitZ()), grid);
    CHECK(integrable.min_abs < 1e-10);

    const OneFormField base = standard_contact_form();
    const OneFormField doubled{3, [base](const Point& p) { return Eigen::VectorXd(2.0 * base.alpha(p)); }, std::nullopt};
    for (const Point& x : grid) {
        CHECK(std::abs(contact_coefficient(doubled, x) - 4.0 * contact_coefficient(base, x)) < 1e-6);
    }

    CHECK_THROWS_AS(contact_condition_3d(base, std::span<const Point>{}), ArgumentError);
    const OneFormField four{4, [](const Point&) { return Eigen::VectorXd::Zero(4).eval(); }, std::nullopt};
    CHECK_THROWS_AS(contact_condition_3d(four, grid), ArgumentError);
}

TEST_CASE("unit cotangent form in the isothermal chart")
{
    const DiagonalMetric m = metrics::round_sphere_chart();
    const OneFormField alpha = unit_cotangent_form(m);
    std::mt19937_64 rng(42);
    for (int n = 0; n < 300; ++n) {
        const Point x = Eigen::Vector3d(testsupport::uniform(rng, -1.5, 1.5), testsupport::uniform(rng, -1.5, 1.5),
                                        testsupport::uniform(rng, 0.0, 2.0 * kPi));
        const double r2 = x[0] * x[0] + x[1] * x[1];
        const double analytic = -4.0 / ((1.0 + r2) * (1.0 + r2));
        CHECK(std::abs(contact_coefficient(alpha, x) - analytic) < 1e-6);
        CHECK(std::abs(unit_cotangent_coefficient(m, x) - analytic) < 1e-14);
    }
}

TEST_CASE("Lie bracket examples")
{
    const VectorField dx = [](const Point&) { return Eigen::Vector3d::UnitX().eval(); };
    const VectorField dy = [](const Point&) { return Eigen::Vector3d::UnitY().eval(); };
    const VectorField x_dy = [](const Point& p) { return Eigen::Vector3d(0.0, p[0], 0.0).eval(); };
    const VectorField rotation = [](const Point& p) { return Eigen::Vector3d(-p[1], p[0], 0.0).eval(); };

    const Point x = Eigen::Vector3d(0.4, -1.1, 2.0);
    CHECK(lie_bracket_numeric(dx, dy, x).norm() == 0.0);
    CHECK((lie_bracket_numeric(dx, x_dy, x) - Eigen::VectorXd(Eigen::Vector3d::UnitY())).norm() < 1e-10);
    CHECK((lie_bracket_numeric(rotation, dx, x) + Eigen::VectorXd(Eigen::Vector3d::UnitY())).norm() < 1e-10);

    // [A p, B p] = (B A - A B) p for linear fields.
    std::mt19937_64 rng(43);
    std::normal_distribution<double> normal;
    for (int n = 0; n < 20; ++n) {
        Eigen::MatrixXd A(3, 3);
        Eigen::MatrixXd B(3, 3);
        for (int i = 0; i < 9; ++i) {
            A(i / 3, i % 3) = normal(rng);
            B(i / 3, i % 3) = normal(rng);
        }
        const Point p = Eigen::Vector3d(normal(rng), normal(rng), normal(rng));
        const Eigen::VectorXd analytic = (B * A - A * B) * p;
        CHECK((lie_bracket_numeric(linear_field(A), linear_field(B), p) - analytic).norm() < 1e-10);
    }

    const BoxN box{Eigen::Vector3d::Constant(-1.0), Eigen::Vector3d::Constant(1.0)};
    CHECK_THROWS_AS(lie_bracket_numeric(dx, dy, Eigen::Vector3d(0.0, 1.0, 0.0), 1e-5, box), MarginError);
}

TEST_CASE("Frobenius check")
{
    const std::vector<Point> grid = cube_grid(-1.0, 1.0, 5);
    const DistributionFrame coordinate{3, 2, [](const Point&) {
                                           Eigen::MatrixXd F = Eigen::MatrixXd::Zero(3, 2);
                                           F(0, 0) = 1.0;
                                           F(1, 1) = 1.0;
                                           return F;
                                       }};
    CHECK(frobenius_check(coordinate, grid) < 1e-10);

    // Involutive but non-constant frame: tangent planes of the spheres r = const.
    const DistributionFrame spheres{3, 2, [](const Point& p) {
                                        const Eigen::Vector3d n = Eigen::Vector3d(p[0], p[1], p[2]).normalized();
                                        const Eigen::Vector3d a = n.cross(Eigen::Vector3d(0.3, 0.5, 0.8)).normalized();
                                        Eigen::MatrixXd F(3, 2);
                                        F.col(0) = a;
                                        F.col(1) = n.cross(a);
                                        return F;
                                    }};
    const std::vector<Point> shell = cube_grid(0.5, 1.5, 4);
    CHECK(frobenius_check(spheres, shell) < 1e-6);

    const DistributionFrame kernel = standard_kernel_frame();
    for (const Point& x : grid) {
        const double residual = frobenius_check(kernel, std::span<const Point>(&x, 1));
        CHECK(residual >= 0.5);
        CHECK(std::abs(residual - 1.0 / std::sqrt(1.0 + x[0] * x[0])) < 1e-6);
    }

    const DistributionFrame line{3, 1, [](const Point& p) {
                                     Eigen::MatrixXd F(3, 1);
                                     F.col(0) = Eigen::Vector3d(1.0, p[0], p[1] * p[2]);
                                     return F;
                                 }};
    CHECK(frobenius_check(line, grid) < 1e-10);

    const DistributionFrame full{3, 3, [](const Point&) { return Eigen::MatrixXd::Identity(3, 3).eval(); }};
    CHECK_THROWS_AS(frobenius_check(full, grid), ArgumentError);

    const DistributionFrame degenerate{3, 2, [](const Point&) {
                                           Eigen::MatrixXd F(3, 2);
                                           F.col(0) = Eigen::Vector3d(1.0, 2.0, 3.0);
                                           F.col(1) = Eigen::Vector3d(2.0, 4.0, 6.0);
                                           return F;
                                       }};
    CHECK_THROWS_AS(frobenius_check(degenerate, grid), RankError);
}
