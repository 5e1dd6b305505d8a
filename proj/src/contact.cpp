#include "nullgeo/contact.hpp"

#include "nullgeo/error.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <limits>

namespace nullgeo::contact {

bool BoxN::contains(const Point& x, double margin) const
{
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x[i] < lo[i] + margin || x[i] > hi[i] - margin) {
            return false;
        }
    }
    return true;
}

namespace {

void require_margin(const std::optional<BoxN>& domain, const Point& x, double h, const char* who)
{
    if (domain && !domain->contains(x, h)) {
        throw MarginError(std::string(who) + ": point within one step of the domain boundary");
    }
}

Eigen::VectorXd jacobian_apply(const VectorField& F, const Point& x, const Eigen::VectorXd& dir, double h)
{
    return (F(x + h * dir) - F(x - h * dir)) / (2.0 * h);
}

} // namespace

Eigen::MatrixXd exterior_d(const OneFormField& alpha, const Point& x, double h)
{
    require_margin(alpha.domain, x, h, "exterior_d");
    const int n = alpha.dim;
    // J(j, i) = d_i alpha_j
    Eigen::MatrixXd J(n, n);
    for (int i = 0; i < n; ++i) {
        J.col(i) = jacobian_apply(alpha.alpha, x, Eigen::VectorXd::Unit(n, i), h);
    }
    Eigen::MatrixXd d(n, n);
    for (int i = 0; i < n; ++i) {
        d(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j) {
            d(i, j) = J(j, i) - J(i, j);
            d(j, i) = -d(i, j);
        }
    }
    return d;
}

double contact_coefficient(const OneFormField& alpha, const Point& x, double h)
{
    if (alpha.dim != 3) {
        throw ArgumentError("contact_coefficient: one-form must be three-dimensional");
    }
    const Eigen::MatrixXd d = exterior_d(alpha, x, h);
    const Eigen::VectorXd a = alpha.alpha(x);
    return a[0] * d(1, 2) + a[1] * d(2, 0) + a[2] * d(0, 1);
}

WedgeReport contact_condition_3d(const OneFormField& alpha, std::span<const Point> samples, double h)
{
    if (alpha.dim != 3) {
        throw ArgumentError("contact_condition_3d: one-form must be three-dimensional");
    }
    if (samples.empty()) {
        throw ArgumentError("contact_condition_3d: empty sample list");
    }
    WedgeReport report;
    report.min_abs = std::numeric_limits<double>::infinity();
    report.coefficients.reserve(samples.size());
    for (const Point& x : samples) {
        const double c = contact_coefficient(alpha, x, h);
        report.coefficients.push_back(c);
        if (std::abs(c) < report.min_abs) {
            report.min_abs = std::abs(c);
            report.argmin = x;
        }
    }
    report.n_samples = static_cast<int>(samples.size());
    return report;
}

Eigen::VectorXd lie_bracket_numeric(const VectorField& X, const VectorField& Y, const Point& x, double h,
                                    const std::optional<BoxN>& domain)
{
    require_margin(domain, x, h, "lie_bracket_numeric");
    return jacobian_apply(Y, x, X(x), h) - jacobian_apply(X, x, Y(x), h);
}

double frobenius_check(const DistributionFrame& D, std::span<const Point> samples, double h)
{
    if (D.rank >= D.dim || D.rank < 1) {
        throw ArgumentError("frobenius_check: rank must lie in [1, dim)");
    }
    double worst = 0.0;
    for (const Point& x : samples) {
        const Eigen::MatrixXd F = D.frame(x);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(F);
        if (svd.singularValues()(D.rank - 1) <= 1e-8) {
            throw RankError("frobenius_check: frame vectors are not independent");
        }
        const Eigen::HouseholderQR<Eigen::MatrixXd> qr(F);
        const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(D.dim, D.rank);
        for (int i = 0; i < D.rank; ++i) {
            for (int j = i + 1; j < D.rank; ++j) {
                const VectorField Xi = [&D, i](const Point& p) { return Eigen::VectorXd(D.frame(p).col(i)); };
                const VectorField Xj = [&D, j](const Point& p) { return Eigen::VectorXd(D.frame(p).col(j)); };
                const Eigen::VectorXd b = lie_bracket_numeric(Xi, Xj, x, h);
                const Eigen::VectorXd off = b - Q * (Q.transpose() * b);
                worst = std::max(worst, off.norm());
            }
        }
    }
    return worst;
}

OneFormField standard_contact_form()
{
    return {3, [](const Point& p) { return Eigen::Vector3d(0.0, p[0], 1.0).eval(); }, std::nullopt};
}

OneFormField unit_cotangent_form(const DiagonalMetric& m)
{
    return {3,
            [m](const Point& p) {
                const Eigen::Vector3d g = m.components(ChartPoint(p[0], p[1], 0.0));
                return Eigen::Vector3d(std::cos(p[2]) * std::sqrt(g[0]), std::sin(p[2]) * std::sqrt(g[1]), 0.0)
                    .eval();
            },
            std::nullopt};
}

double unit_cotangent_coefficient(const DiagonalMetric& m, const Point& x)
{
    const Eigen::Vector3d g = m.components(ChartPoint(x[0], x[1], 0.0));
    return -std::sqrt(g[0] * g[1]);
}

std::vector<Point> cube_grid(double lo, double hi, int n)
{
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(n) * n * n);
    const double step = (hi - lo) / n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                out.push_back(Eigen::Vector3d(lo + (i + 0.5) * step, lo + (j + 0.5) * step, lo + (k + 0.5) * step));
            }
        }
    }
    return out;
}

} // namespace nullgeo::contact
