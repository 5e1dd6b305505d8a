#include "nullgeo/metric.hpp"

#include "nullgeo/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nullgeo {

namespace {

constexpr double kSeparableTol = 1e-8;

std::string describe(const ChartPoint& x)
{
    std::ostringstream os;
    os.precision(17);
    os << "(" << x[0] << ", " << x[1] << ", " << x[2] << ")";
    return os.str();
}

} // namespace

bool Box3::contains(const ChartPoint& x) const
{
    return (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
}

Box3 Box3::everywhere(double half_width)
{
    return {Eigen::Vector3d::Constant(-half_width), Eigen::Vector3d::Constant(half_width)};
}

DiagonalMetric::DiagonalMetric(std::string id, std::array<Component, 3> components, Box3 domain, bool separable,
                               std::optional<Partials> partials)
    : id_(std::move(id)), g_(std::move(components)), domain_(domain), separable_(separable),
      partials_(std::move(partials))
{
    for (const auto& c : g_) {
        if (!c) {
            throw ArgumentError("DiagonalMetric: empty component callable");
        }
    }
}

Eigen::Vector3d DiagonalMetric::raw(const ChartPoint& x) const { return {g_[0](x), g_[1](x), g_[2](x)}; }

Eigen::Vector3d DiagonalMetric::components(const ChartPoint& x) const
{
    if (!x.allFinite() || !domain_.contains(x)) {
        throw DomainError("metric " + id_ + ": point " + describe(x) + " outside chart domain");
    }
    const Eigen::Vector3d g = raw(x);
    if (!(g[0] > 0.0 && g[1] > 0.0 && g[2] < 0.0)) {
        throw SignatureError("metric " + id_ + ": components at " + describe(x) + " are not of sign (+,+,-)");
    }
    return g;
}

Eigen::Matrix3d DiagonalMetric::fd_partials(const ChartPoint& x, double h) const
{
    Eigen::Matrix3d p;
    for (int j = 0; j < 3; ++j) {
        ChartPoint xp = x;
        ChartPoint xm = x;
        xp[j] += h;
        xm[j] -= h;
        p.col(j) = (raw(xp) - raw(xm)) / (2.0 * h);
    }
    return p;
}

Eigen::Matrix3d DiagonalMetric::partials(const ChartPoint& x) const
{
    if (partials_) {
        return (*partials_)(x);
    }
    return fd_partials(x);
}

DiagonalMetric DiagonalMetric::without_partials() const
{
    return DiagonalMetric(id_, g_, domain_, separable_, std::nullopt);
}

bool DiagonalMetric::looks_separable(int n) const
{
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                const Eigen::Vector3d t((a + 0.5) / n, (b + 0.5) / n, (c + 0.5) / n);
                const ChartPoint x = domain_.lo + t.cwiseProduct(domain_.hi - domain_.lo);
                const Eigen::Matrix3d p = partials(x);
                if (std::abs(p(0, 2)) > kSeparableTol || std::abs(p(1, 2)) > kSeparableTol ||
                    std::abs(p(2, 0)) > kSeparableTol || std::abs(p(2, 1)) > kSeparableTol) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool DiagonalMetric::validate_on_grid(int n) const
{
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                const Eigen::Vector3d t((a + 0.5) / n, (b + 0.5) / n, (c + 0.5) / n);
                const ChartPoint x = domain_.lo + t.cwiseProduct(domain_.hi - domain_.lo);
                const Eigen::Vector3d g = raw(x);
                if (!(g[0] > 0.0 && g[1] > 0.0 && g[2] < 0.0)) {
                    return false;
                }
            }
        }
    }
    return !separable_ || looks_separable(n);
}

Eigen::Vector3d ChristoffelTensor::contract(const TangentVector& v) const
{
    return {v.dot(gamma[0] * v), v.dot(gamma[1] * v), v.dot(gamma[2] * v)};
}

double ChristoffelTensor::max_abs() const
{
    return std::max({gamma[0].cwiseAbs().maxCoeff(), gamma[1].cwiseAbs().maxCoeff(), gamma[2].cwiseAbs().maxCoeff()});
}

ChristoffelTensor christoffel(const DiagonalMetric& m, const ChartPoint& x)
{
    const Eigen::Vector3d g = m.components(x);
    const Eigen::Matrix3d p = m.partials(x); // p(i, j) = d g_ii / d x_j

    ChristoffelTensor t;
    for (int k = 0; k < 3; ++k) {
        const double inv = 0.5 / g[k];
        for (int i = 0; i < 3; ++i) {
            for (int j = i; j < 3; ++j) {
                double sum = 0.0;
                if (j == k) {
                    sum += p(k, i);
                }
                if (i == k) {
                    sum += p(k, j);
                }
                if (i == j) {
                    sum -= p(i, k);
                }
                t.gamma[k](i, j) = inv * sum;
                t.gamma[k](j, i) = t.gamma[k](i, j);
            }
        }
    }
    return t;
}

double norm_sq(const DiagonalMetric& m, const ChartPoint& x, const TangentVector& v)
{
    const Eigen::Vector3d g = m.components(x);
    return g[0] * v[0] * v[0] + g[1] * v[1] * v[1] + g[2] * v[2] * v[2];
}

TangentVector null_cone_vector(const DiagonalMetric& m, const ChartPoint& x, double theta)
{
    const Eigen::Vector3d g = m.components(x);
    return {std::cos(theta) / std::sqrt(g[0]), std::sin(theta) / std::sqrt(g[1]), 1.0 / std::sqrt(-g[2])};
}

} // namespace nullgeo
