#pragma once

#include <Eigen/Core>

#include <array>
#include <functional>
#include <optional>
#include <string>

namespace nullgeo {

using ChartPoint = Eigen::Vector3d;
using TangentVector = Eigen::Vector3d;

/// Axis-aligned box in R^3.
struct Box3 {
    Eigen::Vector3d lo;
    Eigen::Vector3d hi;

    bool contains(const ChartPoint& x) const;
    static Box3 everywhere(double half_width = 1e6);
};

/// Default central-difference step for metric partials.
inline constexpr double kMetricFdStep = 1e-5;

/// Diagonal Lorentzian metric diag(g11, g22, g33) on a chart box, g11, g22 > 0 > g33.
///
/// Components are plain callables over chart coordinates and must be
/// reentrant. Partials, when supplied, return the matrix P with
/// P(i, j) = d g_ii / d x_j; otherwise central differences with step
/// kMetricFdStep are used.
class DiagonalMetric {
public:
    using Component = std::function<double(const ChartPoint&)>;
    using Partials = std::function<Eigen::Matrix3d(const ChartPoint&)>;

    DiagonalMetric(std::string id, std::array<Component, 3> components, Box3 domain, bool separable,
                   std::optional<Partials> partials = std::nullopt);

    const std::string& id() const { return id_; }
    const Box3& domain() const { return domain_; }
    bool separable() const { return separable_; }
    bool has_analytic_partials() const { return partials_.has_value(); }

    /// (g11, g22, g33) at x. Throws DomainError outside the box and
    /// SignatureError if the sign pattern fails.
    Eigen::Vector3d components(const ChartPoint& x) const;

    /// d g_ii / d x_j at x, analytic when available.
    Eigen::Matrix3d partials(const ChartPoint& x) const;
    /// Central-difference partials regardless of analytic availability.
    Eigen::Matrix3d fd_partials(const ChartPoint& x, double h = kMetricFdStep) const;

    /// Same metric with the analytic partials dropped.
    DiagonalMetric without_partials() const;

    /// Spot-checks the sign pattern and, for separable metrics, the vanishing
    /// of dg11/dx3, dg22/dx3, dg33/dx1, dg33/dx2 (within 1e-8) on an
    /// n^3 grid of the domain. Returns false on the first violation.
    bool validate_on_grid(int n = 5) const;

    /// Numerical separability test on an n^3 grid (same tolerances).
    bool looks_separable(int n = 5) const;

private:
    Eigen::Vector3d raw(const ChartPoint& x) const;

    std::string id_;
    std::array<Component, 3> g_;
    Box3 domain_;
    bool separable_;
    std::optional<Partials> partials_;
};

/// Gamma^k_ij stored as gamma[k](i, j), 0-based indices.
struct ChristoffelTensor {
    std::array<Eigen::Matrix3d, 3> gamma;

    double operator()(int k, int i, int j) const { return gamma[k](i, j); }
    /// Gamma(v, v)^k = sum_ij v_i v_j Gamma^k_ij
    Eigen::Vector3d contract(const TangentVector& v) const;
    double max_abs() const;
};

/// Levi-Civita symbols of a diagonal metric.
ChristoffelTensor christoffel(const DiagonalMetric& m, const ChartPoint& x);

/// g11 v1^2 + g22 v2^2 + g33 v3^2
double norm_sq(const DiagonalMetric& m, const ChartPoint& x, const TangentVector& v);

/// Future null direction (cos t / sqrt g11, sin t / sqrt g22, 1 / sqrt(-g33)).
TangentVector null_cone_vector(const DiagonalMetric& m, const ChartPoint& x, double theta);

} // namespace nullgeo
