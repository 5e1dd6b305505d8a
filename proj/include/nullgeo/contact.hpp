#pragma once

#include "nullgeo/metric.hpp"

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <span>

namespace nullgeo::contact {

using Point = Eigen::VectorXd;
using VectorField = std::function<Eigen::VectorXd(const Point&)>;

/// Axis-aligned box in R^n.
struct BoxN {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;

    /// True when every coordinate is at least `margin` inside the box.
    bool contains(const Point& x, double margin = 0.0) const;
};

/// Covector field alpha on an open subset of R^dim.
struct OneFormField {
    int dim = 3;
    VectorField alpha;
    std::optional<BoxN> domain;
};

/// Rank-k distribution given by a frame; columns of frame(p) span it.
struct DistributionFrame {
    int dim = 3;
    int rank = 2;
    std::function<Eigen::MatrixXd(const Point&)> frame;
};

struct WedgeReport {
    double min_abs = 0.0;
    Point argmin;
    int n_samples = 0;
    /// Signed coefficient of alpha ^ d alpha at every sample, in input order.
    std::vector<double> coefficients;
};

inline constexpr double kDefaultStep = 1e-5;

/// (d alpha)_ij = d_i alpha_j - d_j alpha_i by central differences.
/// Throws MarginError when x is closer than h to the boundary of the domain.
Eigen::MatrixXd exterior_d(const OneFormField& alpha, const Point& x, double h = kDefaultStep);

/// Coefficient of alpha ^ d alpha against dx1 ^ dx2 ^ dx3:
/// alpha_1 D_23 + alpha_2 D_31 + alpha_3 D_12.
double contact_coefficient(const OneFormField& alpha, const Point& x, double h = kDefaultStep);

/// Smallest |alpha ^ d alpha| over the samples. Requires dim == 3 and a
/// nonempty sample list (ArgumentError otherwise).
WedgeReport contact_condition_3d(const OneFormField& alpha, std::span<const Point> samples,
                                 double h = kDefaultStep);

/// [X, Y](x) = (DY) X - (DX) Y with central-difference Jacobians.
Eigen::VectorXd lie_bracket_numeric(const VectorField& X, const VectorField& Y, const Point& x,
                                    double h = kDefaultStep, const std::optional<BoxN>& domain = std::nullopt);

/// Largest component of a pairwise frame bracket orthogonal to the frame span.
/// Throws ArgumentError if rank >= dim and RankError on a degenerate frame.
double frobenius_check(const DistributionFrame& D, std::span<const Point> samples, double h = kDefaultStep);

/// dz + x dy on R^3 in coordinates (x, y, z).
OneFormField standard_contact_form();

/// cos(t) sqrt(g11) dx1 + sin(t) sqrt(g22) dx2 on (x1, x2, t), the canonical
/// form on the unit cotangent bundle of the spatial part of m at x3 = 0.
OneFormField unit_cotangent_form(const DiagonalMetric& m);

/// Signed analytic coefficient of unit_cotangent_form: -sqrt(g11 g22).
double unit_cotangent_coefficient(const DiagonalMetric& m, const Point& x);

/// Grid of n^3 points on [lo, hi]^3, cell centres.
std::vector<Point> cube_grid(double lo, double hi, int n);

} // namespace nullgeo::contact
