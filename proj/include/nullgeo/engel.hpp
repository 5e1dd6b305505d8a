#pragma once

#include "nullgeo/contact.hpp"
#include "nullgeo/geodesic.hpp"
#include "nullgeo/metric.hpp"

#include <Eigen/Core>

#include <functional>
#include <vector>

namespace nullgeo::engel {

using Vec4 = Eigen::Vector4d;
using Field4 = std::function<Vec4(const Vec4&)>;

/// Point (x1, x2, x3, theta) of the projectivized null cone bundle; theta
/// labels the null line through null_cone_vector(m, x, theta).
struct ProlongationPoint {
    ChartPoint x = ChartPoint::Zero();
    double theta = 0.0;

    Vec4 coords() const { return {x[0], x[1], x[2], theta}; }
    static ProlongationPoint from(const Vec4& y) { return {y.head<3>(), y[3]}; }
    /// Same point with theta in [0, 2 pi).
    ProlongationPoint reduced() const;
};

/// Frame of the Engel flag W c D c E at one point: D = <X, d_theta>,
/// E = <X, Xdot, d_theta>, W = <Z>.
struct EngelFlag {
    Vec4 X;
    Vec4 Xdot;
    Vec4 theta_dir;
    Vec4 Z;
};

/// (cos t / sqrt g11, sin t / sqrt g22, 1 / sqrt(-g33), 0)
Vec4 lorentz_X(const DiagonalMetric& m, const ProlongationPoint& p);
/// [d_theta, X] = (-sin t / sqrt g11, cos t / sqrt g22, 0, 0)
Vec4 lorentz_Xdot(const DiagonalMetric& m, const ProlongationPoint& p);
/// d_theta
Vec4 theta_direction();

/// Kernel generator X + k d_theta of the Engel structure for an arbitrary
/// diagonal metric. Well defined at every point of the chart.
Vec4 kernel_Z_general(const DiagonalMetric& m, const ProlongationPoint& p);
/// Closed form of the kernel for separable metrics; throws SeparabilityError otherwise.
Vec4 kernel_Z_separable(const DiagonalMetric& m, const ProlongationPoint& p);

EngelFlag engel_flag(const DiagonalMetric& m, const ProlongationPoint& p);

/// Vector fields on the (x, theta) chart induced by m.
Field4 field_X(const DiagonalMetric& m);
Field4 field_Xdot(const DiagonalMetric& m);
Field4 field_theta();
Field4 field_Z(const DiagonalMetric& m);

/// Largest component of [Z, F], F in {X, Xdot, d_theta}, orthogonal to E,
/// with central-difference brackets of step h. Z defaults to kernel_Z_general.
double kernel_invariance_residual(const DiagonalMetric& m, const ProlongationPoint& p, double h);
double kernel_invariance_residual(const DiagonalMetric& m, const ProlongationPoint& p, double h, const Field4& Z);

/// Numerical ranks of D, D + [D, D] and E + [E, E] (expected 2, 3, 4).
struct RankLadder {
    int d = 0;
    int e = 0;
    int full = 0;
    /// Smallest singular value that was counted at each level.
    double d_sigma = 0.0;
    double e_sigma = 0.0;
    double full_sigma = 0.0;
};

RankLadder rank_ladder(const DiagonalMetric& m, const ProlongationPoint& p, double h = 1e-5,
                       double threshold = 1e-6);

struct KernelFlowSample {
    double s;
    /// theta reduced to [0, 2 pi)
    ProlongationPoint point;
    double unwrapped_theta;
};

struct KernelFlowTrace {
    std::vector<KernelFlowSample> samples;
    double step = 0.0;
    bool exited = false;

    const KernelFlowSample& back() const { return samples.back(); }
};

/// RK4 integral curve of kernel_Z_separable over s in [0, s_max] (s_max may
/// be negative). theta is integrated unwrapped; chart exit truncates the
/// trace and sets `exited`.
KernelFlowTrace integrate_kernel_flow(const DiagonalMetric& m, const ProlongationPoint& p0, double s_max, double h);

/// Endpoint of the Z-flow in unwrapped coordinates; throws DomainError on chart exit.
Vec4 flow(const DiagonalMetric& m, const Vec4& y0, double s, double h);

enum class Equivalence { Equivalent, Distinct, Indeterminate };

const char* to_string(Equivalence e);

/// Whether q lies on the Z-flow line of p within tol over s in [-s_window, s_window].
/// The minimum of the sampled distance (theta measured on the circle) is
/// refined locally by bracketing search. A chart exit without a match is
/// Indeterminate.
Equivalence deprolong_equivalent(const DiagonalMetric& m, const ProlongationPoint& p, const ProlongationPoint& q,
                                 double s_window, double tol, double h = 1e-3);

/// Orthonormal 2-frame, in slice coordinates (x1, x2, theta) of {x3 = const},
/// of the projection of E along Z. Xdot is taken as the central-difference
/// bracket [d_theta, X] with step h. Throws TransversalityError when Z is
/// tangent to the slice.
Eigen::Matrix<double, 3, 2> pushforward_contact_plane(const DiagonalMetric& m, const ProlongationPoint& p,
                                                      double h = 1e-5);

/// Plane spanned in the same slice coordinates by the sky circle through p and
/// the sky circle through the Z-flow image at parameter s, the latter carried
/// back by the flow; the transported tangent is a central difference with
/// theta step eps.
Eigen::Matrix<double, 3, 2> two_sky_plane(const DiagonalMetric& m, const ProlongationPoint& p, double s = 0.1,
                                          double eps = 1e-5, double h = 1e-3);

/// Engel flag of the Cartan prolongation of the contact distribution <Y, Zc>
/// on R^3 at (x, t): X = Y cos t + Zc sin t, W = d_t. Throws RankError when
/// Y and Zc are dependent at x.
EngelFlag cartan_prolongation_frame(const contact::VectorField& Y, const contact::VectorField& Zc,
                                    const Eigen::Vector3d& x, double t);

/// Pointwise and image distances between the spatial projection of the Z-flow
/// from p and the null geodesic with initial velocity null_cone_vector(m, x, theta).
struct DeprolongComparison {
    KernelFlowTrace kernel;
    GeodesicTrace geodesic;
    /// |x_kernel(s) - x_geodesic(s)| at the common samples.
    std::vector<double> distance;
    double max_distance = 0.0;
    /// Symmetric Hausdorff distance between the two sampled images.
    double hausdorff = 0.0;
};

DeprolongComparison compare_with_geodesic(const DiagonalMetric& m, const ProlongationPoint& p, double s_max,
                                          double h);

/// Symmetric Hausdorff distance between two polylines in R^3.
double hausdorff_distance(const std::vector<Eigen::Vector3d>& a, const std::vector<Eigen::Vector3d>& b);

} // namespace nullgeo::engel
