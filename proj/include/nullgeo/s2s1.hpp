#pragma once

#include "nullgeo/report.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace nullgeo::s2s1 {

using Vector6d = Eigen::Matrix<double, 6, 1>;

/// Point (x, u) of the unit tangent bundle of S^2 embedded in R^3 x R^3.
struct UnitTangent {
    Eigen::Vector3d x;
    Eigen::Vector3d u;

    /// Projects onto the constraint set: x normalized, u Gram-Schmidt against x
    /// and normalized. Throws ArgumentError for degenerate input.
    static UnitTangent make(const Eigen::Vector3d& x, const Eigen::Vector3d& u);

    Vector6d stacked() const;
    /// max(| |x|-1 |, | |u|-1 |, |<x,u>|)
    double residual() const;
    double distance(const UnitTangent& o) const { return (stacked() - o.stacked()).norm(); }
    bool operator==(const UnitTangent& o) const { return x == o.x && u == o.u; }
};

/// Event (x, t) of S^2 x S^1, t taken mod 2 pi.
struct EventPoint {
    Eigen::Vector3d x;
    double t = 0.0;
};

/// Orbit class of a null geodesic under Z_c, stored by its canonical representative.
struct NullGeodesicClass {
    UnitTangent rep;
    int c = 1;

    bool operator==(const NullGeodesicClass& o) const { return c == o.c && rep == o.rep; }
};

/// Tangent vector (a, b) to ST S^2 at (x, u): <x,a> = 0, <u,b> = 0, <x,b> + <u,a> = 0.
struct TangentToSTS2 {
    Eigen::Vector3d a;
    Eigen::Vector3d b;

    Vector6d stacked() const;
    static TangentToSTS2 from(const Vector6d& v) { return {v.head<3>(), v.tail<3>()}; }
    /// Largest violation of the three linearized constraints at p.
    double residual(const UnitTangent& p) const;
};

/// Uniformly distributed point of ST S^2.
UnitTangent random_unit_tangent(std::mt19937_64& rng);

/// x cos t + u sin t
Eigen::Vector3d great_circle(const UnitTangent& p, double t);
/// -x sin t + u cos t
Eigen::Vector3d great_circle_velocity(const UnitTangent& p, double t);

/// (great_circle(p, s), c s mod 2 pi): the null geodesic of g_c starting at (x, 0).
EventPoint null_geodesic(const UnitTangent& p, int c, double s);

/// Block rotation of (x, u) by 2 pi j / c, generating Z_c.
UnitTangent zc_action(const UnitTangent& p, int c, int j);
/// Same rotation applied to a tangent vector.
TangentToSTS2 zc_action(const TangentToSTS2& v, int c, int j);

/// zc_action(p, c, j) for j = 0 .. c-1.
std::vector<UnitTangent> orbit(const UnitTangent& p, int c);

/// Orbit element chosen as representative, unrounded, with its index j.
struct OrbitChoice {
    int j = 0;
    UnitTangent element;
};

/// Lexicographically smallest orbit element of (x, u) in R^6, comparing
/// componentwise with tolerance 1e-12; ties go to the smaller j.
OrbitChoice orbit_representative(const UnitTangent& p, int c);

/// Spacing of the grid that class representatives are rounded to. Inputs that
/// agree only to rounding error can straddle a grid boundary, so their
/// representatives then differ by one cell in a coordinate.
inline constexpr double kClassGrid = 0x1p-32;

/// Class of p. For c > 1 the chosen element is rounded to a 2^-32 grid and
/// projected back onto ST S^2, so all orbit elements yield bitwise-identical
/// representatives; for c = 1 the representative is p itself.
NullGeodesicClass canonical_class(const UnitTangent& p, int c);

/// Orthonormal basis of <x>^perp from Gram-Schmidt of the two standard axes
/// least aligned with x.
std::array<Eigen::Vector3d, 2> sky_basis(const Eigen::Vector3d& x);

/// Spatial direction at x making angle theta in sky_basis(x).
Eigen::Vector3d sky_direction(const Eigen::Vector3d& x, double theta);

/// Angle of the unit vector w in sky_basis(x).
double sky_angle(const Eigen::Vector3d& x, const Eigen::Vector3d& w);

/// Point of ST S^2 where the geodesic through e with spatial direction
/// sky_direction(e.x, theta) crosses t = 0, found by flowing back by t / c.
UnitTangent sky_lift(const EventPoint& e, int c, double theta);

/// Class of the null geodesic through e in direction theta.
NullGeodesicClass sky(const EventPoint& e, int c, double theta);

/// Sky lift and its central-difference theta derivative, at the lift itself.
struct SkyLiftTangent {
    UnitTangent lift;
    TangentToSTS2 tangent;
};

SkyLiftTangent sky_lift_tangent(const EventPoint& e, int c, double theta, double h);

/// Derivative of the sky curve at the unrounded representative of its class.
/// Throws SkyBranchError when the representative's orbit index changes
/// inside the difference stencil.
TangentToSTS2 sky_tangent(const EventPoint& e, int c, double theta, double h);

/// sky_tangent with up to four retries at halved step.
TangentToSTS2 sky_tangent_retrying(const EventPoint& e, int c, double theta, double h);

/// Orthonormal frame of the canonical contact plane chi at p: vectors (a, b)
/// tangent to ST S^2 with <u, a> = 0. Spanned by (x cross u, 0) and (0, x cross u).
std::array<TangentToSTS2, 2> chi_plane(const UnitTangent& p);

/// 4 x 6 matrix of the linear constraints defining chi inside R^6.
Eigen::Matrix<double, 4, 6> chi_constraints(const UnitTangent& p);

/// Norm of the component of v orthogonal to chi_plane(p).
double chi_residual(const UnitTangent& p, const TangentToSTS2& v);

/// Crossings of t = 0 (mod 2 pi) along null_geodesic(p, c, .) for s in [0, 2 pi).
struct Intersections {
    std::vector<double> s;
    std::vector<Eigen::Vector3d> points;
    /// Consecutive differences of s, closing with the wrap to the first crossing.
    std::vector<double> gaps;

    int count() const { return static_cast<int>(s.size()); }
    /// max |gap - 2 pi / c|
    double max_gap_error(int c) const;
};

/// Root-finds t(s) = 2 pi k on the unwrapped time coordinate.
Intersections intersection_count(const UnitTangent& p, int c);

/// Per-class contact-plane comparison used by verify_contact_on_Nc.
struct ContactSample {
    /// max chi_residual of the two sky tangents at the representative
    double sky_residual = 0.0;
    /// max principal angle between span of the two sky tangents and chi
    double plane_angle = 0.0;
    /// max principal angle between the plane rebuilt from another orbit
    /// element's skies and the transported representative plane
    double welldef_angle = 0.0;
    /// angle between the two sky tangents
    double sky_separation = 0.0;
};

/// Sky offset along the geodesic used for the second sky.
inline constexpr double kSecondSkyOffset = 0.7853981633974483;

ContactSample contact_sample(const UnitTangent& p, int c, double h = 1e-5);

/// Sweep over n random classes; residual per class is the largest of the
/// three ContactSample errors.
report::Report verify_contact_on_Nc(int c, int n_samples, std::uint64_t seed, double tol = 1e-5);

} // namespace nullgeo::s2s1
