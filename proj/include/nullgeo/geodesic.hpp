#pragma once

#include "nullgeo/metric.hpp"

#include <utility>
#include <vector>

namespace nullgeo {

/// (dx/ds, dv/ds) with dv_k/ds = -Gamma^k_ij v_i v_j.
std::pair<TangentVector, TangentVector> geodesic_rhs(const DiagonalMetric& m, const ChartPoint& x,
                                                     const TangentVector& v);

struct GeodesicSample {
    double s;
    ChartPoint x;
    TangentVector v;
};

/// Sampled RK4 solution of the geodesic equation.
struct GeodesicTrace {
    std::vector<GeodesicSample> samples;
    double step = 0.0;
    /// Integration stopped early because the trajectory left the chart box.
    bool exited = false;

    const GeodesicSample& back() const { return samples.back(); }
    /// max_s |g(v,v)(s) - g(v,v)(0)|
    double length_drift(const DiagonalMetric& m) const;
    /// max_s |g(v,v)(s)|
    double max_abs_norm_sq(const DiagonalMetric& m) const;
};

/// Fixed-step RK4 over s in [0, s_max] (s_max may be negative). On chart
/// exit the trace is truncated at the last in-domain sample and flagged.
GeodesicTrace integrate_geodesic(const DiagonalMetric& m, const ChartPoint& x0, const TangentVector& v0,
                                 double s_max, double h);

/// max-norm of [Delta, X_g] - X_g on the tangent-bundle chart (x, v), with the
/// spray X_g = (v, -Gamma(v,v)) and Euler field Delta = (0, v); brackets by
/// central differences with step h. Vanishes because the spray is
/// homogeneous of degree two.
double spray_euler_bracket(const DiagonalMetric& m, const ChartPoint& x, const TangentVector& v, double h);

} // namespace nullgeo
