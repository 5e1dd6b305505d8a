#include "nullgeo/geodesic.hpp"

#include "nullgeo/error.hpp"
#include "nullgeo/fd.hpp"
#include "nullgeo/ode.hpp"

#include <algorithm>
#include <cmath>

namespace nullgeo {

namespace {

using State = Eigen::Matrix<double, 6, 1>;

State spray(const DiagonalMetric& m, const State& y)
{
    const ChartPoint x = y.head<3>();
    const TangentVector v = y.tail<3>();
    const auto [dx, dv] = geodesic_rhs(m, x, v);
    State out;
    out << dx, dv;
    return out;
}

} // namespace

std::pair<TangentVector, TangentVector> geodesic_rhs(const DiagonalMetric& m, const ChartPoint& x,
                                                     const TangentVector& v)
{
    const ChristoffelTensor gamma = christoffel(m, x);
    return {v, -gamma.contract(v)};
}

double GeodesicTrace::length_drift(const DiagonalMetric& m) const
{
    if (samples.empty()) {
        return 0.0;
    }
    const double l0 = norm_sq(m, samples.front().x, samples.front().v);
    double drift = 0.0;
    for (const auto& s : samples) {
        drift = std::max(drift, std::abs(norm_sq(m, s.x, s.v) - l0));
    }
    return drift;
}

double GeodesicTrace::max_abs_norm_sq(const DiagonalMetric& m) const
{
    double worst = 0.0;
    for (const auto& s : samples) {
        worst = std::max(worst, std::abs(norm_sq(m, s.x, s.v)));
    }
    return worst;
}

GeodesicTrace integrate_geodesic(const DiagonalMetric& m, const ChartPoint& x0, const TangentVector& v0,
                                 double s_max, double h)
{
    if (!(h > 0.0) || !std::isfinite(s_max)) {
        throw ArgumentError("integrate_geodesic: step must be positive and s_max finite");
    }
    m.components(x0); // domain and signature of the initial point

    GeodesicTrace trace;
    trace.step = h;
    trace.samples.push_back({0.0, x0, v0});

    const std::size_t n = step_count(s_max, h);
    const double dir = s_max < 0.0 ? -1.0 : 1.0;
    State y;
    y << x0, v0;
    const auto f = [&m](const State& s) { return spray(m, s); };
    for (std::size_t i = 0; i < n; ++i) {
        const double s0 = dir * h * static_cast<double>(i);
        const double s1 = (i + 1 == n) ? s_max : dir * h * static_cast<double>(i + 1);
        try {
            y = rk4_step<6>(f, y, s1 - s0);
            if (!m.domain().contains(y.head<3>())) {
                trace.exited = true;
                break;
            }
        } catch (const DomainError&) {
            trace.exited = true;
            break;
        }
        trace.samples.push_back({s1, y.head<3>(), y.tail<3>()});
    }
    return trace;
}

double spray_euler_bracket(const DiagonalMetric& m, const ChartPoint& x, const TangentVector& v, double h)
{
    State p;
    p << x, v;
    const auto X = [&m](const State& s) { return spray(m, s); };
    const auto Delta = [](const State& s) {
        State out;
        out << Eigen::Vector3d::Zero(), s.tail<3>();
        return out;
    };
    const State bracket = bracket_fd<State>(Delta, X, p, h);
    return (bracket - X(p)).cwiseAbs().maxCoeff();
}

} // namespace nullgeo
