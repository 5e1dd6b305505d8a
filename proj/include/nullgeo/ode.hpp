#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstddef>

namespace nullgeo {

/// One classical fourth-order Runge-Kutta step of y' = f(y).
template <int N, class F>
Eigen::Matrix<double, N, 1> rk4_step(const F& f, const Eigen::Matrix<double, N, 1>& y, double h)
{
    const Eigen::Matrix<double, N, 1> k1 = f(y);
    const Eigen::Matrix<double, N, 1> k2 = f(Eigen::Matrix<double, N, 1>(y + 0.5 * h * k1));
    const Eigen::Matrix<double, N, 1> k3 = f(Eigen::Matrix<double, N, 1>(y + 0.5 * h * k2));
    const Eigen::Matrix<double, N, 1> k4 = f(Eigen::Matrix<double, N, 1>(y + h * k3));
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Number of fixed steps covering [0, |span|] with nominal step h; the last
/// step is shortened so the trace ends exactly at span.
inline std::size_t step_count(double span, double h)
{
    const double n = std::abs(span) / h;
    const double r = std::round(n);
    // Absorb round-off so span = k h gives exactly k steps.
    if (std::abs(n - r) < 1e-9 * std::max(1.0, n)) {
        return static_cast<std::size_t>(r);
    }
    return static_cast<std::size_t>(std::ceil(n));
}

} // namespace nullgeo
