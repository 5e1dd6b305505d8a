#pragma once

#include <Eigen/Core>

namespace nullgeo {

/// Central-difference directional derivative of `field` at p along dir.
template <class Vec, class F>
Vec directional_derivative(const F& field, const Vec& p, const Vec& dir, double h)
{
    const Vec plus = p + h * dir;
    const Vec minus = p - h * dir;
    return (field(plus) - field(minus)) / (2.0 * h);
}

/// [X, Y](p) = (DY) X - (DX) Y, Jacobian-vector products by central differences.
template <class Vec, class FX, class FY>
Vec bracket_fd(const FX& X, const FY& Y, const Vec& p, double h)
{
    const Vec xp = X(p);
    const Vec yp = Y(p);
    return directional_derivative<Vec>(Y, p, xp, h) - directional_derivative<Vec>(X, p, yp, h);
}

} // namespace nullgeo
