#include "nullgeo/quaternion.hpp"

#include "nullgeo/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nullgeo::quat {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kPureTol = 1e-12;
// |<u,w>| above this is treated as colinear in phi_inverse.
constexpr double kColinear = 1.0 - 1e-10;

void require_pure(const Quaternion& q, const char* what)
{
    const double scale = std::max(1.0, std::sqrt(q.norm2()));
    if (std::abs(q.w) > kPureTol * scale) {
        throw InvalidAxisError(std::string(what) + ": argument is not pure imaginary");
    }
}

// Rotation about from x to carrying unit `from` onto unit `to`; identity when
// they coincide exactly.
Quaternion small_align(const Eigen::Vector3d& from, const Eigen::Vector3d& to)
{
    const Eigen::Vector3d axis = from.cross(to);
    const double s = axis.norm();
    if (s == 0.0) {
        return Quaternion::one();
    }
    const double angle = std::atan2(s, from.dot(to)); // arccos<from,to>, better conditioned
    return exp_pure(angle / 2.0, Quaternion::pure(axis / s));
}

// Rotation taking unit `from` onto unit `to`. In the colinear band the exact
// branch (identity, or pi about `fallback_axis` for antipodal vectors) is taken
// first and any leftover misalignment removed by a small rotation.
Quaternion aligning_rotation(const Eigen::Vector3d& from, const Eigen::Vector3d& to,
                             const Eigen::Vector3d& fallback_axis)
{
    const double c = from.dot(to);
    if (c < -kColinear) {
        const Quaternion flip = exp_pure(std::numbers::pi / 2.0, Quaternion::pure(fallback_axis.normalized()));
        return small_align(rotate(flip, from), to) * flip;
    }
    return small_align(from, to);
}

} // namespace

double Quaternion::norm() const { return std::sqrt(norm2()); }

Quaternion Quaternion::inverse() const { return conj() / norm2(); }

Quaternion Quaternion::normalized() const { return *this / norm(); }

Quaternion qmul(const Quaternion& a, const Quaternion& b)
{
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

double distance(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

UnitImaginary::UnitImaginary(const Eigen::Vector3d& v) : v_(v)
{
    if (!v.allFinite() || std::abs(v.norm() - 1.0) > kUnitTol) {
        throw InvalidAxisError("UnitImaginary: vector is not unit length");
    }
}

UnitImaginary UnitImaginary::normalized(const Eigen::Vector3d& v)
{
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw InvalidAxisError("UnitImaginary: cannot normalize a zero vector");
    }
    return UnitImaginary(v / n, Unchecked{});
}

FramePair FramePair::checked(const Eigen::Vector3d& u, const Eigen::Vector3d& v)
{
    FramePair f{u, v};
    if (!(f.residual() <= kUnitTol)) {
        throw InvalidAxisError("FramePair: (u, v) is not an orthonormal pair");
    }
    return f;
}

double FramePair::residual() const
{
    return std::max({std::abs(u.norm() - 1.0), std::abs(v.norm() - 1.0), std::abs(u.dot(v))});
}

double FramePair::distance(const FramePair& o) const
{
    return std::sqrt((u - o.u).squaredNorm() + (v - o.v).squaredNorm());
}

Quaternion cross(const Quaternion& u, const Quaternion& v)
{
    require_pure(u, "cross");
    require_pure(v, "cross");
    Quaternion r = (u * v - v * u) * 0.5;
    r.w = 0.0;
    return r;
}

double inner(const Quaternion& u, const Quaternion& v)
{
    require_pure(u, "inner");
    require_pure(v, "inner");
    return -0.5 * (u * v + v * u).w;
}

Quaternion exp_pure(double alpha, const Quaternion& z)
{
    require_pure(z, "exp_pure");
    if (std::abs(z.norm() - 1.0) > kUnitTol) {
        throw InvalidAxisError("exp_pure: axis is not unit length");
    }
    const double s = std::sin(alpha);
    return {std::cos(alpha), z.x * s, z.y * s, z.z * s};
}

Quaternion exp_pure(double alpha, const UnitImaginary& z) { return exp_pure(alpha, z.quat()); }

Quaternion rotate(const Quaternion& s, const Quaternion& r)
{
    Quaternion out = s * r * s.inverse();
    out.w = 0.0;
    return out;
}

Eigen::Vector3d rotate(const Quaternion& s, const Eigen::Vector3d& r)
{
    return rotate(s, Quaternion::pure(r)).vec();
}

FramePair phi(const Quaternion& q, const FramePair& frame)
{
    return {rotate(q, frame.u), rotate(q, frame.v)};
}

Quaternion canonical_sign(const Quaternion& q)
{
    if (q.w > 0.0) {
        return q;
    }
    if (q.w < 0.0) {
        return -q;
    }
    for (double c : {q.x, q.y, q.z}) {
        if (c > 0.0) {
            return q;
        }
        if (c < 0.0) {
            return -q;
        }
    }
    return q;
}

Quaternion phi_inverse(const FramePair& target, const FramePair& frame)
{
    const Eigen::Vector3d& u = frame.u;
    const Eigen::Vector3d& v = frame.v;
    const Eigen::Vector3d& w = target.u;
    const Eigen::Vector3d& z = target.v;

    // q1 u q1^{-1} = w; for w = -u rotate by pi about z.
    const Quaternion q1 = aligning_rotation(u, w, z);
    // q2 fixes w and carries q1 v q1^{-1} onto z; for antipodal, pi about w.
    const Eigen::Vector3d v1 = rotate(q1, v);
    const Quaternion q2 = aligning_rotation(v1, z, w);

    return canonical_sign((q2 * q1).normalized());
}

UnitImaginary hopf(const Quaternion& q, const UnitImaginary& w)
{
    return UnitImaginary(rotate(q, w.vec()));
}

double hopf_commutes(const Quaternion& q, const FramePair& frame)
{
    const FramePair image = phi(q, frame);
    const Eigen::Vector3d f = cross(Quaternion::pure(image.u), Quaternion::pure(image.v)).vec();
    const Eigen::Vector3d w = cross(Quaternion::pure(frame.u), Quaternion::pure(frame.v)).vec();
    const Eigen::Vector3d tau = rotate(q, w);
    return (f - tau).norm();
}

LensGenerator::LensGenerator(int order) : order_(order)
{
    if (order < 1) {
        throw InvalidOrderError("lens_generator: order must be >= 1");
    }
    // Quarter-turn factors are exact so that order 2 is exactly q -> -q.
    switch (order) {
    case 1:
        factor_ = Quaternion::one();
        break;
    case 2:
        factor_ = Quaternion::real(-1.0);
        break;
    case 4:
        factor_ = Quaternion::i();
        break;
    default:
        factor_ = exp_pure(2.0 * std::numbers::pi / order, Quaternion::i());
    }
}

LensGenerator lens_generator(int p) { return LensGenerator(p); }

FramePair block_rotate(const FramePair& f, int c, int j)
{
    if (c < 1) {
        throw InvalidOrderError("block_rotate: order must be >= 1");
    }
    const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(c);
    const double ca = std::cos(a);
    const double sa = std::sin(a);
    return {f.u * ca + f.v * sa, -f.u * sa + f.v * ca};
}

double lens_descends(const Quaternion& q, int c)
{
    if (c < 1) {
        throw InvalidOrderError("lens_descends: order must be >= 1");
    }
    const FramePair jk{Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ()};
    // Z_{2c} generator q -> q e^{pi i / c}.
    const FramePair lhs = phi(q * lens_generator(2 * c).factor(), jk);
    const FramePair rhs = block_rotate(phi(q, jk), c, 1);
    return std::max((lhs.u - rhs.u).cwiseAbs().maxCoeff(), (lhs.v - rhs.v).cwiseAbs().maxCoeff());
}

} // namespace nullgeo::quat
