#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace nullgeo::quat {

/// Element w + xi + yj + zk of the real quaternion algebra.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr Quaternion real(double a) { return {a, 0.0, 0.0, 0.0}; }
    static Quaternion pure(const Eigen::Vector3d& v) { return {0.0, v.x(), v.y(), v.z()}; }

    static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
    static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

    Eigen::Vector3d vec() const { return {x, y, z}; }
    Eigen::Vector4d coeffs() const { return {w, x, y, z}; }

    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
    constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
    double norm() const;
    Quaternion inverse() const;
    Quaternion normalized() const;

    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
    constexpr Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
    constexpr Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
    constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
    constexpr Quaternion operator/(double s) const { return {w / s, x / s, y / s, z / s}; }
    constexpr bool operator==(const Quaternion&) const = default;
};

constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

/// Hamilton product.
Quaternion qmul(const Quaternion& a, const Quaternion& b);
inline Quaternion operator*(const Quaternion& a, const Quaternion& b) { return qmul(a, b); }

/// Euclidean distance in R^4.
double distance(const Quaternion& a, const Quaternion& b);

/// Unit-length pure imaginary quaternion, a point of the sphere S V.
class UnitImaginary {
public:
    /// Validates |v| = 1 within 1e-12; throws InvalidAxisError otherwise.
    explicit UnitImaginary(const Eigen::Vector3d& v);
    /// Normalizes v (must be nonzero).
    static UnitImaginary normalized(const Eigen::Vector3d& v);

    static UnitImaginary i() { return UnitImaginary(Eigen::Vector3d::UnitX()); }
    static UnitImaginary j() { return UnitImaginary(Eigen::Vector3d::UnitY()); }
    static UnitImaginary k() { return UnitImaginary(Eigen::Vector3d::UnitZ()); }

    const Eigen::Vector3d& vec() const { return v_; }
    Quaternion quat() const { return Quaternion::pure(v_); }
    double x() const { return v_.x(); }
    double y() const { return v_.y(); }
    double z() const { return v_.z(); }

private:
    struct Unchecked {};
    UnitImaginary(const Eigen::Vector3d& v, Unchecked) : v_(v) {}
    Eigen::Vector3d v_;
};

/// Orthonormal pair (u, v) of unit imaginaries: a point of ST(S V).
struct FramePair {
    Eigen::Vector3d u;
    Eigen::Vector3d v;

    /// Validates unit norms and orthogonality within 1e-12.
    static FramePair checked(const Eigen::Vector3d& u, const Eigen::Vector3d& v);
    static FramePair checked(const UnitImaginary& u, const UnitImaginary& v) { return checked(u.vec(), v.vec()); }

    /// max(| |u|-1 |, | |v|-1 |, |<u,v>|)
    double residual() const;
    double distance(const FramePair& o) const;
    /// u x v
    Eigen::Vector3d normal() const { return u.cross(v); }
};

/// (uv - vu)/2 for pure imaginary u, v.
Quaternion cross(const Quaternion& u, const Quaternion& v);
/// -(uv + vu)/2 for pure imaginary u, v.
double inner(const Quaternion& u, const Quaternion& v);

/// e^{alpha z} = cos(alpha) + z sin(alpha); z must be a unit pure imaginary.
Quaternion exp_pure(double alpha, const Quaternion& z);
Quaternion exp_pure(double alpha, const UnitImaginary& z);

/// s r s^{-1}; s must be a unit quaternion, r pure imaginary.
Quaternion rotate(const Quaternion& s, const Quaternion& r);
Eigen::Vector3d rotate(const Quaternion& s, const Eigen::Vector3d& r);

/// q -> (q u q^{-1}, q v q^{-1}).
FramePair phi(const Quaternion& q, const FramePair& frame);

/// One of the two antipodal preimages of `target` under phi(., frame),
/// built by the two-rotation construction. The representative returned has
/// nonnegative real part (ties: first nonzero of x, y, z positive).
Quaternion phi_inverse(const FramePair& target, const FramePair& frame);

/// Applies the sign convention used by phi_inverse.
Quaternion canonical_sign(const Quaternion& q);

/// Hopf projection q -> q w q^{-1}.
UnitImaginary hopf(const Quaternion& q, const UnitImaginary& w);

/// |f(phi(q, frame)) - hopf(q, u x v)| where f(u, v) = u x v.
double hopf_commutes(const Quaternion& q, const FramePair& frame);

/// Generator q -> q e^{2 pi i / p} of the cyclic action with quotient L(p, p-1),
/// which is diffeomorphic to L(p, 1).
class LensGenerator {
public:
    explicit LensGenerator(int order);
    int order() const { return order_; }
    const Quaternion& factor() const { return factor_; }
    Quaternion operator()(const Quaternion& q) const { return q * factor_; }

private:
    int order_;
    Quaternion factor_;
};

LensGenerator lens_generator(int p);

/// The 2x2 block rotation (u, v) -> (u cos a + v sin a, -u sin a + v cos a),
/// a = 2 pi j / c.
FramePair block_rotate(const FramePair& f, int c, int j);

/// max-component difference between phi_{(j,k)}(q e^{pi i / c}) and the
/// Z_c block rotation applied to phi_{(j,k)}(q).
double lens_descends(const Quaternion& q, int c);

} // namespace nullgeo::quat
