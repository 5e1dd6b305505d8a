#include "nullgeo/s2s1.hpp"

#include "nullgeo/error.hpp"
#include "nullgeo/parallel.hpp"
#include "nullgeo/planes.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nullgeo::s2s1 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kLexTolerance = 1e-12;

void require_order(int c)
{
    if (c < 1) {
        throw InvalidOrderError("Z_c action needs c >= 1");
    }
}

double wrap_angle(double t)
{
    double r = std::fmod(t, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    return r >= kTwoPi ? 0.0 : r;
}

// -1, 0, +1 for a < b, a ~ b, a > b in tolerant lexicographic order.
int lex_compare(const Vector6d& a, const Vector6d& b)
{
    for (int i = 0; i < 6; ++i) {
        if (std::abs(a[i] - b[i]) > kLexTolerance) {
            return a[i] < b[i] ? -1 : 1;
        }
    }
    return 0;
}

double snap(double v) { return std::nearbyint(v / kClassGrid) * kClassGrid; }

Eigen::Matrix<double, 6, 2> as_columns(const TangentToSTS2& a, const TangentToSTS2& b)
{
    Eigen::Matrix<double, 6, 2> m;
    m << a.stacked(), b.stacked();
    return m;
}

Eigen::MatrixXd plane(const TangentToSTS2& a, const TangentToSTS2& b) { return orthonormal_frame(as_columns(a, b), 2); }

} // namespace

UnitTangent UnitTangent::make(const Eigen::Vector3d& x, const Eigen::Vector3d& u)
{
    const double nx = x.norm();
    if (!(nx > 0.0)) {
        throw ArgumentError("UnitTangent: zero footpoint");
    }
    const Eigen::Vector3d xn = x / nx;
    const Eigen::Vector3d w = u - u.dot(xn) * xn;
    const double nw = w.norm();
    if (!(nw > 1e-300)) {
        throw ArgumentError("UnitTangent: direction parallel to footpoint");
    }
    return {xn, w / nw};
}

Vector6d UnitTangent::stacked() const
{
    Vector6d v;
    v << x, u;
    return v;
}

double UnitTangent::residual() const
{
    return std::max({std::abs(x.norm() - 1.0), std::abs(u.norm() - 1.0), std::abs(x.dot(u))});
}

Vector6d TangentToSTS2::stacked() const
{
    Vector6d v;
    v << a, b;
    return v;
}

double TangentToSTS2::residual(const UnitTangent& p) const
{
    return std::max({std::abs(p.x.dot(a)), std::abs(p.u.dot(b)), std::abs(p.x.dot(b) + p.u.dot(a))});
}

UnitTangent random_unit_tangent(std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    for (;;) {
        const Eigen::Vector3d x(n(rng), n(rng), n(rng));
        const Eigen::Vector3d u(n(rng), n(rng), n(rng));
        if (x.norm() > 1e-6 && x.normalized().cross(u).norm() > 1e-6) {
            return UnitTangent::make(x, u);
        }
    }
}

Eigen::Vector3d great_circle(const UnitTangent& p, double t) { return p.x * std::cos(t) + p.u * std::sin(t); }

Eigen::Vector3d great_circle_velocity(const UnitTangent& p, double t)
{
    return -p.x * std::sin(t) + p.u * std::cos(t);
}

EventPoint null_geodesic(const UnitTangent& p, int c, double s)
{
    require_order(c);
    return {great_circle(p, s), wrap_angle(c * s)};
}

UnitTangent zc_action(const UnitTangent& p, int c, int j)
{
    require_order(c);
    if (j % c == 0) {
        return p;
    }
    const double a = kTwoPi * j / c;
    const double ca = std::cos(a);
    const double sa = std::sin(a);
    return UnitTangent::make(p.x * ca + p.u * sa, -p.x * sa + p.u * ca);
}

TangentToSTS2 zc_action(const TangentToSTS2& v, int c, int j)
{
    require_order(c);
    if (j % c == 0) {
        return v;
    }
    const double a = kTwoPi * j / c;
    const double ca = std::cos(a);
    const double sa = std::sin(a);
    return {v.a * ca + v.b * sa, -v.a * sa + v.b * ca};
}

std::vector<UnitTangent> orbit(const UnitTangent& p, int c)
{
    require_order(c);
    std::vector<UnitTangent> out;
    out.reserve(static_cast<std::size_t>(c));
    for (int j = 0; j < c; ++j) {
        out.push_back(zc_action(p, c, j));
    }
    return out;
}

OrbitChoice orbit_representative(const UnitTangent& p, int c)
{
    const std::vector<UnitTangent> elements = orbit(p, c);
    int best = 0;
    for (int j = 1; j < c; ++j) {
        if (lex_compare(elements[j].stacked(), elements[best].stacked()) < 0) {
            best = j;
        }
    }
    return {best, elements[best]};
}

NullGeodesicClass canonical_class(const UnitTangent& p, int c)
{
    require_order(c);
    if (c == 1) {
        return {p, 1};
    }
    const UnitTangent chosen = orbit_representative(p, c).element;
    const Eigen::Vector3d x = chosen.x.unaryExpr(&snap);
    const Eigen::Vector3d u = chosen.u.unaryExpr(&snap);
    return {UnitTangent::make(x, u), c};
}

std::array<Eigen::Vector3d, 2> sky_basis(const Eigen::Vector3d& x)
{
    std::array<int, 3> axes{0, 1, 2};
    std::stable_sort(axes.begin(), axes.end(), [&x](int a, int b) { return std::abs(x[a]) < std::abs(x[b]); });
    const Eigen::Vector3d e1 = Eigen::Vector3d::Unit(axes[0]);
    const Eigen::Vector3d e2 = Eigen::Vector3d::Unit(axes[1]);
    const Eigen::Vector3d b1 = (e1 - e1.dot(x) * x).normalized();
    const Eigen::Vector3d b2 = (e2 - e2.dot(x) * x - e2.dot(b1) * b1).normalized();
    return {b1, b2};
}

Eigen::Vector3d sky_direction(const Eigen::Vector3d& x, double theta)
{
    const auto [b1, b2] = sky_basis(x);
    return b1 * std::cos(theta) + b2 * std::sin(theta);
}

double sky_angle(const Eigen::Vector3d& x, const Eigen::Vector3d& w)
{
    const auto [b1, b2] = sky_basis(x);
    return std::atan2(w.dot(b2), w.dot(b1));
}

UnitTangent sky_lift(const EventPoint& e, int c, double theta)
{
    require_order(c);
    const Eigen::Vector3d w = sky_direction(e.x, theta);
    const double s0 = -wrap_angle(e.t) / c;
    return UnitTangent::make(e.x * std::cos(s0) + w * std::sin(s0), -e.x * std::sin(s0) + w * std::cos(s0));
}

NullGeodesicClass sky(const EventPoint& e, int c, double theta) { return canonical_class(sky_lift(e, c, theta), c); }

SkyLiftTangent sky_lift_tangent(const EventPoint& e, int c, double theta, double h)
{
    const UnitTangent plus = sky_lift(e, c, theta + h);
    const UnitTangent minus = sky_lift(e, c, theta - h);
    return {sky_lift(e, c, theta), TangentToSTS2::from((plus.stacked() - minus.stacked()) / (2.0 * h))};
}

TangentToSTS2 sky_tangent(const EventPoint& e, int c, double theta, double h)
{
    const SkyLiftTangent centre = sky_lift_tangent(e, c, theta, h);
    const int j = orbit_representative(centre.lift, c).j;
    for (const double side : {theta - h, theta + h}) {
        if (orbit_representative(sky_lift(e, c, side), c).j != j) {
            throw SkyBranchError("sky_tangent: representative changes orbit index inside the stencil");
        }
    }
    return zc_action(centre.tangent, c, j);
}

TangentToSTS2 sky_tangent_retrying(const EventPoint& e, int c, double theta, double h)
{
    for (int attempt = 0;; ++attempt) {
        try {
            return sky_tangent(e, c, theta, h);
        } catch (const SkyBranchError&) {
            if (attempt == 4) {
                throw;
            }
            h *= 0.5;
        }
    }
}

std::array<TangentToSTS2, 2> chi_plane(const UnitTangent& p)
{
    const Eigen::Vector3d n = p.x.cross(p.u).normalized();
    return {TangentToSTS2{n, Eigen::Vector3d::Zero()}, TangentToSTS2{Eigen::Vector3d::Zero(), n}};
}

Eigen::Matrix<double, 4, 6> chi_constraints(const UnitTangent& p)
{
    Eigen::Matrix<double, 4, 6> m = Eigen::Matrix<double, 4, 6>::Zero();
    m.block<1, 3>(0, 0) = p.x.transpose();
    m.block<1, 3>(1, 3) = p.u.transpose();
    m.block<1, 3>(2, 0) = p.u.transpose();
    m.block<1, 3>(2, 3) = p.x.transpose();
    m.block<1, 3>(3, 0) = p.u.transpose();
    return m;
}

double chi_residual(const UnitTangent& p, const TangentToSTS2& v)
{
    const auto chi = chi_plane(p);
    return residual_off_span(v.stacked(), as_columns(chi[0], chi[1]));
}

double Intersections::max_gap_error(int c) const
{
    double worst = 0.0;
    for (const double g : gaps) {
        worst = std::max(worst, std::abs(g - kTwoPi / c));
    }
    return worst;
}

Intersections intersection_count(const UnitTangent& p, int c)
{
    require_order(c);
    // Unwrapped time along the geodesic; crossings are its level sets 2 pi k.
    const auto time = [c](double s) { return c * s; };
    const double t_begin = time(0.0);
    const double t_end = time(kTwoPi);

    Intersections out;
    for (long k = static_cast<long>(std::ceil(t_begin / kTwoPi)); kTwoPi * k < t_end; ++k) {
        const double level = kTwoPi * k;
        double lo = 0.0;
        double hi = kTwoPi;
        double root = lo;
        if (time(lo) == level) {
            root = lo;
        } else {
            for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) {
                    break;
                }
                (time(mid) < level ? lo : hi) = mid;
            }
            root = std::abs(time(lo) - level) <= std::abs(time(hi) - level) ? lo : hi;
        }
        out.s.push_back(root);
        out.points.push_back(great_circle(p, root));
    }
    for (std::size_t i = 0; i < out.s.size(); ++i) {
        const double next = (i + 1 < out.s.size()) ? out.s[i + 1] : out.s.front() + kTwoPi;
        out.gaps.push_back(next - out.s[i]);
    }
    return out;
}

ContactSample contact_sample(const UnitTangent& p, int c, double h)
{
    const UnitTangent r = orbit_representative(p, c).element;
    const double tau = kSecondSkyOffset;

    const EventPoint first{r.x, 0.0};
    const EventPoint second = null_geodesic(r, c, tau);
    const TangentToSTS2 t1 = sky_tangent_retrying(first, c, sky_angle(r.x, r.u), h);
    const TangentToSTS2 t2 = sky_tangent_retrying(second, c, sky_angle(second.x, great_circle_velocity(r, tau)), h);

    ContactSample out;
    out.sky_residual = std::max(chi_residual(r, t1), chi_residual(r, t2));
    const auto chi = chi_plane(r);
    const Eigen::MatrixXd H = plane(t1, t2);
    out.plane_angle = max_principal_angle(H, plane(chi[0], chi[1]));
    const double cosine = std::abs(t1.stacked().normalized().dot(t2.stacked().normalized()));
    out.sky_separation = std::acos(std::min(1.0, cosine));

    // Rebuild the plane from the skies through another orbit element v and
    // compare with the representative plane carried over by the action.
    const int k = c > 1 ? 1 : 0;
    const UnitTangent v = zc_action(r, c, k);
    const EventPoint first_v{v.x, 0.0};
    const EventPoint second_v = null_geodesic(v, c, tau);
    const SkyLiftTangent s1 = sky_lift_tangent(first_v, c, sky_angle(v.x, v.u), h);
    const SkyLiftTangent s2 = sky_lift_tangent(second_v, c, sky_angle(second_v.x, great_circle_velocity(v, tau)), h);
    // The second lift may land on a different orbit element; move it to v.
    int shift = 0;
    double nearest = s2.lift.distance(v);
    for (int j = 1; j < c; ++j) {
        const double d = zc_action(s2.lift, c, j).distance(v);
        if (d < nearest) {
            nearest = d;
            shift = j;
        }
    }
    const Eigen::MatrixXd H_v = plane(s1.tangent, zc_action(s2.tangent, c, shift));
    const Eigen::MatrixXd H_moved = plane(zc_action(t1, c, k), zc_action(t2, c, k));
    out.welldef_angle = max_principal_angle(H_v, H_moved);
    return out;
}

report::Report verify_contact_on_Nc(int c, int n_samples, std::uint64_t seed, double tol)
{
    require_order(c);
    std::mt19937_64 rng(seed);
    std::vector<UnitTangent> points;
    points.reserve(static_cast<std::size_t>(std::max(0, n_samples)));
    for (int i = 0; i < n_samples; ++i) {
        points.push_back(random_unit_tangent(rng));
    }
    std::vector<ContactSample> results(points.size());
    parallel_for(points.size(), [&](std::size_t i) { results[i] = contact_sample(points[i], c); });

    report::Report rep("contact-Nc", seed, tol);
    rep.set_param("c", std::to_string(c));
    for (std::size_t i = 0; i < points.size(); ++i) {
        const ContactSample& s = results[i];
        const Vector6d q = points[i].stacked();
        rep.add(std::vector<double>(q.data(), q.data() + 6), std::max({s.sky_residual, s.plane_angle, s.welldef_angle}));
        rep.note_max("max_sky_residual", s.sky_residual);
        rep.note_max("max_plane_angle", s.plane_angle);
        rep.note_max("max_welldef_angle", s.welldef_angle);
        rep.note_min("min_sky_separation", s.sky_separation);
    }
    return rep;
}

} // namespace nullgeo::s2s1
