#include "nullgeo/engel.hpp"

#include "nullgeo/error.hpp"
#include "nullgeo/fd.hpp"
#include "nullgeo/ode.hpp"
#include "nullgeo/planes.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <numbers>

namespace nullgeo::engel {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double circle_distance(double a, double b) { return std::abs(std::remainder(a - b, kTwoPi)); }

Vec4 separable_rhs(const DiagonalMetric& m, const Vec4& y) { return kernel_Z_separable(m, ProlongationPoint::from(y)); }

void require_separable(const DiagonalMetric& m, const char* who)
{
    if (!m.separable()) {
        throw SeparabilityError(std::string(who) + ": metric '" + m.id() + "' is not separable");
    }
}

// Images in slice coordinates (x1, x2, theta) of vectors projected along Z.
Eigen::Vector3d project_along(const Vec4& v, const Vec4& Z)
{
    const Vec4 w = v - (v[2] / Z[2]) * Z;
    return {w[0], w[1], w[3]};
}

Vec4 require_transverse_Z(const DiagonalMetric& m, const ProlongationPoint& p)
{
    const Vec4 Z = kernel_Z_general(m, p);
    if (!(std::abs(Z[2]) > 1e-12)) {
        throw TransversalityError("kernel field is tangent to the slice x3 = const");
    }
    return Z;
}

Eigen::Matrix<double, 3, 2> plane_of(const Eigen::Matrix3d& images)
{
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(images, Eigen::ComputeFullU);
    if (!(svd.singularValues()(1) > 1e-10)) {
        throw RankError("projected distribution has rank below two");
    }
    return svd.matrixU().leftCols<2>();
}

int numerical_rank(const Eigen::MatrixXd& vectors, double threshold, double& smallest_counted)
{
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(vectors);
    const auto& sv = svd.singularValues();
    int rank = 0;
    smallest_counted = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > threshold) {
            ++rank;
            smallest_counted = sv(i);
        }
    }
    return rank;
}

// Distance between a flow state (unwrapped theta) and q, theta on the circle.
double flow_distance(const Vec4& y, const ProlongationPoint& q)
{
    const double dx = (y.head<3>() - q.x).squaredNorm();
    const double dt = circle_distance(y[3], q.theta);
    return std::sqrt(dx + dt * dt);
}

double point_segment_distance(const Eigen::Vector3d& p, const Eigen::Vector3d& a, const Eigen::Vector3d& b)
{
    const Eigen::Vector3d ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 == 0.0) {
        return (p - a).norm();
    }
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

// Early-break directed Hausdorff distance: the search for each point starts
// at the segment that was nearest for its predecessor and widens outward,
// stopping as soon as the running maximum cannot grow.
double directed_hausdorff(const std::vector<Eigen::Vector3d>& from, const std::vector<Eigen::Vector3d>& to)
{
    if (to.size() == 1) {
        double worst = 0.0;
        for (const auto& p : from) {
            worst = std::max(worst, (p - to.front()).norm());
        }
        return worst;
    }
    const std::ptrdiff_t segments = static_cast<std::ptrdiff_t>(to.size()) - 1;
    double worst = 0.0;
    std::ptrdiff_t hint = 0;
    for (const auto& p : from) {
        double best = std::numeric_limits<double>::infinity();
        std::ptrdiff_t best_index = hint;
        for (std::ptrdiff_t offset = 0; offset <= segments; ++offset) {
            bool any = false;
            for (const std::ptrdiff_t k : {hint + offset, hint - offset}) {
                if (k < 0 || k >= segments || (offset == 0 && k != hint)) {
                    continue;
                }
                any = true;
                const double d = point_segment_distance(p, to[k], to[k + 1]);
                if (d < best) {
                    best = d;
                    best_index = k;
                }
                if (offset == 0) {
                    break;
                }
            }
            if (best <= worst || !any) {
                break;
            }
        }
        hint = best_index;
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

ProlongationPoint ProlongationPoint::reduced() const
{
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) {
        t += kTwoPi;
    }
    if (t >= kTwoPi) {
        t = 0.0;
    }
    return {x, t};
}

Vec4 lorentz_X(const DiagonalMetric& m, const ProlongationPoint& p)
{
    const Eigen::Vector3d g = m.components(p.x);
    return {std::cos(p.theta) / std::sqrt(g[0]), std::sin(p.theta) / std::sqrt(g[1]), 1.0 / std::sqrt(-g[2]), 0.0};
}

Vec4 lorentz_Xdot(const DiagonalMetric& m, const ProlongationPoint& p)
{
    const Eigen::Vector3d g = m.components(p.x);
    return {-std::sin(p.theta) / std::sqrt(g[0]), std::cos(p.theta) / std::sqrt(g[1]), 0.0, 0.0};
}

Vec4 theta_direction() { return Vec4::UnitW(); }

Vec4 kernel_Z_general(const DiagonalMetric& m, const ProlongationPoint& p)
{
    const Eigen::Vector3d g = m.components(p.x);
    const Eigen::Matrix3d d = m.partials(p.x);
    const double c = std::cos(p.theta);
    const double s = std::sin(p.theta);
    const double g11 = g[0];
    const double g22 = g[1];
    const double g33 = g[2];
    const double r12 = std::sqrt(g11 * g22);
    const double r13 = std::sqrt(-g11 * g33);
    const double r23 = std::sqrt(-g22 * g33);

    const double A = d(0, 1) / (2.0 * g11 * r12) + s * d(0, 2) / (2.0 * g11 * r13);
    const double B = -d(1, 0) / (2.0 * g22 * r12) - c * d(1, 2) / (2.0 * g22 * r23);
    const double C = -s * d(2, 0) / (2.0 * g33 * r13) + c * d(2, 1) / (2.0 * g33 * r23);

    Vec4 Z = lorentz_X(m, p);
    Z[3] = A * std::sqrt(g11) * c + B * std::sqrt(g22) * s - C * std::sqrt(-g33);
    return Z;
}

Vec4 kernel_Z_separable(const DiagonalMetric& m, const ProlongationPoint& p)
{
    require_separable(m, "kernel_Z_separable");
    const Eigen::Vector3d g = m.components(p.x);
    const Eigen::Matrix3d d = m.partials(p.x);
    const double c = std::cos(p.theta);
    const double s = std::sin(p.theta);
    Vec4 Z = lorentz_X(m, p);
    Z[3] = c / (2.0 * g[0] * std::sqrt(g[1])) * d(0, 1) - s / (2.0 * g[1] * std::sqrt(g[0])) * d(1, 0);
    return Z;
}

EngelFlag engel_flag(const DiagonalMetric& m, const ProlongationPoint& p)
{
    return {lorentz_X(m, p), lorentz_Xdot(m, p), theta_direction(), kernel_Z_general(m, p)};
}

Field4 field_X(const DiagonalMetric& m)
{
    return [m](const Vec4& y) { return lorentz_X(m, ProlongationPoint::from(y)); };
}

Field4 field_Xdot(const DiagonalMetric& m)
{
    return [m](const Vec4& y) { return lorentz_Xdot(m, ProlongationPoint::from(y)); };
}

Field4 field_theta()
{
    return [](const Vec4&) { return theta_direction(); };
}

Field4 field_Z(const DiagonalMetric& m)
{
    return [m](const Vec4& y) { return kernel_Z_general(m, ProlongationPoint::from(y)); };
}

double kernel_invariance_residual(const DiagonalMetric& m, const ProlongationPoint& p, double h)
{
    return kernel_invariance_residual(m, p, h, field_Z(m));
}

double kernel_invariance_residual(const DiagonalMetric& m, const ProlongationPoint& p, double h, const Field4& Z)
{
    const Vec4 y = p.coords();
    const Field4 frame[3] = {field_X(m), field_Xdot(m), field_theta()};
    Eigen::Matrix<double, 4, 3> E;
    for (int i = 0; i < 3; ++i) {
        E.col(i) = frame[i](y);
    }
    const Eigen::MatrixXd basis = orthonormal_frame(E, 3);
    double worst = 0.0;
    for (const auto& F : frame) {
        const Vec4 b = bracket_fd<Vec4>(Z, F, y, h);
        worst = std::max(worst, residual_off_span(b, basis));
    }
    return worst;
}

RankLadder rank_ladder(const DiagonalMetric& m, const ProlongationPoint& p, double h, double threshold)
{
    const Vec4 y = p.coords();
    const Field4 X = field_X(m);
    const Field4 T = field_theta();
    const Field4 Xdot = [&](const Vec4& q) { return bracket_fd<Vec4>(T, X, q, h); };

    RankLadder out;
    Eigen::MatrixXd D(4, 2);
    D << X(y), T(y);
    out.d = numerical_rank(D, threshold, out.d_sigma);

    Eigen::MatrixXd E(4, 3);
    E << X(y), T(y), Xdot(y);
    out.e = numerical_rank(E, threshold, out.e_sigma);

    // Second-order brackets through Xdot use the analytic field to keep the
    // nested difference quotient at first depth.
    const Field4 Xdot_exact = field_Xdot(m);
    Eigen::MatrixXd F(4, 6);
    F << X(y), T(y), Xdot(y), bracket_fd<Vec4>(X, Xdot_exact, y, h), bracket_fd<Vec4>(T, Xdot_exact, y, h),
        bracket_fd<Vec4>(X, T, y, h);
    out.full = numerical_rank(F, threshold, out.full_sigma);
    return out;
}

KernelFlowTrace integrate_kernel_flow(const DiagonalMetric& m, const ProlongationPoint& p0, double s_max, double h)
{
    require_separable(m, "integrate_kernel_flow");
    if (!(h > 0.0) || !std::isfinite(s_max)) {
        throw ArgumentError("integrate_kernel_flow: step must be positive and s_max finite");
    }
    m.components(p0.x);

    KernelFlowTrace trace;
    trace.step = h;
    trace.samples.push_back({0.0, p0.reduced(), p0.theta});

    const std::size_t n = step_count(s_max, h);
    const double dir = s_max < 0.0 ? -1.0 : 1.0;
    Vec4 y = p0.coords();
    const auto f = [&m](const Vec4& state) { return separable_rhs(m, state); };
    for (std::size_t i = 0; i < n; ++i) {
        const double s0 = dir * h * static_cast<double>(i);
        const double s1 = (i + 1 == n) ? s_max : dir * h * static_cast<double>(i + 1);
        try {
            y = rk4_step<4>(f, y, s1 - s0);
        } catch (const DomainError&) {
            trace.exited = true;
            break;
        }
        if (!m.domain().contains(y.head<3>())) {
            trace.exited = true;
            break;
        }
        const ProlongationPoint p = ProlongationPoint::from(y);
        trace.samples.push_back({s1, p.reduced(), y[3]});
    }
    return trace;
}

Vec4 flow(const DiagonalMetric& m, const Vec4& y0, double s, double h)
{
    require_separable(m, "flow");
    const std::size_t n = step_count(s, h);
    const double dir = s < 0.0 ? -1.0 : 1.0;
    Vec4 y = y0;
    const auto f = [&m](const Vec4& state) { return separable_rhs(m, state); };
    for (std::size_t i = 0; i < n; ++i) {
        const double s0 = dir * h * static_cast<double>(i);
        const double s1 = (i + 1 == n) ? s : dir * h * static_cast<double>(i + 1);
        y = rk4_step<4>(f, y, s1 - s0);
        if (!m.domain().contains(y.head<3>())) {
            throw DomainError("flow: trajectory left the chart domain");
        }
    }
    return y;
}

const char* to_string(Equivalence e)
{
    switch (e) {
    case Equivalence::Equivalent:
        return "equivalent";
    case Equivalence::Distinct:
        return "distinct";
    case Equivalence::Indeterminate:
        return "indeterminate";
    }
    return "indeterminate";
}

Equivalence deprolong_equivalent(const DiagonalMetric& m, const ProlongationPoint& p, const ProlongationPoint& q,
                                 double s_window, double tol, double h)
{
    require_separable(m, "deprolong_equivalent");
    if (flow_distance(p.coords(), q) <= tol) {
        return Equivalence::Equivalent;
    }
    bool exited = false;
    double best = std::numeric_limits<double>::infinity();
    Vec4 best_state = p.coords();
    for (const double span : {s_window, -s_window}) {
        const KernelFlowTrace trace = integrate_kernel_flow(m, p, span, h);
        exited = exited || trace.exited;
        for (const auto& sample : trace.samples) {
            const Vec4 y(sample.point.x[0], sample.point.x[1], sample.point.x[2], sample.unwrapped_theta);
            const double d = flow_distance(y, q);
            if (d < best) {
                best = d;
                best_state = y;
            }
        }
    }

    // Golden-section refinement on [-h, h] around the best sample; a single
    // RK4 step of length |delta| <= h reaches each candidate.
    const auto f = [&m](const Vec4& state) { return separable_rhs(m, state); };
    const auto distance_at = [&](double delta) {
        try {
            return flow_distance(rk4_step<4>(f, best_state, delta), q);
        } catch (const DomainError&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = -h;
    double b = h;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = distance_at(c);
    double fd = distance_at(d);
    for (int it = 0; it < 80; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = distance_at(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = distance_at(d);
        }
    }
    best = std::min({best, fc, fd});

    if (best <= tol) {
        return Equivalence::Equivalent;
    }
    return exited ? Equivalence::Indeterminate : Equivalence::Distinct;
}

Eigen::Matrix<double, 3, 2> pushforward_contact_plane(const DiagonalMetric& m, const ProlongationPoint& p, double h)
{
    const Vec4 Z = require_transverse_Z(m, p);
    const Vec4 y = p.coords();
    const Vec4 Xdot = bracket_fd<Vec4>(field_theta(), field_X(m), y, h);
    Eigen::Matrix3d images;
    images.col(0) = project_along(lorentz_X(m, p), Z);
    images.col(1) = project_along(Xdot, Z);
    images.col(2) = project_along(theta_direction(), Z);
    return plane_of(images);
}

Eigen::Matrix<double, 3, 2> two_sky_plane(const DiagonalMetric& m, const ProlongationPoint& p, double s, double eps,
                                          double h)
{
    const Vec4 Z = require_transverse_Z(m, p);
    const Vec4 moved = flow(m, p.coords(), s, h);
    const Vec4 plus = flow(m, moved + eps * theta_direction(), -s, h);
    const Vec4 minus = flow(m, moved - eps * theta_direction(), -s, h);
    const Vec4 transported = (plus - minus) / (2.0 * eps);

    Eigen::Matrix<double, 3, 2> images;
    images.col(0) = project_along(theta_direction(), Z);
    images.col(1) = project_along(transported, Z);
    Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>> svd(images, Eigen::ComputeFullU);
    if (!(svd.singularValues()(1) > 1e-10)) {
        throw RankError("two_sky_plane: sky tangents are dependent");
    }
    return svd.matrixU().leftCols<2>();
}

EngelFlag cartan_prolongation_frame(const contact::VectorField& Y, const contact::VectorField& Zc,
                                    const Eigen::Vector3d& x, double t)
{
    const Eigen::Vector3d y = Y(x);
    const Eigen::Vector3d z = Zc(x);
    Eigen::Matrix<double, 3, 2> frame;
    frame << y, z;
    Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>> svd(frame);
    if (!(svd.singularValues()(1) > 1e-8)) {
        throw RankError("cartan_prolongation_frame: contact frame is degenerate");
    }
    EngelFlag flag;
    flag.X << y * std::cos(t) + z * std::sin(t), 0.0;
    flag.Xdot << -y * std::sin(t) + z * std::cos(t), 0.0;
    flag.theta_dir = Vec4::UnitW();
    flag.Z = Vec4::UnitW();
    return flag;
}

DeprolongComparison compare_with_geodesic(const DiagonalMetric& m, const ProlongationPoint& p, double s_max, double h)
{
    DeprolongComparison out;
    out.kernel = integrate_kernel_flow(m, p, s_max, h);
    out.geodesic = integrate_geodesic(m, p.x, null_cone_vector(m, p.x, p.theta), s_max, h);

    const std::size_t n = std::min(out.kernel.samples.size(), out.geodesic.samples.size());
    out.distance.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = (out.kernel.samples[i].point.x - out.geodesic.samples[i].x).norm();
        out.distance.push_back(d);
        out.max_distance = std::max(out.max_distance, d);
    }

    std::vector<Eigen::Vector3d> a;
    std::vector<Eigen::Vector3d> b;
    a.reserve(n);
    b.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        a.push_back(out.kernel.samples[i].point.x);
        b.push_back(out.geodesic.samples[i].x);
    }
    out.hausdorff = hausdorff_distance(a, b);
    return out;
}

double hausdorff_distance(const std::vector<Eigen::Vector3d>& a, const std::vector<Eigen::Vector3d>& b)
{
    if (a.empty() || b.empty()) {
        throw ArgumentError("hausdorff_distance: empty polyline");
    }
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

} // namespace nullgeo::engel
