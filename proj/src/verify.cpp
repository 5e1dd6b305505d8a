#include "nullgeo/verify.hpp"

#include "nullgeo/cone.hpp"
#include "nullgeo/contact.hpp"
#include "nullgeo/engel.hpp"
#include "nullgeo/error.hpp"
#include "nullgeo/geodesic.hpp"
#include "nullgeo/metric_config.hpp"
#include "nullgeo/metrics.hpp"
#include "nullgeo/parallel.hpp"
#include "nullgeo/planes.hpp"
#include "nullgeo/quaternion.hpp"
#include "nullgeo/s2s1.hpp"
#include "nullgeo/sampling.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace nullgeo::verify {

namespace {

using report::Report;
using Rng = std::mt19937_64;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> as_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

std::vector<double> as_vector(const quat::Quaternion& q) { return {q.w, q.x, q.y, q.z}; }

std::vector<double> as_vector(const engel::ProlongationPoint& p) { return {p.x[0], p.x[1], p.x[2], p.theta}; }

DiagonalMetric metric_for(const CheckOptions& o)
{
    return config::load_metric(o.metric.value_or("s2s1:c=" + std::to_string(o.c)));
}

/// Evaluates f on every index in parallel and returns the results in order.
template <class T, class F>
std::vector<T> sweep(std::size_t n, F&& f)
{
    std::vector<T> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = f(i); });
    return out;
}

// --- intersections ------------------------------------------------------

Report check_intersections(const CheckOptions& o, int n, double tol)
{
    Rng rng(o.seed);
    std::vector<s2s1::UnitTangent> pts;
    for (int i = 0; i < n; ++i) {
        pts.push_back(s2s1::random_unit_tangent(rng));
    }
    Report rep("intersections", o.seed, tol);
    rep.set_param("c", std::to_string(o.c));
    for (const auto& p : pts) {
        const s2s1::Intersections hits = s2s1::intersection_count(p, o.c);
        double on_slice = 0.0;
        for (const double s : hits.s) {
            const double t = s2s1::null_geodesic(p, o.c, s).t;
            on_slice = std::max(on_slice, std::min(t, kTwoPi - t));
        }
        const double count_error = std::abs(hits.count() - o.c);
        rep.note_max("count_error", count_error);
        rep.note_max("gap_error", hits.max_gap_error(o.c));
        rep.add(as_vector(p.stacked()), std::max({count_error, hits.max_gap_error(o.c), on_slice}));
    }
    return rep;
}

// --- quotient -----------------------------------------------------------

Report check_quotient(const CheckOptions& o, int n, double tol)
{
    Rng rng(o.seed);
    std::vector<s2s1::UnitTangent> pts;
    for (int i = 0; i < n; ++i) {
        pts.push_back(s2s1::random_unit_tangent(rng));
    }
    const int c = o.c;
    const auto classes = sweep<s2s1::NullGeodesicClass>(pts.size(), [&](std::size_t i) {
        return s2s1::canonical_class(pts[i], c);
    });
    const auto constant = sweep<int>(pts.size(), [&](std::size_t i) {
        for (int j = 1; j < c; ++j) {
            if (!(s2s1::canonical_class(s2s1::zc_action(pts[i], c, j), c) == classes[i])) {
                return 0;
            }
        }
        return 1;
    });

    // Collision search: sort by first coordinate and compare within a 1e-6 band.
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return classes[a].rep.x[0] < classes[b].rep.x[0];
    });
    std::vector<int> collided(pts.size(), 0);
    double separation = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < order.size(); ++a) {
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            const auto& ra = classes[order[a]].rep;
            const auto& rb = classes[order[b]].rep;
            if (rb.x[0] - ra.x[0] > 1e-6) {
                break;
            }
            const double d = ra.distance(rb);
            separation = std::min(separation, d);
            if (d <= 1e-6) {
                collided[order[a]] = collided[order[b]] = 1;
            }
        }
    }

    Report rep("quotient", o.seed, tol);
    rep.set_param("c", std::to_string(c));
    rep.set_param("residual", "orbit-constancy failures + collisions per sample");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        rep.add(as_vector(pts[i].stacked()), (1 - constant[i]) + collided[i]);
    }
    rep.note_min("nearby_class_separation", separation);
    return rep;
}

// --- double cover -------------------------------------------------------

Report check_double_cover(const CheckOptions& o, int n, double tol)
{
    Rng rng(o.seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    struct Case {
        quat::Quaternion q;
        quat::FramePair frame;
    };
    std::vector<Case> cases;
    for (int i = 0; i < n; ++i) {
        const quat::FramePair frame = (i % 2 == 0) ? quat::FramePair{Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ()}
                                                   : sampling::frame_pair(rng);
        const auto u = quat::UnitImaginary::normalized(frame.u);
        const auto v = quat::UnitImaginary::normalized(frame.v);
        const auto n_axis = quat::UnitImaginary::normalized(frame.u.cross(frame.v));
        quat::Quaternion q;
        // Every fourth sample lands in one of the colinear branches of the
        // inverse construction, optionally nudged inside the tolerance band.
        switch (i % 8) {
        case 3: // target u = frame u
            q = quat::exp_pure(angle(rng), u);
            break;
        case 7: // target u = -frame u
            q = quat::exp_pure(std::numbers::pi / 2, n_axis) * quat::exp_pure(angle(rng), u);
            break;
        case 5: // target u = frame u and target v = -frame v
            q = quat::exp_pure(std::numbers::pi / 2, u) * quat::exp_pure(1e-11 * angle(rng), v);
            break;
        case 1: // target equals frame up to a rotation below the colinear threshold
            q = quat::exp_pure(1e-11 * angle(rng), v) * quat::exp_pure(angle(rng), u);
            break;
        default:
            q = sampling::unit_quaternion(rng);
        }
        cases.push_back({q.normalized(), frame});
    }
    Report rep("double-cover", o.seed, tol);
    for (const auto& cs : cases) {
        const quat::FramePair target = quat::phi(cs.q, cs.frame);
        const quat::Quaternion back = quat::phi_inverse(target, cs.frame);
        const double antipodal = std::min(quat::distance(back, cs.q), quat::distance(back, -cs.q));
        const double image = quat::phi(back, cs.frame).distance(target);
        rep.add(as_vector(cs.q), std::max(antipodal, image));
    }
    return rep;
}

// --- commuting diagram --------------------------------------------------

Report check_commuting(const CheckOptions& o, int n, double tol)
{
    Rng rng(o.seed);
    Report rep("commuting", o.seed, tol);
    for (int i = 0; i < n; ++i) {
        const quat::Quaternion q = sampling::unit_quaternion(rng);
        const quat::FramePair frame = (i % 2 == 0) ? quat::FramePair{Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ()}
                                                   : sampling::frame_pair(rng);
        rep.add(as_vector(q), quat::hopf_commutes(q, frame));
    }
    return rep;
}

// --- lens descent -------------------------------------------------------

/// 0 when the Z_{2c} orbit of q has 2c elements, its image under phi_{(j,k)}
/// has c elements equal (as a set, within 1e-10) to the Z_c orbit, and all
/// images share one class up to the rounding grid; 1 otherwise.
int lens_orbit_mismatch(const quat::Quaternion& q, int c)
{
    const quat::LensGenerator gen = quat::lens_generator(2 * c);
    const quat::FramePair base{Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ()};
    std::vector<quat::Quaternion> qs{q};
    for (int k = 1; k < 2 * c; ++k) {
        qs.push_back(gen(qs.back()));
    }
    for (std::size_t a = 0; a < qs.size(); ++a) {
        for (std::size_t b = a + 1; b < qs.size(); ++b) {
            if (quat::distance(qs[a], qs[b]) <= 1e-6) {
                return 1;
            }
        }
    }
    std::vector<s2s1::UnitTangent> images;
    for (const auto& p : qs) {
        const quat::FramePair f = quat::phi(p, base);
        images.push_back(s2s1::UnitTangent::make(f.u, f.v));
    }
    std::vector<s2s1::UnitTangent> distinct;
    for (const auto& im : images) {
        const bool seen = std::any_of(distinct.begin(), distinct.end(),
                                      [&](const s2s1::UnitTangent& d) { return d.distance(im) <= 1e-6; });
        if (!seen) {
            distinct.push_back(im);
        }
    }
    if (static_cast<int>(distinct.size()) != c) {
        return 1;
    }
    const auto expected = s2s1::orbit(images.front(), c);
    for (const auto& im : images) {
        const bool found = std::any_of(expected.begin(), expected.end(),
                                       [&](const s2s1::UnitTangent& e) { return e.distance(im) <= 1e-10; });
        if (!found) {
            return 1;
        }
    }
    const s2s1::NullGeodesicClass cls = s2s1::canonical_class(images.front(), c);
    for (const auto& im : images) {
        if (s2s1::canonical_class(im, c).rep.distance(cls.rep) > 8.0 * s2s1::kClassGrid) {
            return 1;
        }
    }
    return 0;
}

Report check_lens_descent(const CheckOptions& o, int n, double tol)
{
    Rng rng(o.seed);
    Report rep("lens-descent", o.seed, tol);
    rep.set_param("c", std::to_string(o.c));
    for (int i = 0; i < n; ++i) {
        const quat::Quaternion q = sampling::unit_quaternion(rng);
        const double residual = quat::lens_descends(q, o.c);
        const int mismatch = lens_orbit_mismatch(q, o.c);
        rep.note_max("descent_residual", residual);
        rep.note_max("orbit_mismatches", mismatch);
        rep.add(as_vector(q), std::max(residual, static_cast<double>(mismatch)));
    }
    return rep;
}

// --- contact nondegeneracy of chi ---------------------------------------

Report check_contact_nondegeneracy(const CheckOptions& o, int n, double tol)
{
    const DiagonalMetric round = metrics::round_sphere_chart();
    const contact::OneFormField alpha = contact::unit_cotangent_form(round);
    const int side = std::max(2, static_cast<int>(std::lround(std::cbrt(static_cast<double>(n)))));
    std::vector<contact::Point> grid;
    for (int a = 0; a < side; ++a) {
        for (int b = 0; b < side; ++b) {
            for (int k = 0; k < side; ++k) {
                grid.push_back(Eigen::Vector3d(-1.5 + 3.0 * (a + 0.5) / side, -1.5 + 3.0 * (b + 0.5) / side,
                                               kTwoPi * (k + 0.5) / side));
            }
        }
    }
    const contact::WedgeReport wedge = contact::contact_condition_3d(alpha, grid);
    Report rep("contact-nondegeneracy", o.seed, tol);
    rep.set_param("grid", std::to_string(side) + "^3 on [-1.5,1.5]^2 x [0,2pi)");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        rep.add(as_vector(grid[i]), std::abs(wedge.coefficients[i] - contact::unit_cotangent_coefficient(round, grid[i])));
    }
    rep.note_min("min_abs_coefficient", wedge.min_abs);

    const contact::OneFormField dz{3, [](const contact::Point&) { return Eigen::Vector3d(0.0, 0.0, 1.0).eval(); },
                                   std::nullopt};
    for (const double coef : contact::contact_condition_3d(dz, grid).coefficients) {
        rep.note_max("integrable_control_max_abs", std::abs(coef));
    }
    return rep;
}

// --- engel flag ---------------------------------------------------------

Report check_engel_flag(const CheckOptions& o, int n, double tol)
{
    std::vector<DiagonalMetric> ms;
    if (o.metric) {
        ms.push_back(config::load_metric(*o.metric));
    } else {
        ms = {metrics::minkowski3(), metrics::s2s1_chart(o.c), metrics::warped_time(), metrics::skew_test()};
    }
    Report rep("engel-flag", o.seed, tol);
    rep.set_param("residual", "failed ladder levels + formula mismatches per point");
    Rng rng(o.seed);
    for (const auto& m : ms) {
        std::vector<engel::ProlongationPoint> pts;
        for (int i = 0; i < n; ++i) {
            pts.push_back(sampling::prolongation_point(m, rng));
        }
        struct Out {
            engel::RankLadder ladder;
            double formula_gap = 0.0;
            double off_d = 0.0;
        };
        const auto results = sweep<Out>(pts.size(), [&](std::size_t i) {
            Out out;
            out.ladder = engel::rank_ladder(m, pts[i]);
            const engel::Vec4 Zg = engel::kernel_Z_general(m, pts[i]);
            if (m.separable()) {
                out.formula_gap = (Zg - engel::kernel_Z_separable(m, pts[i])).cwiseAbs().maxCoeff();
            }
            Eigen::Matrix<double, 4, 2> D;
            D << engel::lorentz_X(m, pts[i]), engel::theta_direction();
            out.off_d = residual_off_span(Zg, orthonormal_frame(D, 2));
            return out;
        });
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Out& r = results[i];
            int failures = (r.ladder.d != 2) + (r.ladder.e != 3) + (r.ladder.full != 4);
            failures += r.formula_gap > 1e-12;
            failures += r.off_d > 1e-12;
            rep.note_max("z_formula_gap", r.formula_gap);
            rep.note_max("z_off_D", r.off_d);
            rep.note_min("min_sigma_full", r.ladder.full_sigma);
            rep.add(as_vector(pts[i]), failures);
        }
        rep.set_param("metric." + m.id(), std::to_string(n) + " points");
    }
    return rep;
}

// --- kernel invariance --------------------------------------------------

Report check_kernel_invariance(const CheckOptions& o, int n, double tol)
{
    const DiagonalMetric m = metric_for(o);
    Rng rng(o.seed);
    std::vector<engel::ProlongationPoint> pts;
    for (int i = 0; i < n; ++i) {
        pts.push_back(sampling::prolongation_point(m, rng));
    }
    struct Out {
        double residual;
        double control;
    };
    const auto results = sweep<Out>(pts.size(), [&](std::size_t i) {
        const engel::Field4 shifted = [&m](const engel::Vec4& y) {
            return engel::Vec4(engel::kernel_Z_general(m, engel::ProlongationPoint::from(y)) + engel::theta_direction());
        };
        return Out{engel::kernel_invariance_residual(m, pts[i], 1e-5),
                   engel::kernel_invariance_residual(m, pts[i], 1e-5, shifted)};
    });
    Report rep("kernel-invariance", o.seed, tol);
    rep.set_param("metric", m.id());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        rep.add(as_vector(pts[i]), results[i].residual);
        rep.note_min("negative_control_min", results[i].control);
    }
    return rep;
}

// --- deprolongation -----------------------------------------------------

bool constant_time_component(const DiagonalMetric& m)
{
    const Box3& box = m.domain();
    const double ref = m.components(0.5 * (box.lo + box.hi))[2];
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            for (int k = 0; k < 5; ++k) {
                const Eigen::Vector3d t((i + 0.5) / 5, (j + 0.5) / 5, (k + 0.5) / 5);
                const ChartPoint x = box.lo + t.cwiseProduct(box.hi - box.lo);
                if (m.components(x)[2] != ref) {
                    return false;
                }
            }
        }
    }
    return true;
}

Report check_deprolong(const CheckOptions& o, int n, std::optional<double> tol)
{
    const DiagonalMetric m = metric_for(o);
    if (!m.separable()) {
        throw SeparabilityError("deprolong check needs a separable metric, got '" + m.id() + "'");
    }
    const bool pointwise = constant_time_component(m);
    Rng rng(o.seed);
    std::vector<engel::ProlongationPoint> pts;
    for (int i = 0; i < n; ++i) {
        pts.push_back(sampling::prolongation_point(m, rng));
    }
    struct Out {
        double max_distance;
        double hausdorff;
        bool exited;
    };
    const auto results = sweep<Out>(pts.size(), [&](std::size_t i) {
        const engel::DeprolongComparison cmp = engel::compare_with_geodesic(m, pts[i], kTwoPi, 1e-3);
        return Out{cmp.max_distance, cmp.hausdorff, cmp.kernel.exited || cmp.geodesic.exited};
    });
    Report rep("deprolong", o.seed, tol.value_or(pointwise ? 1e-6 : 1e-5));
    rep.set_param("metric", m.id());
    rep.set_param("residual", pointwise ? "pointwise distance" : "image Hausdorff distance");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        rep.add(as_vector(pts[i]), pointwise ? results[i].max_distance : results[i].hausdorff);
        rep.note_max("pointwise_distance", results[i].max_distance);
        rep.note_max("hausdorff", results[i].hausdorff);
        rep.note_max("truncated_traces", results[i].exited ? 1.0 : 0.0);
    }
    return rep;
}

// --- pushforward contact plane ------------------------------------------

Report check_pushforward(const CheckOptions& o, int n, double tol)
{
    const DiagonalMetric m = metric_for(o);
    Rng rng(o.seed);
    std::vector<engel::ProlongationPoint> pts;
    for (int i = 0; i < n; ++i) {
        pts.push_back(sampling::prolongation_point(m, rng));
    }
    struct Out {
        double angle;
        double sky;
    };
    const auto results = sweep<Out>(pts.size(), [&](std::size_t i) {
        const Eigen::Matrix<double, 3, 2> pushed = engel::pushforward_contact_plane(m, pts[i]);
        const Eigen::Matrix<double, 3, 2> skies = engel::two_sky_plane(m, pts[i]);
        return Out{max_principal_angle(pushed, skies), residual_off_span(Eigen::Vector3d::UnitZ(), pushed)};
    });
    Report rep("pushforward", o.seed, tol);
    rep.set_param("metric", m.id());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        rep.add(as_vector(pts[i]), std::max(results[i].angle, results[i].sky));
        rep.note_max("plane_angle", results[i].angle);
        rep.note_max("sky_membership", results[i].sky);
    }
    return rep;
}

// --- cone reconstruction ------------------------------------------------

Report check_cone(const CheckOptions& o, int n, double tol)
{
    Rng rng(o.seed);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    Report rep("cone", o.seed, tol);
    for (int i = 0; i < n; ++i) {
        Eigen::Matrix3d A;
        const Eigen::Matrix3d G0 = sampling::lorentz_quadric(rng, &A);
        const Eigen::Matrix3d Ainv = A.inverse();
        const double offset = phase(rng);
        std::vector<TangentVector> samples;
        for (int k = 0; k < 8; ++k) {
            const double a = offset + kTwoPi * k / 8;
            samples.push_back(Ainv * Eigen::Vector3d(std::cos(a), std::sin(a), 1.0));
        }
        const ConeQuadric G = metric_from_cone(samples);
        const Eigen::Matrix3d diff = G.G - G0;
        rep.add({G0(0, 0), G0(0, 1), G0(0, 2), G0(1, 1), G0(1, 2), G0(2, 2)}, diff.cwiseAbs().maxCoeff());
    }
    return rep;
}

// --- Minkowski baseline -------------------------------------------------

Report check_minkowski(const CheckOptions& o, int n, double tol)
{
    const DiagonalMetric m = metrics::minkowski3();
    const DiagonalMetric fd = m.without_partials();
    Rng rng(o.seed);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    std::uniform_real_distribution<double> vel(-1.0, 1.0);
    Report rep("minkowski", o.seed, tol);
    for (int i = 0; i < n; ++i) {
        const ChartPoint x(coord(rng), coord(rng), coord(rng));
        const TangentVector v(vel(rng), vel(rng), vel(rng));
        const double analytic = christoffel(m, x).max_abs();
        const double numeric = christoffel(fd, x).max_abs();
        const GeodesicTrace trace = integrate_geodesic(m, x, v, 1.0, 1e-3);
        double straight = 0.0;
        for (const auto& s : trace.samples) {
            straight = std::max({straight, (s.x - (x + s.s * v)).cwiseAbs().maxCoeff(), (s.v - v).cwiseAbs().maxCoeff()});
        }
        rep.note_max("christoffel_analytic", analytic);
        rep.note_max("christoffel_fd", numeric);
        rep.note_max("straight_line_deviation", straight);
        Eigen::VectorXd point(6);
        point << x, v;
        rep.add(as_vector(point), std::max({analytic, numeric, straight}));
    }
    return rep;
}

} // namespace

const std::vector<CheckInfo>& checks()
{
    static const std::vector<CheckInfo> table = {
        {"intersections", "crossings of t = 0 along g_c null geodesics", 50, 1e-9},
        {"quotient", "canonical classes constant on Z_c orbits and collision-free", 1000, 0.5},
        {"double-cover", "phi_inverse(phi(q)) = +-q including colinear branches", 1000, 1e-10},
        {"commuting", "f o phi = hopf(., u x v)", 1000, 1e-12},
        {"lens-descent", "Z_2c action on S^3 descends to the Z_c action on ST S^2", 100, 1e-10},
        {"contact-nondegeneracy", "alpha ^ d alpha of the unit cotangent form", 1000, 1e-6},
        {"contact-Nc", "two-sky plane equals the canonical contact plane", 100, 1e-5},
        {"engel-flag", "Engel rank ladder and kernel formulas", 200, 0.5},
        {"kernel-invariance", "[Z, E] contained in E", 100, 1e-4},
        {"deprolong", "kernel flow projects onto null geodesics", 20, 1e-6},
        {"pushforward", "projected E equals the two-sky plane", 100, 1e-5},
        {"cone", "Lorentz quadric recovered from its null cone", 100, 1e-8},
        {"minkowski", "flat baseline: vanishing symbols, straight geodesics", 100, 1e-10},
    };
    return table;
}

Report run_check(const std::string& id, const CheckOptions& o)
{
    const auto& table = checks();
    const auto it = std::find_if(table.begin(), table.end(), [&](const CheckInfo& c) { return c.id == id; });
    if (it == table.end()) {
        throw ArgumentError("unknown check '" + id + "'");
    }
    if (o.c < 1) {
        throw InvalidOrderError("c must be >= 1");
    }
    const int n = o.n.value_or(it->default_n);
    if (n < 1) {
        throw ArgumentError("sample count must be positive");
    }
    const double tol = o.tol.value_or(it->default_tol);

    Report rep = [&]() -> Report {
        if (id == "intersections") return check_intersections(o, n, tol);
        if (id == "quotient") return check_quotient(o, n, tol);
        if (id == "double-cover") return check_double_cover(o, n, tol);
        if (id == "commuting") return check_commuting(o, n, tol);
        if (id == "lens-descent") return check_lens_descent(o, n, tol);
        if (id == "contact-nondegeneracy") return check_contact_nondegeneracy(o, n, tol);
        if (id == "contact-Nc") return s2s1::verify_contact_on_Nc(o.c, n, o.seed, tol);
        if (id == "engel-flag") return check_engel_flag(o, n, tol);
        if (id == "kernel-invariance") return check_kernel_invariance(o, n, tol);
        if (id == "deprolong") return check_deprolong(o, n, o.tol);
        if (id == "pushforward") return check_pushforward(o, n, tol);
        if (id == "cone") return check_cone(o, n, tol);
        return check_minkowski(o, n, tol);
    }();
    return rep;
}

} // namespace nullgeo::verify
