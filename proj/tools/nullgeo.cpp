// Command-line driver: geodesic traces, verification sweeps and
// deprolongation comparisons. Exit status 0 on success or passing checks,
// 1 on a failed check, 2 on usage or configuration errors.

#include "nullgeo/engel.hpp"
#include "nullgeo/error.hpp"
#include "nullgeo/geodesic.hpp"
#include "nullgeo/metric_config.hpp"
#include "nullgeo/report.hpp"
#include "nullgeo/trace.hpp"
#include "nullgeo/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace nullgeo;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_output(const std::optional<std::string>& path, const std::string& text)
{
    if (!path) {
        std::cout << text;
        return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out) {
        throw UsageError("cannot open output file '" + *path + "'");
    }
    out << text;
}

std::string join(const std::vector<double>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + report::format_double(v[i]);
    }
    return s;
}

/// "dir/run.jsonl" + "geodesic" -> "dir/run.geodesic.jsonl"
std::string companion_path(const std::string& path, const std::string& tag)
{
    const std::filesystem::path p(path);
    std::filesystem::path out = p.parent_path() / p.stem();
    out += "." + tag;
    out += p.extension();
    return out.string();
}

struct GeodesicArgs {
    std::string metric;
    std::vector<double> x0;
    std::vector<double> v0;
    std::optional<double> theta;
    double smax = 1.0;
    double step = 1e-3;
    std::string format = "json";
    std::optional<std::string> out;
};

int run_geodesic(const GeodesicArgs& a)
{
    if (a.smax < 0.0) {
        throw UsageError("--smax must be nonnegative");
    }
    if (a.v0.empty() == !a.theta.has_value()) {
        throw UsageError("give exactly one of --v0 and --theta");
    }
    const DiagonalMetric m = config::load_metric(a.metric);
    const ChartPoint x0(a.x0[0], a.x0[1], a.x0[2]);
    const TangentVector v0 = a.theta ? null_cone_vector(m, x0, *a.theta) : TangentVector(a.v0[0], a.v0[1], a.v0[2]);
    const GeodesicTrace g = integrate_geodesic(m, x0, v0, a.smax, a.step);

    trace::TraceFile file;
    file.kind = trace::TraceKind::Geodesic;
    file.metric_id = m.id();
    file.truncated = g.exited;
    file.params["x0"] = join(a.x0);
    file.params["v0"] = join({v0[0], v0[1], v0[2]});
    if (a.theta) {
        file.params["theta"] = report::format_double(*a.theta);
    }
    file.params["smax"] = report::format_double(a.smax);
    file.params["step"] = report::format_double(a.step);
    file.params["max_abs_norm_sq"] = report::format_double(g.max_abs_norm_sq(m));
    file.params["length_drift"] = report::format_double(g.length_drift(m));
    for (const auto& s : g.samples) {
        file.rows.push_back({s.s, s.x[0], s.x[1], s.x[2], s.v[0], s.v[1], s.v[2]});
    }
    write_output(a.out, file.serialize(report::parse_format(a.format)));
    return kExitPass;
}

struct VerifyArgs {
    std::string check;
    int c = 1;
    std::optional<int> n;
    std::uint64_t seed = 0;
    std::optional<double> tol;
    std::optional<std::string> metric;
    std::string format = "json";
    std::optional<std::string> out;
};

int run_verify(const VerifyArgs& a)
{
    const report::Format format = report::parse_format(a.format);
    verify::CheckOptions o;
    o.c = a.c;
    o.n = a.n;
    o.seed = a.seed;
    o.tol = a.tol;
    o.metric = a.metric;
    const report::Report rep = verify::run_check(a.check, o);
    write_output(a.out, rep.serialize(format));
    return rep.pass() ? kExitPass : kExitFail;
}

struct DeprolongArgs {
    std::string metric;
    std::vector<double> x0;
    double theta = 0.0;
    double smax = 2.0 * std::numbers::pi;
    double step = 1e-3;
    std::string format = "json";
    std::optional<std::string> out;
};

int run_deprolong(const DeprolongArgs& a)
{
    if (a.smax < 0.0) {
        throw UsageError("--smax must be nonnegative");
    }
    const report::Format format = report::parse_format(a.format);
    const DiagonalMetric m = config::load_metric(a.metric);
    if (!m.separable()) {
        throw SeparabilityError("metric '" + m.id() + "' is not separable");
    }
    const engel::ProlongationPoint p{ChartPoint(a.x0[0], a.x0[1], a.x0[2]), a.theta};
    const engel::DeprolongComparison cmp = engel::compare_with_geodesic(m, p, a.smax, a.step);

    std::map<std::string, std::string> params{{"x0", join(a.x0)},
                                              {"theta", report::format_double(a.theta)},
                                              {"smax", report::format_double(a.smax)},
                                              {"step", report::format_double(a.step)}};

    trace::TraceFile kernel;
    kernel.kind = trace::TraceKind::KernelFlow;
    kernel.metric_id = m.id();
    kernel.params = params;
    kernel.truncated = cmp.kernel.exited;
    for (const auto& s : cmp.kernel.samples) {
        kernel.rows.push_back({s.s, s.point.x[0], s.point.x[1], s.point.x[2], s.point.theta});
    }

    trace::TraceFile geodesic;
    geodesic.kind = trace::TraceKind::Geodesic;
    geodesic.metric_id = m.id();
    geodesic.params = params;
    geodesic.truncated = cmp.geodesic.exited;
    for (const auto& s : cmp.geodesic.samples) {
        geodesic.rows.push_back({s.s, s.x[0], s.x[1], s.x[2], s.v[0], s.v[1], s.v[2]});
    }

    trace::SeriesFile distance;
    distance.name = "deprolong_distance";
    distance.summary = {{"max_distance", cmp.max_distance}, {"hausdorff", cmp.hausdorff}};
    distance.columns = {"s", "distance"};
    for (std::size_t i = 0; i < cmp.distance.size(); ++i) {
        distance.rows.push_back({cmp.kernel.samples[i].s, cmp.distance[i]});
    }

    if (a.out) {
        write_output(*a.out, kernel.serialize(format));
        write_output(companion_path(*a.out, "geodesic"), geodesic.serialize(format));
        write_output(companion_path(*a.out, "distance"), distance.serialize(format));
    }
    std::cout << "metric=" << m.id() << " max_distance=" << report::format_double(cmp.max_distance)
              << " hausdorff=" << report::format_double(cmp.hausdorff)
              << " truncated=" << ((cmp.kernel.exited || cmp.geodesic.exited) ? "true" : "false") << "\n";
    return kExitPass;
}

std::string check_list()
{
    std::string s = "Checks:";
    for (const auto& c : verify::checks()) {
        s += "\n  " + c.id + "  " + c.summary;
    }
    return s;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Null geodesics, contact structures and Engel deprolongation of 3D separable spacetimes"};
    app.require_subcommand(1);

    GeodesicArgs g;
    auto* geo = app.add_subcommand("geodesic", "Integrate a geodesic and write its trace");
    geo->add_option("--metric", g.metric, "minkowski3 | s2s1:c=<n> | round-sphere | warped-time | skew-test | file:<path>")
        ->required();
    geo->add_option("--x0", g.x0, "initial chart point x1,x2,x3")->expected(3)->delimiter(',')->required();
    auto* v0 = geo->add_option("--v0", g.v0, "initial velocity v1,v2,v3")->expected(3)->delimiter(',');
    geo->add_option("--theta", g.theta, "launch along the null direction at this angle")->excludes(v0);
    geo->add_option("--smax", g.smax, "parameter length")->capture_default_str();
    geo->add_option("--step", g.step, "RK4 step")->capture_default_str()->check(CLI::PositiveNumber);
    geo->add_option("--format", g.format, "json | csv")->capture_default_str();
    geo->add_option("--out", g.out, "output file (default stdout)");

    VerifyArgs v;
    auto* ver = app.add_subcommand("verify", "Run a verification sweep and write its report");
    ver->footer(check_list());
    ver->add_option("check", v.check, "check id")->required();
    ver->add_option("--c", v.c, "order of the Z_c action")->capture_default_str();
    ver->add_option("--n", v.n, "number of samples");
    ver->add_option("--seed", v.seed, "random seed")->capture_default_str();
    ver->add_option("--tol", v.tol, "override the check tolerance");
    ver->add_option("--metric", v.metric, "metric for metric-dependent checks");
    ver->add_option("--format", v.format, "json | csv")->capture_default_str();
    ver->add_option("--out", v.out, "output file (default stdout)");

    DeprolongArgs d;
    auto* dep = app.add_subcommand("deprolong", "Compare the kernel flow with the null geodesic it should project to");
    dep->add_option("--metric", d.metric, "separable metric id")->required();
    dep->add_option("--x0", d.x0, "chart point x1,x2,x3")->expected(3)->delimiter(',')->required();
    dep->add_option("--theta", d.theta, "null direction angle")->capture_default_str();
    dep->add_option("--smax", d.smax, "flow length")->capture_default_str();
    dep->add_option("--step", d.step, "RK4 step")->capture_default_str()->check(CLI::PositiveNumber);
    dep->add_option("--format", d.format, "json | csv")->capture_default_str();
    dep->add_option("--out", d.out, "kernel trace file; companions get .geodesic and .distance tags");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*geo) {
            return run_geodesic(g);
        }
        if (*ver) {
            return run_verify(v);
        }
        return run_deprolong(d);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nullgeo::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
