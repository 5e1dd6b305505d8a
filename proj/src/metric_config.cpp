#include "nullgeo/metric_config.hpp"

#include "nullgeo/error.hpp"
#include "nullgeo/metrics.hpp"
#include "nullgeo/report.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace nullgeo::config {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int line, const std::string& what)
{
    throw ParseError("metric config line " + std::to_string(line) + ": " + what);
}

Box3 parse_domain(std::string_view value, int line)
{
    std::vector<double> v;
    std::size_t pos = 0;
    while (pos < value.size()) {
        while (pos < value.size() && (value[pos] == ' ' || value[pos] == '\t')) {
            ++pos;
        }
        if (pos == value.size()) {
            break;
        }
        double d = 0.0;
        const char* first = value.data() + pos;
        const char* last = value.data() + value.size();
        // from_chars rejects a leading '+'; accept it explicitly.
        if (*first == '+') {
            ++first;
        }
        const auto [end, ec] = std::from_chars(first, last, d);
        if (ec != std::errc() || (end != last && *end != ' ' && *end != '\t')) {
            fail(line, "domain expects six numbers");
        }
        v.push_back(d);
        pos = static_cast<std::size_t>(end - value.data());
    }
    if (v.size() != 6) {
        fail(line, "domain expects six numbers");
    }
    Box3 box{Eigen::Vector3d(v[0], v[2], v[4]), Eigen::Vector3d(v[1], v[3], v[5])};
    if (!(box.lo.array() < box.hi.array()).all()) {
        fail(line, "domain bounds must satisfy lo < hi");
    }
    return box;
}

std::optional<std::pair<int, int>> partial_key(std::string_view key)
{
    // dgII_dxJ
    if (key.size() == 8 && key.substr(0, 2) == "dg" && key[2] == key[3] && key.substr(4, 3) == "_dx" &&
        key[2] >= '1' && key[2] <= '3' && key[7] >= '1' && key[7] <= '3') {
        return std::pair{key[2] - '1', key[7] - '1'};
    }
    return std::nullopt;
}

std::optional<int> component_key(std::string_view key)
{
    if (key == "g11") {
        return 0;
    }
    if (key == "g22") {
        return 1;
    }
    if (key == "g33") {
        return 2;
    }
    return std::nullopt;
}

bool structurally_separable(const MetricConfig& cfg)
{
    return cfg.components.at(0).independent_of(2) && cfg.components.at(1).independent_of(2) &&
           cfg.components.at(2).independent_of(0) && cfg.components.at(2).independent_of(1);
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open metric config '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

MetricConfig parse_metric_config(std::string_view text)
{
    MetricConfig cfg;
    bool have_id = false;
    bool have_domain = false;
    bool have_separable = false;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find('\n', start), text.size());
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            if (end == text.size()) {
                break;
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail(line_no, "expected 'key = value'");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (value.empty()) {
            fail(line_no, "empty value for '" + std::string(key) + "'");
        }

        const auto parse_expr = [&](std::string_view v) {
            try {
                return expr::Expression::parse(v);
            } catch (const ParseError& e) {
                fail(line_no, e.what());
            }
        };

        if (key == "id") {
            if (have_id) {
                fail(line_no, "duplicate key 'id'");
            }
            cfg.id = std::string(value);
            have_id = true;
        } else if (key == "domain") {
            if (have_domain) {
                fail(line_no, "duplicate key 'domain'");
            }
            cfg.domain = parse_domain(value, line_no);
            have_domain = true;
        } else if (key == "separable") {
            if (have_separable) {
                fail(line_no, "duplicate key 'separable'");
            }
            if (value == "true") {
                cfg.separable = true;
            } else if (value == "false") {
                cfg.separable = false;
            } else if (value != "auto") {
                fail(line_no, "separable must be true, false or auto");
            }
            have_separable = true;
        } else if (const auto c = component_key(key)) {
            if (!cfg.components.emplace(*c, parse_expr(value)).second) {
                fail(line_no, "duplicate key '" + std::string(key) + "'");
            }
        } else if (const auto p = partial_key(key)) {
            if (!cfg.partials.emplace(*p, parse_expr(value)).second) {
                fail(line_no, "duplicate key '" + std::string(key) + "'");
            }
        } else {
            fail(line_no, "unknown key '" + std::string(key) + "'");
        }
        if (end == text.size()) {
            break;
        }
    }
    for (const char* k : {"g11", "g22", "g33"}) {
        if (!cfg.components.count(*component_key(k))) {
            throw ParseError(std::string("metric config: missing required key '") + k + "'");
        }
    }
    return cfg;
}

std::string to_text(const MetricConfig& cfg)
{
    std::ostringstream out;
    out << "id = " << cfg.id << "\n";
    for (const auto& [i, e] : cfg.components) {
        out << "g" << i + 1 << i + 1 << " = " << e.to_string() << "\n";
    }
    for (const auto& [ij, e] : cfg.partials) {
        out << "dg" << ij.first + 1 << ij.first + 1 << "_dx" << ij.second + 1 << " = " << e.to_string() << "\n";
    }
    out << "domain =";
    for (int i = 0; i < 3; ++i) {
        out << " " << report::format_double(cfg.domain.lo[i]) << " " << report::format_double(cfg.domain.hi[i]);
    }
    out << "\n";
    out << "separable = " << (cfg.separable ? (*cfg.separable ? "true" : "false") : "auto") << "\n";
    return out.str();
}

DiagonalMetric build_metric(const MetricConfig& cfg)
{
    const std::array<DiagonalMetric::Component, 3> g{cfg.components.at(0), cfg.components.at(1),
                                                     cfg.components.at(2)};

    std::optional<DiagonalMetric::Partials> partials;
    if (!cfg.partials.empty()) {
        const auto table = cfg.partials;
        const auto comps = g;
        partials = [table, comps](const ChartPoint& x) {
            Eigen::Matrix3d p;
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) {
                    if (const auto it = table.find({i, j}); it != table.end()) {
                        p(i, j) = it->second(x);
                    } else {
                        ChartPoint xp = x;
                        ChartPoint xm = x;
                        xp[j] += kMetricFdStep;
                        xm[j] -= kMetricFdStep;
                        p(i, j) = (comps[i](xp) - comps[i](xm)) / (2.0 * kMetricFdStep);
                    }
                }
            }
            return p;
        };
    }

    const bool structural = structurally_separable(cfg);
    bool separable = false;
    if (cfg.separable.value_or(true)) {
        separable = structural || DiagonalMetric(cfg.id, g, cfg.domain, false, partials).looks_separable();
        if (cfg.separable.value_or(false) && !separable) {
            throw SeparabilityError("metric config '" + cfg.id + "' is declared separable but is not");
        }
    }
    DiagonalMetric m(cfg.id, g, cfg.domain, separable, partials);
    if (!m.validate_on_grid()) {
        throw SignatureError("metric config '" + cfg.id + "' violates the (+,+,-) sign pattern on its domain");
    }
    return m;
}

DiagonalMetric load_metric(const std::string& id)
{
    if (id == "minkowski3") {
        return metrics::minkowski3();
    }
    if (id == "round-sphere") {
        return metrics::round_sphere_chart();
    }
    if (id == "warped-time") {
        return metrics::warped_time();
    }
    if (id == "skew-test") {
        return metrics::skew_test();
    }
    if (id.rfind("s2s1:c=", 0) == 0) {
        const std::string digits = id.substr(7);
        int c = 0;
        const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), c);
        if (digits.empty() || ec != std::errc() || end != digits.data() + digits.size() || c < 1) {
            throw ArgumentError("bad metric id '" + id + "': c must be a positive integer");
        }
        return metrics::s2s1_chart(c);
    }
    if (id.rfind("file:", 0) == 0) {
        return build_metric(parse_metric_config(read_file(id.substr(5))));
    }
    if (std::filesystem::is_regular_file(id)) {
        return build_metric(parse_metric_config(read_file(id)));
    }
    throw ArgumentError("unknown metric '" + id + "'");
}

} // namespace nullgeo::config
