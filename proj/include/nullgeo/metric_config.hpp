#pragma once

#include "nullgeo/expr.hpp"
#include "nullgeo/metric.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace nullgeo::config {

/// Text description of a diagonal metric.
///
///   # comment
///   id = warped
///   g11 = 4/(1+x1^2+x2^2)^2
///   g22 = 4/(1+x1^2+x2^2)^2
///   g33 = -(1 + x3^2/4)
///   dg33_dx3 = -x3/2                      optional analytic partials
///   domain = -20 20 -20 20 -100 100       x1 lo hi, x2 lo hi, x3 lo hi
///   separable = auto                      true | false | auto
struct MetricConfig {
    std::string id = "file";
    std::map<int, expr::Expression> components;
    /// (i, j) -> d g_ii / d x_j, 0-based
    std::map<std::pair<int, int>, expr::Expression> partials;
    Box3 domain = Box3::everywhere();
    /// nullopt means detect.
    std::optional<bool> separable;
};

/// Throws ParseError naming the line on any malformed, unknown, duplicate or
/// missing entry.
MetricConfig parse_metric_config(std::string_view text);

/// Text that parses back to an equivalent configuration.
std::string to_text(const MetricConfig& cfg);

/// Builds the metric. Missing partial entries fall back to central differences
/// of their component when at least one partial is given. Throws
/// SeparabilityError when separability is declared but the components
/// depend on the wrong coordinates.
DiagonalMetric build_metric(const MetricConfig& cfg);

/// Resolves a metric id: minkowski3, s2s1:c=<n>, round-sphere, warped-time,
/// skew-test, file:<path>, or the path of an existing config file. Throws ArgumentError for unknown ids and
/// ParseError for unreadable or malformed files.
DiagonalMetric load_metric(const std::string& id);

} // namespace nullgeo::config
