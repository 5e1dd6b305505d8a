#pragma once

#include "nullgeo/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nullgeo::verify {

struct CheckOptions {
    int c = 1;
    /// Sample count; each check has its own default.
    std::optional<int> n;
    std::uint64_t seed = 0;
    /// Overrides the check's tolerance.
    std::optional<double> tol;
    /// Metric id for the metric-dependent checks (default s2s1:c=<c>).
    std::optional<std::string> metric;
};

struct CheckInfo {
    std::string id;
    std::string summary;
    int default_n;
    double default_tol;
};

/// Every available check, in a fixed order.
const std::vector<CheckInfo>& checks();

/// Runs one sweep. Sample generation is sequential from the seed and the
/// per-sample work is index-addressed, so the report does not depend on the
/// worker count. Throws ArgumentError for an unknown id.
report::Report run_check(const std::string& id, const CheckOptions& options);

} // namespace nullgeo::verify
