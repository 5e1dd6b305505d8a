#pragma once

#include "nullgeo/report.hpp"

#include <map>
#include <string>
#include <vector>

namespace nullgeo::trace {

enum class TraceKind { Geodesic, KernelFlow, Sky, GreatCircle };

const char* to_string(TraceKind kind);

/// Columns every record of the given kind carries, s first.
std::vector<std::string> columns_for(TraceKind kind);

/// Sampled curve with a header describing how it was produced.
/// Rows are strictly increasing in s and match the column arity.
struct TraceFile {
    TraceKind kind = TraceKind::Geodesic;
    std::string metric_id;
    std::map<std::string, std::string> params;
    bool truncated = false;
    std::vector<std::vector<double>> rows;

    /// Throws ArgumentError on arity mismatch or non-increasing s.
    void validate() const;
    /// Header line followed by one record per sample (json), or commented
    /// header plus a CSV table (csv).
    std::string serialize(report::Format format) const;
};

/// Numeric series keyed by s (used for distance tables next to traces).
struct SeriesFile {
    std::string name;
    std::map<std::string, double> summary;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::string serialize(report::Format format) const;
};

} // namespace nullgeo::trace
