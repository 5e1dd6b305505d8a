#include "nullgeo/trace.hpp"

#include "nullgeo/error.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace nullgeo::trace {

namespace {

std::string csv_table(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
    }
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << report::format_double(row[i]);
        }
        out << "\n";
    }
    return out.str();
}

std::string json_records(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows)
{
    std::string out;
    for (const auto& row : rows) {
        nlohmann::ordered_json rec;
        for (std::size_t i = 0; i < row.size(); ++i) {
            rec[columns[i]] = row[i];
        }
        out += rec.dump();
        out += "\n";
    }
    return out;
}

} // namespace

const char* to_string(TraceKind kind)
{
    switch (kind) {
    case TraceKind::Geodesic:
        return "geodesic";
    case TraceKind::KernelFlow:
        return "kernel_flow";
    case TraceKind::Sky:
        return "sky";
    case TraceKind::GreatCircle:
        return "great_circle";
    }
    return "geodesic";
}

std::vector<std::string> columns_for(TraceKind kind)
{
    switch (kind) {
    case TraceKind::Geodesic:
        return {"s", "x1", "x2", "x3", "v1", "v2", "v3"};
    case TraceKind::KernelFlow:
        return {"s", "x1", "x2", "x3", "theta"};
    case TraceKind::Sky:
        return {"s", "x1", "x2", "x3", "u1", "u2", "u3"};
    case TraceKind::GreatCircle:
        return {"s", "y1", "y2", "y3"};
    }
    return {};
}

void TraceFile::validate() const
{
    const std::size_t arity = columns_for(kind).size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != arity) {
            throw ArgumentError("trace row " + std::to_string(i) + " has the wrong number of columns");
        }
        if (i > 0 && !(rows[i][0] > rows[i - 1][0])) {
            throw ArgumentError("trace samples are not strictly increasing in s");
        }
    }
}

std::string TraceFile::serialize(report::Format format) const
{
    validate();
    const std::vector<std::string> columns = columns_for(kind);
    if (format == report::Format::Json) {
        nlohmann::ordered_json header;
        header["kind"] = to_string(kind);
        header["metric_id"] = metric_id;
        header["params"] = params;
        header["truncated"] = truncated;
        header["columns"] = columns;
        return header.dump() + "\n" + json_records(columns, rows);
    }
    std::ostringstream out;
    out << "# kind=" << to_string(kind) << "\n";
    out << "# metric_id=" << metric_id << "\n";
    for (const auto& [k, v] : params) {
        out << "# param." << k << "=" << v << "\n";
    }
    out << "# truncated=" << (truncated ? "true" : "false") << "\n";
    return out.str() + csv_table(columns, rows);
}

std::string SeriesFile::serialize(report::Format format) const
{
    if (format == report::Format::Json) {
        nlohmann::ordered_json header;
        header["series"] = name;
        header["summary"] = summary;
        header["columns"] = columns;
        return header.dump() + "\n" + json_records(columns, rows);
    }
    std::ostringstream out;
    out << "# series=" << name << "\n";
    for (const auto& [k, v] : summary) {
        out << "# summary." << k << "=" << report::format_double(v) << "\n";
    }
    return out.str() + csv_table(columns, rows);
}

} // namespace nullgeo::trace
