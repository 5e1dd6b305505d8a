#include "nullgeo/report.hpp"

#include "nullgeo/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace nullgeo::report {

namespace {

bool worse(const Offender& a, const Offender& b)
{
    if (a.residual != b.residual) {
        return a.residual > b.residual;
    }
    return a.index < b.index;
}

nlohmann::ordered_json number_or_string(double v)
{
    if (std::isfinite(v)) {
        return v;
    }
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

} // namespace

Format parse_format(const std::string& name)
{
    if (name == "json") {
        return Format::Json;
    }
    if (name == "csv") {
        return Format::Csv;
    }
    throw ArgumentError("unknown output format '" + name + "' (expected json or csv)");
}

Report::Report(std::string check_id, std::uint64_t seed, double tolerance, std::size_t keep_worst)
    : check_id_(std::move(check_id)), seed_(seed), tolerance_(tolerance), keep_(keep_worst)
{
}

void Report::add(std::vector<double> point, double residual)
{
    if (std::isnan(residual)) {
        residual = std::numeric_limits<double>::infinity();
    }
    Offender o{n_samples_++, std::move(point), residual};
    max_residual_ = std::max(max_residual_, residual);
    const auto pos = std::lower_bound(worst_.begin(), worst_.end(), o, worse);
    if (static_cast<std::size_t>(pos - worst_.begin()) < keep_) {
        worst_.insert(pos, std::move(o));
        if (worst_.size() > keep_) {
            worst_.pop_back();
        }
    }
}

void Report::note_max(const std::string& key, double value)
{
    auto [it, inserted] = summary_.try_emplace(key, value);
    if (!inserted) {
        it->second = std::max(it->second, value);
    }
}

void Report::note_min(const std::string& key, double value)
{
    auto [it, inserted] = summary_.try_emplace(key, value);
    if (!inserted) {
        it->second = std::min(it->second, value);
    }
}

std::string Report::serialize(Format format) const
{
    if (format == Format::Json) {
        nlohmann::ordered_json j;
        j["check_id"] = check_id_;
        j["n_samples"] = n_samples_;
        j["seed"] = seed_;
        j["tolerance"] = tolerance_;
        j["max_residual"] = number_or_string(max_residual_);
        j["pass"] = pass();
        j["params"] = params_;
        nlohmann::ordered_json summary = nlohmann::ordered_json::object();
        for (const auto& [k, v] : summary_) {
            summary[k] = number_or_string(v);
        }
        j["summary"] = summary;
        j["details"] = nlohmann::ordered_json::array();
        for (const auto& o : worst_) {
            nlohmann::ordered_json d;
            d["index"] = o.index;
            d["point"] = o.point;
            d["residual"] = number_or_string(o.residual);
            j["details"].push_back(d);
        }
        return j.dump(2) + "\n";
    }

    std::ostringstream out;
    out << "# check_id=" << check_id_ << "\n";
    out << "# n_samples=" << n_samples_ << "\n";
    out << "# seed=" << seed_ << "\n";
    out << "# tolerance=" << format_double(tolerance_) << "\n";
    out << "# max_residual=" << format_double(max_residual_) << "\n";
    out << "# pass=" << (pass() ? "true" : "false") << "\n";
    for (const auto& [k, v] : params_) {
        out << "# param." << k << "=" << v << "\n";
    }
    for (const auto& [k, v] : summary_) {
        out << "# summary." << k << "=" << format_double(v) << "\n";
    }
    out << "index,residual,point\n";
    for (const auto& o : worst_) {
        out << o.index << "," << format_double(o.residual) << ",";
        for (std::size_t i = 0; i < o.point.size(); ++i) {
            out << (i ? " " : "") << format_double(o.point[i]);
        }
        out << "\n";
    }
    return out.str();
}

std::string format_double(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

} // namespace nullgeo::report
