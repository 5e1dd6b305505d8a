#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nullgeo::report {

enum class Format { Json, Csv };

/// Parses "json" or "csv"; throws ArgumentError otherwise.
Format parse_format(const std::string& name);

/// One sampled residual with the coordinates that produced it.
struct Offender {
    std::size_t index = 0;
    std::vector<double> point;
    double residual = 0.0;
};

/// Outcome of a verification sweep. pass == (n_samples > 0 and
/// max_residual < tolerance); details hold the worst offenders, so
/// max_residual is always the first detail's residual.
class Report {
public:
    Report(std::string check_id, std::uint64_t seed, double tolerance, std::size_t keep_worst = 5);

    /// Records one sample; NaN residuals count as +infinity.
    void add(std::vector<double> point, double residual);
    /// Named auxiliary maximum reported alongside the main residual.
    void note_max(const std::string& key, double value);
    void note_min(const std::string& key, double value);
    void set_param(const std::string& key, const std::string& value) { params_[key] = value; }

    const std::string& check_id() const { return check_id_; }
    std::size_t n_samples() const { return n_samples_; }
    std::uint64_t seed() const { return seed_; }
    double tolerance() const { return tolerance_; }
    double max_residual() const { return max_residual_; }
    bool pass() const { return n_samples_ > 0 && max_residual_ < tolerance_; }
    const std::vector<Offender>& details() const { return worst_; }
    const std::map<std::string, double>& summary() const { return summary_; }
    const std::map<std::string, std::string>& params() const { return params_; }

    std::string serialize(Format format) const;

private:
    std::string check_id_;
    std::uint64_t seed_;
    double tolerance_;
    std::size_t keep_;
    std::size_t n_samples_ = 0;
    double max_residual_ = 0.0;
    std::vector<Offender> worst_;
    std::map<std::string, double> summary_;
    std::map<std::string, std::string> params_;
};

/// Decimal text with 17 significant digits, enough to round-trip a double.
std::string format_double(double value);

} // namespace nullgeo::report
