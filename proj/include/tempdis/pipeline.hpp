#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tempdis/diagnostics.hpp"
#include "tempdis/disagg.hpp"
#include "tempdis/indicator_prep.hpp"
#include "tempdis/series.hpp"

namespace tempdis {

inline constexpr const char* kToolVersion = "0.1.0";

/// Raised for malformed or inconsistent config files (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IndicatorInput {
    std::string label;
    std::string path;
    std::string arrears_path;  // optional per-indicator events file
};

struct JobConfig {
    std::string name;
    std::string constraint_path;
    std::vector<IndicatorInput> indicators;
    bool sum_indicators = false;  // sum all inputs into one regressor
    ModelSpec model;
    PeriodId span_first;
    PeriodId span_last;
    std::string output_dir;  // optional; CLI --out overrides
    DiagnosticsOptions diagnostics;
};

/// Parses and validates the job-list JSON. Paths are resolved relative to
/// the config file's directory. Throws ConfigError naming the offending
/// key and job.
std::vector<JobConfig> parse_config(const std::string& path);

struct InputDigest {
    std::string path;
    std::string fnv1a64;  // hex digest of the raw file bytes
};

struct RunReport {
    std::string job;
    JobConfig config;
    FitResult fit;
    DiagnosticsReport diagnostics;
    std::optional<MovementStats> movement;          // needs >= 9 common quarters
    std::optional<IndicatorQuality> quality;        // needs >= 3 common years
    Series indicator;  // adjusted composite indicator used for the comparison
    std::vector<InputDigest> input_digests;
};

/// Full pipeline for one job: load, arrears adjustment, disaggregation,
/// diagnostics battery, movement statistics. Stage failures are rethrown
/// with a stage tag; no files are written.
RunReport run_job(const JobConfig& cfg);

/// Writes <job>_quarterly.csv, <job>_report.json and <job>_plot.csv into
/// `dir`. Output is deterministic: fixed 6-decimal statistics, 3-decimal
/// p-values (>= 0.9995 shown as 1), stable key order.
void write_job_outputs(const RunReport& report, const std::string& dir);

/// Report JSON rendering, exposed for tests.
std::string render_report_json(const RunReport& report);

/// Display formatting helpers shared by report and CSV output.
std::string format_stat(double v);                  // fixed 6 decimals
std::string format_p_value(double p);               // 3 decimals, >=0.9995 -> "1"

}  // namespace tempdis
