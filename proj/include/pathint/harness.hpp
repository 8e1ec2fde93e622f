#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pathint/amplitude.hpp"
#include "pathint/lattice.hpp"

namespace pathint {

/// Parsed experiment description. The file format is flat structured text:
/// [section] headers with key = value lines; numbers in decimal or scientific
/// notation; complex values as "re,im".
struct ExperimentConfig {
    std::string name = "experiment";
    std::string scheme;  // lattice | fk | cameron | ito | ps-lattice | cs | dk

    // physical
    double m = 1.0, hbar = 1.0, nu = 1.0, T = 1.0;
    double x1 = 0.0, x2 = 0.0;
    double p1 = 0.0, q1 = 0.0, p2 = 0.0, q2 = 0.0;
    PotentialSpec potential;
    std::string symbol = "harmonic";  // harmonic | harmonic+<c>q | free | relativistic
    Complex lambda{1.0, 0.0};

    // numerical
    std::vector<int> n_list;
    std::vector<double> nu_list;
    double grid_min = -8.0, grid_max = 8.0;
    int grid_points = 0;
    long samples = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;

    // thresholds (optional): a configured bound turns the run into a check
    std::optional<double> max_rel_error;

    std::string out_dir = ".";
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

/// Row-oriented result table with fixed per-scheme columns (see
/// schemas/csv_columns.md). All values are serialized with enough digits to
/// round-trip exactly in both the CSV and the JSON output.
struct ReportRecord {
    ExperimentConfig config;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::map<std::string, double> summary;
    std::vector<std::string> row_errors;  // per-row failures, recorded not fatal
    bool threshold_failed = false;
};

/// Run one experiment: dispatch on the scheme, fill the table, and write
/// <out>/<name>.csv and <out>/<name>.json atomically.
ReportRecord run_experiment(const ExperimentConfig& config);

void write_csv(const ReportRecord& record, const std::string& path);
void write_json(const ReportRecord& record, const std::string& path);

struct ConvergenceFit {
    double order = 0.0;
    double order_stderr = 0.0;
    double confidence_band = 0.0;  // 2 sigma band on the fitted order
    bool exact = false;            // errors at machine scale, order undefined
    bool pass = false;
    std::string note;
};

/// Log-log fits of error against resolution for each record that carries an
/// (N or nu, rel_error) table. expected_order, when finite, sets pass/fail.
std::vector<ConvergenceFit> convergence_table(const std::vector<ReportRecord>& records,
                                              double expected_order =
                                                  std::numeric_limits<double>::quiet_NaN(),
                                              double tolerance = 0.35);

/// Scheme ids with their required configuration fields, for the CLI listing.
std::vector<std::pair<std::string, std::string>> scheme_catalog();

}  // namespace pathint
