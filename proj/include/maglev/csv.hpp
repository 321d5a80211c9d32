#pragma once

#include <string>
#include <vector>

#include "maglev/simulator.hpp"

namespace maglev {

/// Column names of run.csv, in order.
std::vector<std::string> log_columns(bool with_delta_u);
std::vector<std::string> metrics_columns();

/// Shortest round-trip decimal representation.
std::string format_value(double v);

std::string log_to_csv(const std::vector<LogRecord>& log, bool with_delta_u);
std::string metrics_to_csv(const RunMetrics& m);
/// Metrics table for a sweep: one row per run, prefixed by run directory, axis and value.
std::string sweep_metrics_to_csv(const std::string& axis, const std::vector<SweepRun>& runs);

/// Writes `content` to `path`; throws IoError naming the path.
void write_text_file(const std::string& path, const std::string& content);

void write_csv(const std::vector<LogRecord>& log, const std::string& path, bool with_delta_u = false);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Parses a numeric CSV with a header row.
CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

}  // namespace maglev
