#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "fairsim/experiment/runner.hpp"

namespace fairsim::experiment {

/// Fixed six-decimal rendering, so files compare byte for byte.
std::string format_score(std::optional<double> score);

void write_report_csv(std::ostream& out, const std::vector<RunResult>& results);
void write_timeseries_csv(std::ostream& out, const RunResult& result);
void write_summary(std::ostream& out, const std::vector<RunResult>& results);

/// report.csv, summary.txt and one timeseries_<run_id>.csv per result.
/// Files are written next to their final name and renamed into place.
void write_outputs(const std::filesystem::path& dir, const std::vector<RunResult>& results);

}  // namespace fairsim::experiment
