#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "swarmbo/boloop.hpp"
#include "swarmbo/experiment.hpp"

namespace swarmbo::io {

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

/// RFC-4180 quoting for one field.
std::string csv_field(std::string_view text);
/// Splits one CSV record, honouring quoted fields.
std::vector<std::string> parse_csv_line(std::string_view line);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
CsvTable read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// Timestamp and hostname, excluded from determinism comparisons.
nlohmann::json run_metadata();

nlohmann::json to_json(const BoResult& result, const SearchSpace& space);
BoResult bo_result_from_json(const nlohmann::json& j);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

/// result.json: {"best_point", "best_value", "evaluations", "incumbent_trace",
/// "history", "space", "config", "metadata"}.
void write_result_json(const std::filesystem::path& path, const BoResult& result,
                       const SearchSpace& space, const nlohmann::json& config_echo);
BoResult read_result_json(const std::filesystem::path& path);

/// trace CSV: header "iteration,incumbent", iteration counts from 1.
void write_trace_csv(const std::filesystem::path& path, const std::vector<double>& trace);
std::vector<double> read_trace_csv(const std::filesystem::path& path);

nlohmann::json to_json(const bench::ExperimentReport& report);
bench::ExperimentReport report_from_json(const nlohmann::json& j);
void write_report_json(const std::filesystem::path& path, const bench::ExperimentReport& report,
                       const nlohmann::json& config_echo);
bench::ExperimentReport read_report_json(const std::filesystem::path& path);

/// report.csv: method,max,min,ave,evaluations,completed,missing
CsvTable report_table(const bench::ExperimentReport& report);
void write_report_csv(const std::filesystem::path& path, const bench::ExperimentReport& report);

/// sweep.csv: omega,ave_best
void write_sweep_csv(const std::filesystem::path& path, const std::vector<bench::SweepRow>& rows);
std::vector<bench::SweepRow> read_sweep_csv(const std::filesystem::path& path);

}  // namespace swarmbo::io
