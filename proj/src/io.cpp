#include "swarmbo/io.hpp"

#include <unistd.h>

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

#include "swarmbo/error.hpp"

namespace swarmbo::io {
namespace {

using nlohmann::json;

json number(double v) {
  // JSON has no NaN/inf; they are written as null
  return std::isfinite(v) ? json(v) : json(nullptr);
}

double as_number(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

json numbers(const std::vector<double>& values) {
  json out = json::array();
  for (double v : values) out.push_back(number(v));
  return out;
}

std::vector<double> as_numbers(const json& j) {
  std::vector<double> out;
  for (const auto& v : j) out.push_back(as_number(v));
  return out;
}

double parse_double(const std::string& text) {
  double v = 0.0;
  if (text == "nan" || text.empty()) return std::numeric_limits<double>::quiet_NaN();
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::IoError, "not a number: '" + text + "'");
  }
  return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  return out;
}

std::string_view phase_name(Phase p) { return p == Phase::Init ? "init" : "bo"; }

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> parse_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else if (c != '\r') {
      current += c;
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto fields = parse_csv_line(line);
    if (first) {
      table.header = std::move(fields);
      first = false;
    } else {
      if (fields.size() != table.header.size()) {
        throw Error(ErrorCode::IoError, path.string() + ": row width differs from header");
      }
      table.rows.push_back(std::move(fields));
    }
  }
  if (first) throw Error(ErrorCode::IoError, path.string() + ": missing header");
  return table;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  auto out = open_out(path);
  const auto write_row = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_field(row[i]);
    }
    out << "\r\n";
  };
  write_row(table.header);
  for (const auto& row : table.rows) write_row(row);
}

json run_metadata() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> stamp{};
  std::strftime(stamp.data(), stamp.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  std::array<char, 256> host{};
  if (gethostname(host.data(), host.size() - 1) != 0) host[0] = '\0';
  return {{"timestamp", stamp.data()}, {"hostname", host.data()}};
}

json to_json(const BoResult& result, const SearchSpace& space) {
  json history = json::array();
  for (const auto& r : result.history.records) {
    history.push_back({{"iteration", r.iteration},
                       {"phase", phase_name(r.phase)},
                       {"point", numbers(r.point)},
                       {"materialized", numbers(r.materialized)},
                       {"y", number(r.y)}});
  }
  json dims = json::array();
  for (const auto& d : space.dims) {
    dims.push_back({{"name", d.name},
                    {"type", d.kind == DimKind::Integer ? "integer" : "real"},
                    {"lower", d.lower},
                    {"upper", d.upper}});
  }
  return {{"best_point", numbers(result.best_point)},
          {"best_value", number(result.best_value)},
          {"evaluations", result.history.size()},
          {"incumbent_trace", numbers(result.incumbent_trace)},
          {"history", history},
          {"space", dims}};
}

BoResult bo_result_from_json(const json& j) {
  try {
    BoResult r;
    r.best_point = as_numbers(j.at("best_point"));
    r.best_value = as_number(j.at("best_value"));
    r.incumbent_trace = as_numbers(j.at("incumbent_trace"));
    for (const auto& h : j.at("history")) {
      ObservationRecord rec;
      rec.iteration = h.at("iteration").get<int>();
      rec.phase = h.at("phase").get<std::string>() == "init" ? Phase::Init : Phase::Bo;
      rec.point = as_numbers(h.at("point"));
      rec.materialized = as_numbers(h.at("materialized"));
      rec.y = as_number(h.at("y"));
      r.history.records.push_back(std::move(rec));
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::IoError, std::string("malformed result json: ") + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::IoError, path.string() + ": " + e.what());
  }
}

void write_result_json(const std::filesystem::path& path, const BoResult& result,
                       const SearchSpace& space, const json& config_echo) {
  json j = to_json(result, space);
  j["config"] = config_echo;
  j["metadata"] = run_metadata();
  write_json(path, j);
}

BoResult read_result_json(const std::filesystem::path& path) {
  return bo_result_from_json(read_json(path));
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<double>& trace) {
  CsvTable table{{"iteration", "incumbent"}, {}};
  for (std::size_t i = 0; i < trace.size(); ++i) {
    table.rows.push_back({std::to_string(i + 1), format_double(trace[i])});
  }
  write_csv(path, table);
}

std::vector<double> read_trace_csv(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  if (table.header != std::vector<std::string>{"iteration", "incumbent"}) {
    throw Error(ErrorCode::IoError, path.string() + ": unexpected trace header");
  }
  std::vector<double> trace;
  for (const auto& row : table.rows) trace.push_back(parse_double(row[1]));
  return trace;
}

json to_json(const bench::ExperimentReport& report) {
  json methods = json::array();
  for (const auto& m : report.methods) {
    json cells = json::array();
    for (std::size_t i = 0; i < m.seeds.size(); ++i) {
      cells.push_back({{"seed", m.seeds[i]},
                       {"best", number(m.per_seed_best[i])},
                       {"evaluations", m.evaluations[i]},
                       {"trace", numbers(m.traces[i])}});
    }
    methods.push_back({{"label", m.label},
                       {"kind", bench::to_string(m.kind)},
                       {"max", number(m.stats.max)},
                       {"min", number(m.stats.min)},
                       {"ave", number(m.stats.ave)},
                       {"per_seed", cells},
                       {"missing", m.missing}});
  }
  return {{"objective", report.objective},
          {"budget", report.budget},
          {"seeds", report.seeds},
          {"budget_parity", report.budget_parity},
          {"methods", methods}};
}

bench::ExperimentReport report_from_json(const json& j) {
  try {
    bench::ExperimentReport r;
    r.objective = j.at("objective").get<std::string>();
    r.budget = j.at("budget").get<int>();
    r.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    r.budget_parity = j.at("budget_parity").get<bool>();
    for (const auto& mj : j.at("methods")) {
      bench::MethodReport m;
      m.label = mj.at("label").get<std::string>();
      m.kind = bench::parse_method_kind(mj.at("kind").get<std::string>());
      m.stats = {as_number(mj.at("max")), as_number(mj.at("min")), as_number(mj.at("ave"))};
      for (const auto& c : mj.at("per_seed")) {
        m.seeds.push_back(c.at("seed").get<std::uint64_t>());
        m.per_seed_best.push_back(as_number(c.at("best")));
        m.evaluations.push_back(c.at("evaluations").get<std::size_t>());
        m.traces.push_back(as_numbers(c.at("trace")));
      }
      m.missing = mj.at("missing").get<std::vector<std::uint64_t>>();
      r.methods.push_back(std::move(m));
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::IoError, std::string("malformed report json: ") + e.what());
  }
}

void write_report_json(const std::filesystem::path& path, const bench::ExperimentReport& report,
                       const json& config_echo) {
  json j = to_json(report);
  j["config"] = config_echo;
  j["metadata"] = run_metadata();
  write_json(path, j);
}

bench::ExperimentReport read_report_json(const std::filesystem::path& path) {
  return report_from_json(read_json(path));
}

CsvTable report_table(const bench::ExperimentReport& report) {
  CsvTable table{{"method", "max", "min", "ave", "evaluations", "completed", "missing"}, {}};
  for (const auto& m : report.methods) {
    const std::string evals = m.evaluations.empty() ? "0" : std::to_string(m.evaluations.front());
    table.rows.push_back({m.label, format_double(m.stats.max), format_double(m.stats.min),
                          format_double(m.stats.ave), evals, std::to_string(m.seeds.size()),
                          std::to_string(m.missing.size())});
  }
  return table;
}

void write_report_csv(const std::filesystem::path& path, const bench::ExperimentReport& report) {
  write_csv(path, report_table(report));
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<bench::SweepRow>& rows) {
  CsvTable table{{"omega", "ave_best"}, {}};
  for (const auto& r : rows) table.rows.push_back({format_double(r.omega), format_double(r.ave_best)});
  write_csv(path, table);
}

std::vector<bench::SweepRow> read_sweep_csv(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  if (table.header != std::vector<std::string>{"omega", "ave_best"}) {
    throw Error(ErrorCode::IoError, path.string() + ": unexpected sweep header");
  }
  std::vector<bench::SweepRow> rows;
  for (const auto& row : table.rows) rows.push_back({parse_double(row[0]), parse_double(row[1])});
  return rows;
}

}  // namespace swarmbo::io
