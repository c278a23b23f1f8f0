#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace hgr {

/// One line of a QA file: {id?, question, golden_answer, context?, nary?, nhop?}.
struct QaRecord {
  std::string id;
  std::string question;
  std::string golden_answer;
  std::optional<std::string> context;
  std::optional<int> nary;
  std::optional<int> nhop;
};

/// A record without an id gets "q<line>". Throws MalformedRecordError.
QaRecord parse_qa_record(const nlohmann::json& doc, std::size_t line);

/// Either a parsed record or the reason its line was rejected.
struct QaLine {
  std::size_t line = 0;
  std::optional<QaRecord> record;
  std::string error;
};

/// Reads every non-blank line; malformed lines come back with an error.
std::vector<QaLine> read_qa_file(const std::filesystem::path& path);

struct EvalRow {
  std::string id;
  std::string question;
  std::string golden_answer;
  std::string answer;
  std::optional<double> f1;
  std::optional<double> rs;
  std::optional<double> ge;
  bool no_evidence = false;
  std::optional<double> d_avg;
  std::optional<std::string> error;

  bool failed() const noexcept { return error.has_value(); }
};

struct EvalAggregate {
  std::size_t rows = 0;
  std::size_t failures = 0;
  std::optional<double> f1;
  std::optional<double> rs;
  std::optional<double> ge;
  std::optional<double> d_avg;
};

/// Means over the successful rows that carry each metric. Values are summed
/// in sorted order so the result does not depend on row order.
EvalAggregate aggregate_rows(const std::vector<EvalRow>& rows);

nlohmann::json eval_row_to_json(const EvalRow& row);
EvalRow eval_row_from_json(const nlohmann::json& doc);
nlohmann::json aggregate_to_json(const EvalAggregate& agg);

nlohmann::json report_to_json(const std::vector<EvalRow>& rows);
std::vector<EvalRow> report_rows_from_json(const nlohmann::json& doc);
std::string report_to_csv(const std::vector<EvalRow>& rows);

}  // namespace hgr
