#include "hgr/evaluation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hgr/errors.hpp"
#include "hgr/text_util.hpp"

namespace hgr {

using nlohmann::json;

QaRecord parse_qa_record(const json& doc, std::size_t line) {
  if (!doc.is_object()) throw MalformedRecordError(line, "QA record must be a JSON object");
  QaRecord r;
  try {
    r.question = doc.at("question").get<std::string>();
    r.golden_answer = doc.at("golden_answer").get<std::string>();
    if (doc.contains("id") && !doc["id"].is_null())
      r.id = doc["id"].is_string() ? doc["id"].get<std::string>() : doc["id"].dump();
    if (doc.contains("context") && !doc["context"].is_null()) {
      const json& c = doc["context"];
      if (c.is_array()) {
        std::string joined;
        for (const auto& part : c) joined += (joined.empty() ? "" : "\n") + part.get<std::string>();
        r.context = joined;
      } else {
        r.context = c.get<std::string>();
      }
    }
    if (doc.contains("nary") && !doc["nary"].is_null()) r.nary = doc["nary"].get<int>();
    if (doc.contains("nhop") && !doc["nhop"].is_null()) r.nhop = doc["nhop"].get<int>();
  } catch (const json::exception& ex) {
    throw MalformedRecordError(line, ex.what());
  }
  if (trim(r.question).empty()) throw MalformedRecordError(line, "question is blank");
  if (r.id.empty()) r.id = "q" + std::to_string(line);
  return r;
}

std::vector<QaLine> read_qa_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open QA file " + path.string());
  std::vector<QaLine> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (trim(text).empty()) continue;
    QaLine entry;
    entry.line = line;
    json doc = json::parse(text, nullptr, false);
    try {
      if (doc.is_discarded()) throw MalformedRecordError(line, "invalid JSON");
      entry.record = parse_qa_record(doc, line);
    } catch (const MalformedRecordError& ex) {
      entry.error = ex.what();
    }
    out.push_back(std::move(entry));
  }
  return out;
}

namespace {

std::optional<double> sorted_mean(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> opt_double(const json& doc, const char* key) {
  if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
  return doc[key].get<double>();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream ss;
  ss.precision(6);
  ss << std::fixed << *v;
  return ss.str();
}

}  // namespace

EvalAggregate aggregate_rows(const std::vector<EvalRow>& rows) {
  EvalAggregate agg;
  agg.rows = rows.size();
  std::vector<double> f1, rs, ge, depth;
  for (const auto& r : rows) {
    if (r.failed()) {
      ++agg.failures;
      continue;
    }
    if (r.f1) f1.push_back(*r.f1);
    if (r.rs) rs.push_back(*r.rs);
    if (r.ge) ge.push_back(*r.ge);
    if (r.d_avg) depth.push_back(*r.d_avg);
  }
  agg.f1 = sorted_mean(std::move(f1));
  agg.rs = sorted_mean(std::move(rs));
  agg.ge = sorted_mean(std::move(ge));
  agg.d_avg = sorted_mean(std::move(depth));
  return agg;
}

json eval_row_to_json(const EvalRow& row) {
  return {{"id", row.id},
          {"question", row.question},
          {"golden_answer", row.golden_answer},
          {"answer", row.answer},
          {"f1", opt(row.f1)},
          {"rs", opt(row.rs)},
          {"ge", opt(row.ge)},
          {"no_evidence", row.no_evidence},
          {"d_avg", opt(row.d_avg)},
          {"error", row.error ? json(*row.error) : json(nullptr)}};
}

EvalRow eval_row_from_json(const json& doc) {
  EvalRow r;
  r.id = doc.at("id").get<std::string>();
  r.question = doc.value("question", "");
  r.golden_answer = doc.value("golden_answer", "");
  r.answer = doc.value("answer", "");
  r.f1 = opt_double(doc, "f1");
  r.rs = opt_double(doc, "rs");
  r.ge = opt_double(doc, "ge");
  r.no_evidence = doc.value("no_evidence", false);
  r.d_avg = opt_double(doc, "d_avg");
  if (doc.contains("error") && !doc["error"].is_null()) r.error = doc["error"].get<std::string>();
  return r;
}

json aggregate_to_json(const EvalAggregate& agg) {
  return {{"rows", agg.rows},       {"failures", agg.failures}, {"f1", opt(agg.f1)},
          {"rs", opt(agg.rs)},      {"ge", opt(agg.ge)},        {"d_avg", opt(agg.d_avg)}};
}

json report_to_json(const std::vector<EvalRow>& rows) {
  json list = json::array();
  for (const auto& r : rows) list.push_back(eval_row_to_json(r));
  return {{"rows", std::move(list)}, {"aggregate", aggregate_to_json(aggregate_rows(rows))}};
}

std::vector<EvalRow> report_rows_from_json(const json& doc) {
  std::vector<EvalRow> rows;
  try {
    for (const auto& r : doc.at("rows")) rows.push_back(eval_row_from_json(r));
  } catch (const json::exception& ex) {
    throw DataError(std::string("malformed report: ") + ex.what());
  }
  return rows;
}

std::string report_to_csv(const std::vector<EvalRow>& rows) {
  std::string out = "id,question,golden_answer,answer,f1,rs,ge,no_evidence,d_avg,error\n";
  for (const auto& r : rows) {
    out += csv_field(r.id) + "," + csv_field(r.question) + "," + csv_field(r.golden_answer) + "," +
           csv_field(r.answer) + "," + csv_number(r.f1) + "," + csv_number(r.rs) + "," + csv_number(r.ge) + "," +
           (r.no_evidence ? "true" : "false") + "," + csv_number(r.d_avg) + "," + csv_field(r.error.value_or("")) +
           "\n";
  }
  return out;
}

}  // namespace hgr
