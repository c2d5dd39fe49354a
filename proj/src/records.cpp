#include "syntqa/records.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "syntqa/errors.hpp"
#include "syntqa/text.hpp"

namespace syntqa {

namespace {

json nullable(double value) {
  if (std::isnan(value)) return nullptr;
  return value;
}

}  // namespace

json decision_to_json(const SelectorDecision& decision) {
  json record;
  record["instance_id"] = decision.instance_id;
  record["chosen_source"] = std::string(source_name(decision.chosen_source));
  record["answers"] = decision.answers;
  record["score"] = decision.score;
  record["rationale_tag"] = decision.rationale_tag;
  return record;
}

SelectorDecision decision_from_json(const json& record) {
  SelectorDecision decision;
  decision.instance_id = record.at("instance_id").get<std::string>();
  decision.chosen_source = source_from_name(record.at("chosen_source").get<std::string>());
  decision.answers = record.at("answers").get<std::vector<std::string>>();
  decision.score = record.at("score").get<double>();
  decision.rationale_tag = record.value("rationale_tag", "");
  return decision;
}

std::vector<SelectorDecision> load_decisions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::vector<SelectorDecision> decisions;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      throw Error(ErrorKind::InvalidRecord,
                  path.string() + ":" + std::to_string(lineno) + ": not a record");
    }
    decisions.push_back(decision_from_json(record));
  }
  return decisions;
}

void save_decisions(const std::vector<SelectorDecision>& decisions,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  for (const auto& decision : decisions) out << decision_to_json(decision).dump() << '\n';
}

json repair_report_to_json(const RepairReport& report) {
  json edits = json::array();
  for (const auto& edit : report.edits) {
    edits.push_back(json{{"kind", std::string(edit_kind_name(edit.kind))},
                         {"before", edit.before},
                         {"after", edit.after},
                         {"distance", edit.distance}});
  }
  return json{{"original_sql", report.original_sql},
              {"repaired_sql", report.repaired_sql},
              {"edits", std::move(edits)}};
}

json eval_report_to_json(const EvalReport& report) {
  json buckets = json::array();
  for (const auto& bucket : report.buckets) {
    buckets.push_back(json{{"rows", bucket.label},
                           {"n", bucket.n},
                           {"sql_accuracy", nullable(bucket.sql_accuracy)},
                           {"e2e_accuracy", nullable(bucket.e2e_accuracy)},
                           {"accuracy", nullable(bucket.accuracy)}});
  }
  json out{{"n", report.n},
           {"accuracy", nullable(report.accuracy)},
           {"oracle_accuracy", nullable(report.oracle_accuracy)},
           {"sql_accuracy", nullable(report.sql_accuracy)},
           {"e2e_accuracy", nullable(report.e2e_accuracy)},
           {"quadrants",
            {{"both_correct", report.quadrants.both_correct},
             {"sql_only", report.quadrants.sql_only},
             {"e2e_only", report.quadrants.e2e_only},
             {"both_wrong", report.quadrants.both_wrong}}},
           {"buckets", std::move(buckets)}};
  if (report.per_perturbation) {
    out["per_perturbation"] = robustness_rows_to_json(*report.per_perturbation);
  }
  return out;
}

json robustness_rows_to_json(const std::map<std::string, RobustnessRow>& rows) {
  json out = json::object();
  for (const auto& [tag, row] : rows) {
    out[tag] = json{{"n", row.n},
                    {"pre_accuracy", nullable(row.pre_accuracy)},
                    {"post_accuracy", nullable(row.post_accuracy)},
                    {"r_acc_ratio", nullable(row.r_acc_ratio)},
                    {"r_acc_consistency", nullable(row.r_acc_consistency)}};
  }
  return out;
}

std::string eval_report_table(const EvalReport& report) {
  std::ostringstream out;
  auto pct = [](double v) {
    if (std::isnan(v)) return std::string("   -");
    std::ostringstream s;
    s << std::fixed << std::setprecision(1) << std::setw(5) << 100.0 * v;
    return s.str();
  };
  out << "n=" << report.n << "  sql=" << pct(report.sql_accuracy)
      << "  e2e=" << pct(report.e2e_accuracy) << "  selected=" << pct(report.accuracy)
      << "  oracle=" << pct(report.oracle_accuracy) << "\n";
  out << "quadrants: both=" << report.quadrants.both_correct
      << " sql_only=" << report.quadrants.sql_only
      << " e2e_only=" << report.quadrants.e2e_only
      << " both_wrong=" << report.quadrants.both_wrong << "\n";
  out << std::left << std::setw(8) << "rows" << std::right << std::setw(8) << "n"
      << std::setw(8) << "sql" << std::setw(8) << "e2e" << std::setw(10) << "selected" << "\n";
  for (const auto& bucket : report.buckets) {
    out << std::left << std::setw(8) << bucket.label << std::right << std::setw(8) << bucket.n
        << std::setw(8) << pct(bucket.sql_accuracy) << std::setw(8) << pct(bucket.e2e_accuracy)
        << std::setw(10) << pct(bucket.accuracy) << "\n";
  }
  return out.str();
}

}  // namespace syntqa
