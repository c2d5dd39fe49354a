#include "syntqa/pipeline.hpp"

#include "syntqa/errors.hpp"
#include "syntqa/repair.hpp"
#include "syntqa/sql/executor.hpp"
#include "syntqa/sql/parser.hpp"

namespace syntqa {

ModelPrediction materialize_sql_prediction(const ModelPrediction& pred, const TableData& table,
                                           const MaterializeOptions& options) {
  if (pred.source != PredictionSource::Text2Sql) return pred;
  if (pred.exec_ok.has_value() && !options.force) return pred;

  ModelPrediction out = pred;
  out.answers.clear();
  out.exec_ok = false;
  if (!pred.sql_text) return out;
  try {
    sql::SqlQuery query = sql::parse_sql(*pred.sql_text);
    if (options.repair) {
      try {
        RepairReport report = repair_query(*pred.sql_text, table);
        query = sql::parse_sql(report.repaired_sql);
      } catch (const Error&) {
        // fall back to the unrepaired query
      }
    }
    std::vector<CellValue> values = sql::execute(query, table);
    for (const auto& value : values) out.answers.push_back(value.display());
    out.exec_ok = true;
  } catch (const Error&) {
    out.answers.clear();
    out.exec_ok = false;
  }
  return out;
}

void materialize_sql_predictions(std::vector<ModelPrediction>& predictions,
                                 const std::vector<QAInstance>& instances,
                                 const std::map<std::string, TableData>& tables,
                                 const MaterializeOptions& options) {
  std::map<std::string, const QAInstance*> by_id;
  for (const auto& inst : instances) by_id[inst.id] = &inst;
  for (auto& pred : predictions) {
    auto inst_it = by_id.find(pred.instance_id);
    if (inst_it == by_id.end()) {
      throw Error(ErrorKind::MissingInstance,
                  "prediction references unknown instance '" + pred.instance_id + "'");
    }
    auto table_it = tables.find(inst_it->second->table_id);
    if (table_it == tables.end()) {
      throw Error(ErrorKind::UnknownTable,
                  "unknown table '" + inst_it->second->table_id + "'");
    }
    pred = materialize_sql_prediction(pred, table_it->second, options);
  }
}

}  // namespace syntqa
