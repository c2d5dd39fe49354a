#pragma once

#include <map>
#include <vector>

#include "syntqa/instance.hpp"
#include "syntqa/table.hpp"

namespace syntqa {

struct MaterializeOptions {
  bool repair = true;  ///< post-process queries before executing
  bool force = false;  ///< re-execute even when exec_ok is already recorded
};

/// Parses, optionally repairs, and executes a TEXT2SQL prediction's query
/// against its instance's table, recording answers and exec_ok. Failures at
/// any stage land as exec_ok=false with empty answers. Non-SQL predictions
/// and predictions already carrying exec results pass through.
ModelPrediction materialize_sql_prediction(const ModelPrediction& pred, const TableData& table,
                                           const MaterializeOptions& options = {});

void materialize_sql_predictions(std::vector<ModelPrediction>& predictions,
                                 const std::vector<QAInstance>& instances,
                                 const std::map<std::string, TableData>& tables,
                                 const MaterializeOptions& options = {});

}  // namespace syntqa
