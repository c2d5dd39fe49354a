#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "syntqa/ensemble.hpp"
#include "syntqa/repair.hpp"
#include "syntqa/report.hpp"

namespace syntqa {

using json = nlohmann::ordered_json;

json decision_to_json(const SelectorDecision& decision);
SelectorDecision decision_from_json(const json& record);

std::vector<SelectorDecision> load_decisions(const std::filesystem::path& path);
void save_decisions(const std::vector<SelectorDecision>& decisions,
                    const std::filesystem::path& path);

json repair_report_to_json(const RepairReport& report);
json eval_report_to_json(const EvalReport& report);
json robustness_rows_to_json(const std::map<std::string, RobustnessRow>& rows);

/// Aligned-column rendering of the report for human eyes.
std::string eval_report_table(const EvalReport& report);

}  // namespace syntqa
