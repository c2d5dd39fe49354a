#include "syntqa/report.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "syntqa/errors.hpp"
#include "syntqa/metrics.hpp"

namespace syntqa {

std::vector<std::pair<std::size_t, std::size_t>> default_row_buckets() {
  return {{1, 10}, {11, 20}, {21, 30}, {31, 50}, {51, std::numeric_limits<std::size_t>::max()}};
}

namespace {

const ModelPrediction& prediction_for(
    const std::map<std::string, const ModelPrediction*>& preds, const QAInstance& instance,
    const char* side) {
  auto it = preds.find(instance.id);
  if (it == preds.end()) {
    throw Error(ErrorKind::MissingPrediction,
                std::string(side) + " prediction missing for instance '" + instance.id + "'");
  }
  return *it->second;
}

double ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

EvalReport evaluate(const std::vector<QAInstance>& instances,
                    const std::map<std::string, TableData>& tables,
                    const std::map<std::string, const ModelPrediction*>& sql_preds,
                    const std::map<std::string, const ModelPrediction*>& e2e_preds,
                    const std::vector<SelectorDecision>* decisions) {
  EvalReport report;
  report.n = instances.size();

  std::map<std::string, const SelectorDecision*> decision_index;
  if (decisions) {
    std::set<std::string> instance_ids;
    for (const auto& inst : instances) instance_ids.insert(inst.id);
    for (const auto& decision : *decisions) {
      if (!instance_ids.count(decision.instance_id)) {
        throw Error(ErrorKind::MissingInstance,
                    "decision references unknown instance '" + decision.instance_id + "'");
      }
      if (!decision_index.emplace(decision.instance_id, &decision).second) {
        throw Error(ErrorKind::DuplicateId,
                    "duplicate decision for instance '" + decision.instance_id + "'");
      }
    }
  }

  auto bucket_edges = default_row_buckets();
  struct BucketAcc {
    std::size_t n = 0, sql = 0, e2e = 0, chosen = 0;
  };
  std::vector<BucketAcc> bucket_acc(bucket_edges.size());

  std::size_t sql_correct_total = 0, e2e_correct_total = 0, chosen_correct_total = 0;
  for (const auto& instance : instances) {
    const ModelPrediction& sql_pred = prediction_for(sql_preds, instance, "sql");
    const ModelPrediction& e2e_pred = prediction_for(e2e_preds, instance, "e2e");
    bool sql_ok = exact_match(sql_pred.answers, instance.gold_answers);
    bool e2e_ok = exact_match(e2e_pred.answers, instance.gold_answers);
    if (sql_ok && e2e_ok) ++report.quadrants.both_correct;
    else if (sql_ok) ++report.quadrants.sql_only;
    else if (e2e_ok) ++report.quadrants.e2e_only;
    else ++report.quadrants.both_wrong;
    sql_correct_total += sql_ok;
    e2e_correct_total += e2e_ok;

    bool chosen_ok = false;
    if (decisions) {
      auto it = decision_index.find(instance.id);
      if (it == decision_index.end()) {
        throw Error(ErrorKind::MissingInstance,
                    "no decision for instance '" + instance.id + "'");
      }
      chosen_ok = exact_match(it->second->answers, instance.gold_answers);
      chosen_correct_total += chosen_ok;
    }

    auto table_it = tables.find(instance.table_id);
    if (table_it == tables.end()) {
      throw Error(ErrorKind::UnknownTable,
                  "instance '" + instance.id + "' references unknown table '" +
                      instance.table_id + "'");
    }
    std::size_t rows = table_it->second.n_rows();
    for (std::size_t b = 0; b < bucket_edges.size(); ++b) {
      if (rows >= bucket_edges[b].first && rows <= bucket_edges[b].second) {
        bucket_acc[b].n += 1;
        bucket_acc[b].sql += sql_ok;
        bucket_acc[b].e2e += e2e_ok;
        bucket_acc[b].chosen += chosen_ok;
        break;
      }
    }
  }

  std::size_t oracle_correct =
      report.quadrants.both_correct + report.quadrants.sql_only + report.quadrants.e2e_only;
  report.oracle_accuracy = ratio(oracle_correct, report.n);
  report.sql_accuracy = ratio(sql_correct_total, report.n);
  report.e2e_accuracy = ratio(e2e_correct_total, report.n);
  report.accuracy = decisions ? ratio(chosen_correct_total, report.n)
                              : std::numeric_limits<double>::quiet_NaN();

  for (std::size_t b = 0; b < bucket_edges.size(); ++b) {
    BucketRow row;
    row.lo = bucket_edges[b].first;
    row.hi = bucket_edges[b].second;
    row.label = row.hi == std::numeric_limits<std::size_t>::max()
                    ? std::to_string(row.lo) + "+"
                    : std::to_string(row.lo) + "-" + std::to_string(row.hi);
    row.n = bucket_acc[b].n;
    row.sql_accuracy = ratio(bucket_acc[b].sql, bucket_acc[b].n);
    row.e2e_accuracy = ratio(bucket_acc[b].e2e, bucket_acc[b].n);
    row.accuracy = decisions ? ratio(bucket_acc[b].chosen, bucket_acc[b].n)
                             : std::numeric_limits<double>::quiet_NaN();
    report.buckets.push_back(std::move(row));
  }
  return report;
}

std::map<std::string, RobustnessRow> robustness_report(
    const std::vector<QAInstance>& pre_instances,
    const std::vector<SelectorDecision>& pre_decisions,
    const std::vector<QAInstance>& post_instances,
    const std::vector<SelectorDecision>& post_decisions) {
  auto index_decisions = [](const std::vector<SelectorDecision>& decisions) {
    std::map<std::string, const SelectorDecision*> index;
    for (const auto& d : decisions) index[d.instance_id] = &d;
    return index;
  };
  std::map<std::string, const QAInstance*> pre_index;
  for (const auto& inst : pre_instances) pre_index[inst.id] = &inst;
  auto pre_dec = index_decisions(pre_decisions);
  auto post_dec = index_decisions(post_decisions);

  struct Totals {
    std::size_t n = 0, pre_ok = 0, post_ok = 0, both_ok = 0, consistent = 0;
  };
  std::map<std::string, Totals> groups;

  for (const auto& post : post_instances) {
    auto pre_it = pre_index.find(post.id);
    if (pre_it == pre_index.end()) {
      throw Error(ErrorKind::UnpairedInstance,
                  "no pre-perturbation instance for '" + post.id + "'");
    }
    auto pre_d = pre_dec.find(post.id);
    auto post_d = post_dec.find(post.id);
    if (pre_d == pre_dec.end() || post_d == post_dec.end()) {
      throw Error(ErrorKind::UnpairedInstance,
                  "missing pre or post decision for '" + post.id + "'");
    }
    bool pre_ok = exact_match(pre_d->second->answers, pre_it->second->gold_answers);
    bool post_ok = exact_match(post_d->second->answers, post.gold_answers);
    bool consistent = answers_agree(post_d->second->answers, pre_d->second->answers);

    std::string tag = post.perturbation_tag.value_or("untagged");
    for (const std::string& key : {tag, std::string("all")}) {
      Totals& t = groups[key];
      t.n += 1;
      t.pre_ok += pre_ok;
      t.post_ok += post_ok;
      t.both_ok += pre_ok && post_ok;
      t.consistent += consistent;
    }
  }

  std::map<std::string, RobustnessRow> rows;
  for (const auto& [tag, t] : groups) {
    RobustnessRow row;
    row.n = t.n;
    row.pre_accuracy = ratio(t.pre_ok, t.n);
    row.post_accuracy = ratio(t.post_ok, t.n);
    row.r_acc_ratio = ratio(t.both_ok, t.pre_ok);
    row.r_acc_consistency = ratio(t.consistent, t.n);
    rows[tag] = row;
  }
  return rows;
}

}  // namespace syntqa
