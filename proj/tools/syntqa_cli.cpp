// syntqa: table question answering ensemble toolkit.
//
// Machine-readable records go to stdout, human summaries to stderr. Exit
// status: 0 success, 2 validation/domain errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "syntqa/annotation.hpp"
#include "syntqa/ensemble.hpp"
#include "syntqa/errors.hpp"
#include "syntqa/features.hpp"
#include "syntqa/fixture.hpp"
#include "syntqa/instance.hpp"
#include "syntqa/metrics.hpp"
#include "syntqa/pipeline.hpp"
#include "syntqa/records.hpp"
#include "syntqa/repair.hpp"
#include "syntqa/report.hpp"
#include "syntqa/router/http_backend.hpp"
#include "syntqa/router/route.hpp"
#include "syntqa/selector/baselines.hpp"
#include "syntqa/selector/forest.hpp"
#include "syntqa/selector/importance.hpp"
#include "syntqa/selector/model_io.hpp"
#include "syntqa/sql/executor.hpp"
#include "syntqa/sql/parser.hpp"
#include "syntqa/table.hpp"
#include "syntqa/text.hpp"

namespace fs = std::filesystem;
using namespace syntqa;

namespace {

struct CorpusOptions {
  std::string tables;
  std::string instances;
  std::string sql_preds;
  std::string e2e_preds;
  std::size_t budget = kDefaultLinearizeBudget;
  bool execute_sql = false;
  bool no_repair = false;
  std::uint64_t seed = 0;
};

struct Corpus {
  std::map<std::string, TableData> tables;
  std::vector<QAInstance> instances;
  std::vector<ModelPrediction> sql_preds;
  std::vector<ModelPrediction> e2e_preds;
};

void add_corpus_options(CLI::App* cmd, CorpusOptions& opts) {
  cmd->add_option("--tables", opts.tables, "CSV file or directory of *.csv tables")->required();
  cmd->add_option("--instances", opts.instances, "instance records, one per line")->required();
  cmd->add_option("--sql-preds", opts.sql_preds, "TEXT2SQL prediction records")->required();
  cmd->add_option("--e2e-preds", opts.e2e_preds, "E2E prediction records")->required();
  cmd->add_option("--budget", opts.budget, "linearization token budget");
  cmd->add_flag("--execute-sql", opts.execute_sql,
                "repair and execute sql_text to fill answers/exec_ok");
  cmd->add_flag("--no-repair", opts.no_repair, "skip repair when executing");
  cmd->add_option("--seed", opts.seed, "random seed");
}

Corpus load_corpus(const CorpusOptions& opts) {
  Corpus corpus;
  corpus.tables = load_tables(opts.tables);
  corpus.instances = load_instances(opts.instances, corpus.tables);
  corpus.sql_preds = load_predictions(opts.sql_preds);
  corpus.e2e_preds = load_predictions(opts.e2e_preds);
  if (opts.execute_sql) {
    MaterializeOptions options;
    options.repair = !opts.no_repair;
    options.force = true;
    materialize_sql_predictions(corpus.sql_preds, corpus.instances, corpus.tables, options);
  }
  return corpus;
}

const ModelPrediction& pred_for(const std::map<std::string, const ModelPrediction*>& index,
                                const std::string& id, const char* side) {
  auto it = index.find(id);
  if (it == index.end()) {
    throw Error(ErrorKind::MissingPrediction,
                std::string(side) + " prediction missing for instance '" + id + "'");
  }
  return *it->second;
}

TrainingSet load_feature_records(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  TrainingSet data;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (syntqa::trim(line).empty()) continue;
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      throw Error(ErrorKind::InvalidRecord,
                  path.string() + ":" + std::to_string(lineno) + ": not a record");
    }
    if (!record.contains("label") || record["label"].is_null()) continue;
    data.vectors.push_back(record.at("vector").get<std::vector<double>>());
    data.labels.push_back(selection_label_from_name(record.at("label").get<std::string>()));
    data.instance_ids.push_back(record.at("id").get<std::string>());
  }
  return data;
}

std::vector<SelectorDecision> decide_all(const Corpus& corpus, const std::string& mode,
                                         const SelectorModel* model, std::size_t budget) {
  auto sql_index = index_predictions(corpus.sql_preds);
  auto e2e_index = index_predictions(corpus.e2e_preds);
  std::vector<SelectorDecision> decisions;
  decisions.reserve(corpus.instances.size());
  for (const auto& inst : corpus.instances) {
    const ModelPrediction& sql_pred = pred_for(sql_index, inst.id, "sql");
    const ModelPrediction& e2e_pred = pred_for(e2e_index, inst.id, "e2e");
    if (mode == "oracle") {
      decisions.push_back(select_oracle(inst, sql_pred, e2e_pred));
    } else if (mode == "confidence") {
      decisions.push_back(select_by_confidence(sql_pred, e2e_pred));
    } else if (mode == "rf") {
      decisions.push_back(select_by_features(*model, inst, corpus.tables.at(inst.table_id),
                                             sql_pred, e2e_pred, budget));
    } else if (mode == "vote") {
      // vote each side's candidates, then fall back to confidence selection
      SelectorDecision decision =
          select_by_confidence(vote_prediction(sql_pred), vote_prediction(e2e_pred));
      decision.rationale_tag = "vote+confidence";
      decisions.push_back(std::move(decision));
    } else {
      throw Error(ErrorKind::InvalidSpec, "unknown selection mode '" + mode + "'");
    }
  }
  return decisions;
}

void emit_decisions(const std::vector<SelectorDecision>& decisions, const std::string& out) {
  for (const auto& decision : decisions) {
    std::cout << decision_to_json(decision).dump() << '\n';
  }
  if (!out.empty()) save_decisions(decisions, out);
  std::size_t sql_count = 0;
  for (const auto& d : decisions) {
    if (d.chosen_source == PredictionSource::Text2Sql) ++sql_count;
  }
  std::cerr << "selected " << decisions.size() << " instances (" << sql_count << " sql, "
            << decisions.size() - sql_count << " e2e)\n";
}

// ---- subcommand option bags ------------------------------------------------

struct IngestArgs {
  std::string tables, instances, sql_preds, e2e_preds;
  std::uint64_t seed = 0;
};

struct QueryArgs {
  std::string tables, table_id, query;
  std::uint64_t seed = 0;
};

struct TrainArgs {
  std::vector<std::string> features;  // several files pool their samples
  std::string selector = "rf", out;
  std::uint64_t seed = 0;
  ForestHyperparams forest;
  LogisticHyperparams logistic;
  KnnHyperparams knn;
  bool importance = false;
};

struct SelectArgs {
  CorpusOptions corpus;
  std::string mode, model, out;
};

struct VoteArgs {
  std::string preds, out;
  std::uint64_t seed = 0;
};

struct RouteArgs {
  CorpusOptions corpus;
  std::string backend = "stub", script, templates, endpoint, out;
  bool stub_oracle = false;
};

struct EvalArgs {
  CorpusOptions corpus;
  std::string decisions, mode = "confidence", model;
};

struct CurveArgs {
  CorpusOptions corpus;
  std::string fractions = "0,0.25,0.5,0.75,1";
  ForestHyperparams forest;
};

struct RobustArgs {
  std::string tables, pre_instances, post_instances, pre_decisions, post_decisions;
  std::uint64_t seed = 0;
};

struct FixtureArgs {
  std::string out, kind = "both";
  FixtureSpec spec;
};

void run_ingest(const IngestArgs& args) {
  auto tables = load_tables(args.tables);
  auto instances = load_instances(args.instances, tables);
  std::size_t with_sql = 0;
  for (const auto& inst : instances) {
    if (inst.gold_sql) ++with_sql;
  }
  json out{{"tables", tables.size()},
           {"instances", instances.size()},
           {"with_gold_sql", with_sql}};
  if (!args.sql_preds.empty()) out["sql_predictions"] = load_predictions(args.sql_preds).size();
  if (!args.e2e_preds.empty()) out["e2e_predictions"] = load_predictions(args.e2e_preds).size();
  std::cout << out.dump() << '\n';
  std::cerr << "ingested " << instances.size() << " instances over " << tables.size()
            << " tables, " << with_sql << " with gold SQL\n";
}

void run_exec_sql(const QueryArgs& args) {
  auto tables = load_tables(args.tables);
  auto it = tables.find(args.table_id);
  if (it == tables.end()) {
    throw Error(ErrorKind::UnknownTable, "no table '" + args.table_id + "'");
  }
  auto values = sql::execute(sql::parse_sql(args.query), it->second);
  for (const auto& value : values) std::cout << value.display() << '\n';
  std::cerr << values.size() << " value(s)\n";
}

void run_repair(const QueryArgs& args) {
  auto tables = load_tables(args.tables);
  auto it = tables.find(args.table_id);
  if (it == tables.end()) {
    throw Error(ErrorKind::UnknownTable, "no table '" + args.table_id + "'");
  }
  RepairReport report = repair_query(args.query, it->second);
  std::cout << repair_report_to_json(report).dump() << '\n';
  std::cerr << report.edits.size() << " edit(s)\n";
}

void run_featurize(const CorpusOptions& opts) {
  Corpus corpus = load_corpus(opts);
  auto sql_index = index_predictions(corpus.sql_preds);
  auto e2e_index = index_predictions(corpus.e2e_preds);
  std::size_t labeled = 0;
  for (const auto& inst : corpus.instances) {
    const ModelPrediction& sql_pred = pred_for(sql_index, inst.id, "sql");
    const ModelPrediction& e2e_pred = pred_for(e2e_index, inst.id, "e2e");
    FeatureVector fv = extract_features(inst, corpus.tables.at(inst.table_id), sql_pred,
                                        e2e_pred, opts.budget);
    json record;
    record["id"] = inst.id;
    record["vector"] = encode(fv);
    bool sql_ok = exact_match(sql_pred.answers, inst.gold_answers);
    bool e2e_ok = exact_match(e2e_pred.answers, inst.gold_answers);
    if (sql_ok != e2e_ok) {
      record["label"] = sql_ok ? "SQL_CORRECT" : "E2E_CORRECT";
      ++labeled;
    }
    std::cout << record.dump() << '\n';
  }
  std::cerr << "featurized " << corpus.instances.size() << " instances, " << labeled
            << " carry exclusive-disagreement labels\n";
}

void run_train(const TrainArgs& args) {
  TrainingSet data;
  for (const auto& file : args.features) {
    TrainingSet part = load_feature_records(file);
    data.vectors.insert(data.vectors.end(), part.vectors.begin(), part.vectors.end());
    data.labels.insert(data.labels.end(), part.labels.begin(), part.labels.end());
    data.instance_ids.insert(data.instance_ids.end(), part.instance_ids.begin(),
                             part.instance_ids.end());
  }
  std::unique_ptr<SelectorModel> model;
  if (args.selector == "rf") {
    model = train_forest(data, args.forest, args.seed);
  } else if (args.selector == "lr") {
    model = train_logistic(data, args.logistic);
  } else {
    model = train_knn(data, args.knn);
  }
  save_model(*model, args.out);
  json out{{"selector", args.selector},
           {"samples", data.size()},
           {"dim", data.dim()},
           {"training_accuracy", model->accuracy(data.vectors, data.labels)},
           {"model", args.out}};
  if (args.importance) {
    auto ranking = permutation_importance(*model, data.vectors, data.labels, 3, args.seed);
    json imp = json::array();
    for (const auto& fi : ranking) {
      std::string name = fi.feature < feature_names().size() ? feature_names()[fi.feature]
                                                             : std::to_string(fi.feature);
      imp.push_back(json{{"feature", name}, {"importance", fi.importance}});
    }
    out["importance"] = std::move(imp);
  }
  std::cout << out.dump() << '\n';
  std::cerr << "trained " << args.selector << " on " << data.size() << " samples -> "
            << args.out << '\n';
}

void run_select(const SelectArgs& args) {
  Corpus corpus = load_corpus(args.corpus);
  std::unique_ptr<SelectorModel> model;
  if (args.mode == "rf") {
    if (args.model.empty()) throw Error(ErrorKind::InvalidSpec, "--mode rf needs --model");
    model = load_model(args.model);
  }
  emit_decisions(decide_all(corpus, args.mode, model.get(), args.corpus.budget), args.out);
}

void run_vote(const VoteArgs& args) {
  auto preds = load_predictions(args.preds);
  std::size_t changed = 0;
  for (auto& pred : preds) {
    ModelPrediction voted = vote_prediction(pred);
    if (!answers_agree(voted.answers, pred.answers)) ++changed;
    pred = std::move(voted);
  }
  fs::path tmp = fs::temp_directory_path() / "syntqa_vote_out.jsonl";
  const fs::path out_path = args.out.empty() ? tmp : fs::path(args.out);
  save_predictions(preds, out_path);
  std::ifstream echo(out_path);
  std::cout << echo.rdbuf();
  if (args.out.empty()) fs::remove(tmp);
  std::cerr << "voting changed " << changed << " of " << preds.size() << " predictions\n";
}

void run_route(const RouteArgs& args) {
  Corpus corpus = load_corpus(args.corpus);
  auto sql_index = index_predictions(corpus.sql_preds);
  auto e2e_index = index_predictions(corpus.e2e_preds);
  PromptTemplates templates = args.templates.empty() ? PromptTemplates::builtin()
                                                     : PromptTemplates::load_dir(args.templates);

  std::unique_ptr<JudgeBackend> backend;
  const QAInstance* current = nullptr;
  if (args.backend == "http") {
    HttpBackendConfig config;
    config.endpoint = args.endpoint;
    backend = std::make_unique<HttpBackend>(config);
  } else {
    auto stub = std::make_unique<StubBackend>();
    // default script: every boolean module NO, comparison picks E2E
    for (JudgeModule module :
         {JudgeModule::Similarity, JudgeModule::Relevance, JudgeModule::Alignment,
          JudgeModule::Comparison, JudgeModule::Contradiction}) {
      stub->set_verdict(module,
                        module == JudgeModule::Comparison ? Verdict::PickE2e : Verdict::No);
    }
    if (!args.script.empty()) {
      std::ifstream in(args.script);
      if (!in) throw Error(ErrorKind::IoError, "cannot open " + args.script);
      json script = json::parse(in, nullptr, false);
      if (script.is_discarded() || !script.is_object()) {
        throw Error(ErrorKind::InvalidRecord, "stub script must be a JSON object");
      }
      for (const auto& [key, value] : script.items()) {
        stub->set_verdict(judge_module_from_name(key),
                          verdict_from_name(value.get<std::string>()));
      }
    }
    if (args.stub_oracle) {
      stub->set_rule([&current](const JudgeRequest& request) -> std::optional<Verdict> {
        if (!current) return std::nullopt;
        bool sql_ok = exact_match({request.sql_answer}, current->gold_answers);
        switch (request.module) {
          case JudgeModule::Similarity:
          case JudgeModule::Relevance:
          case JudgeModule::Alignment:
            return sql_ok ? Verdict::Yes : Verdict::No;
          case JudgeModule::Contradiction:
            return sql_ok ? Verdict::No : Verdict::Yes;
          case JudgeModule::Comparison:
            return sql_ok ? Verdict::PickSql : Verdict::PickE2e;
        }
        return std::nullopt;
      });
    }
    backend = std::move(stub);
  }

  std::vector<SelectorDecision> decisions;
  for (const auto& inst : corpus.instances) {
    current = &inst;
    decisions.push_back(route_with_fallback(inst, corpus.tables.at(inst.table_id),
                                            pred_for(sql_index, inst.id, "sql"),
                                            pred_for(e2e_index, inst.id, "e2e"), *backend,
                                            templates, args.corpus.budget));
  }
  emit_decisions(decisions, args.out);
}

void run_evaluate(const EvalArgs& args) {
  Corpus corpus = load_corpus(args.corpus);
  std::vector<SelectorDecision> decisions;
  if (!args.decisions.empty()) {
    decisions = load_decisions(args.decisions);
  } else {
    std::unique_ptr<SelectorModel> model;
    if (args.mode == "rf") {
      if (args.model.empty()) throw Error(ErrorKind::InvalidSpec, "--mode rf needs --model");
      model = load_model(args.model);
    }
    decisions = decide_all(corpus, args.mode, model.get(), args.corpus.budget);
  }
  auto sql_index = index_predictions(corpus.sql_preds);
  auto e2e_index = index_predictions(corpus.e2e_preds);
  EvalReport report =
      evaluate(corpus.instances, corpus.tables, sql_index, e2e_index, &decisions);
  std::cout << eval_report_to_json(report).dump() << '\n';
  std::cerr << eval_report_table(report);
}

void run_curve(const CurveArgs& args) {
  Corpus corpus = load_corpus(args.corpus);
  std::vector<double> fractions;
  std::stringstream ss(args.fractions);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!syntqa::trim(item).empty()) fractions.push_back(std::stod(item));
  }
  auto sql_index = index_predictions(corpus.sql_preds);
  auto e2e_index = index_predictions(corpus.e2e_preds);
  AnnotationCurveConfig config;
  config.forest = args.forest;
  config.budget = args.corpus.budget;
  auto curve = annotation_curve(corpus.instances, corpus.tables, sql_index, e2e_index,
                                fractions, args.corpus.seed, config);
  for (const auto& point : curve) {
    std::cout << json{{"fraction", point.fraction}, {"accuracy", point.accuracy}}.dump()
              << '\n';
  }
  std::cerr << "annotation curve over " << curve.size() << " fractions\n";
}

void run_robustness(const RobustArgs& args) {
  auto tables = load_tables(args.tables);
  auto pre_instances = load_instances(args.pre_instances, tables);
  auto post_instances = load_instances(args.post_instances, tables);
  auto pre_decisions = load_decisions(args.pre_decisions);
  auto post_decisions = load_decisions(args.post_decisions);
  auto rows = robustness_report(pre_instances, pre_decisions, post_instances, post_decisions);
  std::cout << robustness_rows_to_json(rows).dump() << '\n';
  for (const auto& [tag, row] : rows) {
    std::cerr << tag << ": pre=" << row.pre_accuracy << " post=" << row.post_accuracy
              << " r_acc_ratio=" << row.r_acc_ratio
              << " r_acc_consistency=" << row.r_acc_consistency << '\n';
  }
}

void run_make_fixture(FixtureArgs& args) {
  args.spec.signal_kind = signal_kind_from_name(args.kind);
  Fixture fixture = make_fixture(args.spec);
  fs::create_directories(fs::path(args.out) / "tables");
  for (const auto& [id, table] : fixture.tables) {
    save_table_csv(table, fs::path(args.out) / "tables" / (id + ".csv"));
  }
  save_instances(fixture.instances, fs::path(args.out) / "instances.jsonl");
  save_predictions(fixture.sql_preds, fs::path(args.out) / "sql_preds.jsonl");
  save_predictions(fixture.e2e_preds, fs::path(args.out) / "e2e_preds.jsonl");
  json out{{"out", args.out},
           {"n", args.spec.n},
           {"tables", fixture.tables.size()},
           {"seed", args.spec.seed},
           {"signal", args.spec.signal},
           {"signal_kind", std::string(signal_kind_name(args.spec.signal_kind))}};
  std::cout << out.dump() << '\n';
  std::cerr << "wrote fixture with " << args.spec.n << " instances to " << args.out << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"table question answering ensemble toolkit"};
  app.require_subcommand(1);

  IngestArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest", "load and validate a corpus");
  ingest->add_option("--tables", ingest_args.tables)->required();
  ingest->add_option("--instances", ingest_args.instances)->required();
  ingest->add_option("--sql-preds", ingest_args.sql_preds);
  ingest->add_option("--e2e-preds", ingest_args.e2e_preds);
  ingest->add_option("--seed", ingest_args.seed);
  ingest->callback([&] { run_ingest(ingest_args); });

  QueryArgs exec_args;
  auto* exec_cmd = app.add_subcommand("exec-sql", "execute a query against one table");
  exec_cmd->add_option("--tables", exec_args.tables)->required();
  exec_cmd->add_option("--table", exec_args.table_id)->required();
  exec_cmd->add_option("--query", exec_args.query)->required();
  exec_cmd->add_option("--seed", exec_args.seed);
  exec_cmd->callback([&] { run_exec_sql(exec_args); });

  QueryArgs repair_args;
  auto* repair_cmd = app.add_subcommand("repair", "post-process a query for one table");
  repair_cmd->add_option("--tables", repair_args.tables)->required();
  repair_cmd->add_option("--table", repair_args.table_id)->required();
  repair_cmd->add_option("--query", repair_args.query)->required();
  repair_cmd->add_option("--seed", repair_args.seed);
  repair_cmd->callback([&] { run_repair(repair_args); });

  CorpusOptions feat_args;
  auto* feat = app.add_subcommand("featurize", "emit encoded feature vectors");
  add_corpus_options(feat, feat_args);
  feat->callback([&] { run_featurize(feat_args); });

  TrainArgs train_args;
  auto* train = app.add_subcommand("train", "fit an answer selector");
  train->add_option("--features", train_args.features,
                    "featurize output; several files pool their samples")
      ->required();
  train->add_option("--selector", train_args.selector)
      ->check(CLI::IsMember({"rf", "lr", "knn"}));
  train->add_option("--out", train_args.out)->required();
  train->add_option("--seed", train_args.seed);
  train->add_option("--trees", train_args.forest.n_trees);
  train->add_option("--max-depth", train_args.forest.max_depth);
  train->add_option("--min-leaf", train_args.forest.min_leaf);
  train->add_option("--threads", train_args.forest.n_threads);
  train->add_option("--k", train_args.knn.k);
  train->add_option("--lr-rate", train_args.logistic.learning_rate);
  train->add_option("--iters", train_args.logistic.max_iters);
  train->add_flag("--importance", train_args.importance);
  train->callback([&] { run_train(train_args); });

  SelectArgs select_args;
  auto* select_cmd = app.add_subcommand("select", "choose answers from paired predictions");
  add_corpus_options(select_cmd, select_args.corpus);
  select_cmd->add_option("--mode", select_args.mode, "oracle | rf | confidence | vote")
      ->required()
      ->check(CLI::IsMember({"oracle", "rf", "confidence", "vote"}));
  select_cmd->add_option("--model", select_args.model);
  select_cmd->add_option("--out", select_args.out);
  select_cmd->callback([&] { run_select(select_args); });

  SelectArgs oracle_args;
  oracle_args.mode = "oracle";
  auto* oracle_cmd = app.add_subcommand("oracle", "upper-bound selection using gold answers");
  add_corpus_options(oracle_cmd, oracle_args.corpus);
  oracle_cmd->add_option("--out", oracle_args.out);
  oracle_cmd->callback([&] { run_select(oracle_args); });

  VoteArgs vote_args;
  auto* vote_cmd = app.add_subcommand("vote", "self-consistency voting over candidates");
  vote_cmd->add_option("--preds", vote_args.preds)->required();
  vote_cmd->add_option("--out", vote_args.out);
  vote_cmd->add_option("--seed", vote_args.seed);
  vote_cmd->callback([&] { run_vote(vote_args); });

  RouteArgs route_args;
  auto* route_cmd = app.add_subcommand("route", "heuristic module routing");
  add_corpus_options(route_cmd, route_args.corpus);
  route_cmd->add_option("--backend", route_args.backend)->check(CLI::IsMember({"stub", "http"}));
  route_cmd->add_option("--stub-script", route_args.script,
                        "JSON object of module -> YES/NO/PICK_SQL/PICK_E2E");
  route_cmd->add_flag("--stub-oracle", route_args.stub_oracle,
                      "stub verdicts derived from gold answers");
  route_cmd->add_option("--templates", route_args.templates, "prompt template directory");
  route_cmd->add_option("--endpoint", route_args.endpoint,
                        "judge endpoint (default: SYNTQA_LLM_ENDPOINT)");
  route_cmd->add_option("--out", route_args.out);
  route_cmd->callback([&] { run_route(route_args); });

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("evaluate", "score predictions and a decision stream");
  add_corpus_options(eval_cmd, eval_args.corpus);
  eval_cmd->add_option("--decisions", eval_args.decisions);
  eval_cmd->add_option("--mode", eval_args.mode, "oracle | rf | confidence | vote")
      ->check(CLI::IsMember({"oracle", "rf", "confidence", "vote"}));
  eval_cmd->add_option("--model", eval_args.model);
  eval_cmd->callback([&] { run_evaluate(eval_args); });

  CurveArgs curve_args;
  auto* curve_cmd =
      app.add_subcommand("annotation-curve", "accuracy versus SQL annotation budget");
  add_corpus_options(curve_cmd, curve_args.corpus);
  curve_cmd->add_option("--fractions", curve_args.fractions, "comma-separated, ascending");
  curve_cmd->add_option("--trees", curve_args.forest.n_trees);
  curve_cmd->callback([&] { run_curve(curve_args); });

  RobustArgs robust_args;
  auto* robust_cmd = app.add_subcommand("robustness", "pre/post perturbation accuracy report");
  robust_cmd->add_option("--tables", robust_args.tables)->required();
  robust_cmd->add_option("--pre-instances", robust_args.pre_instances)->required();
  robust_cmd->add_option("--post-instances", robust_args.post_instances)->required();
  robust_cmd->add_option("--pre-decisions", robust_args.pre_decisions)->required();
  robust_cmd->add_option("--post-decisions", robust_args.post_decisions)->required();
  robust_cmd->add_option("--seed", robust_args.seed);
  robust_cmd->callback([&] { run_robustness(robust_args); });

  FixtureArgs fixture_args;
  auto* fixture_cmd = app.add_subcommand("make-fixture", "write a synthetic corpus");
  fixture_cmd->add_option("--out", fixture_args.out)->required();
  fixture_cmd->add_option("--n", fixture_args.spec.n);
  fixture_cmd->add_option("--seed", fixture_args.spec.seed);
  fixture_cmd->add_option("--both", fixture_args.spec.both_correct);
  fixture_cmd->add_option("--sql-only", fixture_args.spec.sql_only);
  fixture_cmd->add_option("--e2e-only", fixture_args.spec.e2e_only);
  fixture_cmd->add_option("--both-wrong", fixture_args.spec.both_wrong);
  fixture_cmd->add_option("--signal", fixture_args.spec.signal);
  fixture_cmd->add_option("--signal-kind", fixture_args.kind,
                          "none | confidence | structural | both");
  fixture_cmd->add_option("--exec-fail", fixture_args.spec.exec_fail_fraction);
  fixture_cmd->add_option("--candidates", fixture_args.spec.candidate_fraction);
  fixture_cmd->add_option("--max-rows", fixture_args.spec.max_rows);
  fixture_cmd->callback([&] { run_make_fixture(fixture_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
