#include "syntqa/fixture.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "syntqa/errors.hpp"
#include "syntqa/rng.hpp"
#include "syntqa/text.hpp"

namespace syntqa {

std::string_view signal_kind_name(SignalKind kind) {
  switch (kind) {
    case SignalKind::None: return "none";
    case SignalKind::Confidence: return "confidence";
    case SignalKind::Structural: return "structural";
    case SignalKind::Both: return "both";
  }
  return "both";
}

SignalKind signal_kind_from_name(std::string_view name) {
  std::string lower = to_lower(name);
  if (lower == "none") return SignalKind::None;
  if (lower == "confidence") return SignalKind::Confidence;
  if (lower == "structural") return SignalKind::Structural;
  if (lower == "both") return SignalKind::Both;
  throw Error(ErrorKind::InvalidSpec, "unknown signal kind '" + std::string(name) + "'");
}

namespace {

enum Quadrant { kBoth = 0, kSqlOnly = 1, kE2eOnly = 2, kNeither = 3 };

const char* const kNouns[] = {"players", "teams", "events", "films", "cities", "albums"};
const char* const kAdjectives[] = {"longest", "newest", "largest", "highest", "earliest"};
const char* const kEntities[] = {"falcons", "rovers", "harbor lights", "red union",
                                 "northern star", "old bridge", "silver arrow"};

}  // namespace

std::array<std::size_t, 4> quadrant_counts(const FixtureSpec& spec) {
  std::array<double, 4> props = {spec.both_correct, spec.sql_only, spec.e2e_only,
                                 spec.both_wrong};
  double sum = 0.0;
  for (double p : props) {
    if (p < 0.0) throw Error(ErrorKind::InvalidSpec, "negative quadrant proportion");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw Error(ErrorKind::InvalidSpec, "quadrant proportions must sum to 1");
  }
  if (spec.n == 0) throw Error(ErrorKind::InvalidSpec, "fixture needs n >= 1");

  std::array<std::size_t, 4> counts;
  std::array<std::pair<double, std::size_t>, 4> remainders;
  std::size_t assigned = 0;
  for (std::size_t q = 0; q < 4; ++q) {
    double exact = props[q] * static_cast<double>(spec.n);
    counts[q] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    remainders[q] = {exact - std::floor(exact + 1e-9), q};
    assigned += counts[q];
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; assigned < spec.n; ++i, ++assigned) {
    counts[remainders[i % 4].second] += 1;
  }
  return counts;
}

Fixture make_fixture(const FixtureSpec& spec) {
  if (spec.signal < 0.0 || spec.signal > 1.0) {
    throw Error(ErrorKind::InvalidSpec, "signal must lie in [0, 1]");
  }
  auto counts = quadrant_counts(spec);

  std::vector<Quadrant> quadrants;
  quadrants.reserve(spec.n);
  for (std::size_t q = 0; q < 4; ++q) {
    quadrants.insert(quadrants.end(), counts[q], static_cast<Quadrant>(q));
  }
  Rng shuffle_rng(mix_seed(spec.seed, 1));
  shuffle_rng.shuffle(quadrants);

  Fixture fixture;

  // shared tables; row counts spread over the report buckets
  std::size_t n_tables = std::max<std::size_t>(1, spec.n / 8);
  Rng table_rng(mix_seed(spec.seed, 2));
  for (std::size_t t = 0; t < n_tables; ++t) {
    std::string id = "tab" + std::to_string(t);
    std::vector<std::string> header = {"rank", "name", "score", "year"};
    std::size_t rows = 1 + table_rng.bounded(std::max<std::size_t>(1, spec.max_rows));
    std::vector<std::vector<CellValue>> cells;
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<CellValue> row;
      row.push_back(CellValue::number(static_cast<double>(r + 1)));
      row.push_back(CellValue::text(std::string(kEntities[table_rng.bounded(7)]) + " " +
                                    std::to_string(table_rng.bounded(100))));
      row.push_back(CellValue::number(static_cast<double>(table_rng.bounded(500))));
      row.push_back(CellValue::number(static_cast<double>(1950 + table_rng.bounded(70))));
      cells.push_back(std::move(row));
    }
    TableData table = TableData::build(id, std::move(header), std::move(cells));
    fixture.tables.emplace(id, std::move(table));
  }

  std::array<std::size_t, 4> split_counter = {0, 0, 0, 0};
  for (std::size_t i = 0; i < spec.n; ++i) {
    Rng rng(mix_seed(spec.seed, 1000 + i));
    Quadrant quadrant = quadrants[i];
    bool sql_correct = quadrant == kBoth || quadrant == kSqlOnly;
    bool e2e_correct = quadrant == kBoth || quadrant == kE2eOnly;

    bool informative = rng.uniform() < spec.signal && spec.signal_kind != SignalKind::None;
    bool conf_signal = informative && (spec.signal_kind == SignalKind::Confidence ||
                                       spec.signal_kind == SignalKind::Both);
    bool struct_signal = informative && (spec.signal_kind == SignalKind::Structural ||
                                         spec.signal_kind == SignalKind::Both);

    QAInstance inst;
    inst.id = "inst" + std::to_string(i);
    inst.table_id = "tab" + std::to_string(rng.bounded(n_tables));
    inst.split = split_counter[quadrant]++ % 2 == 0 ? "train" : "test";

    // question flavor: counting questions favor the SQL side, entity
    // questions the E2E side; uninformative instances draw at random
    bool sql_flavor = struct_signal ? sql_correct : rng.uniform() < 0.5;
    const char* noun = kNouns[rng.bounded(6)];
    if (sql_flavor) {
      inst.question_tokens = {"how", "many", noun, "scored", "over",
                              std::to_string(10 + rng.bounded(90))};
    } else if (rng.uniform() < 0.5) {
      inst.question_tokens = {"what", "is", "the", kAdjectives[rng.bounded(5)], "name"};
    } else {
      inst.question_tokens = {"which", noun, "was", kAdjectives[rng.bounded(5)]};
    }

    // gold answers follow the flavor so answer dtypes carry the same signal
    auto gold_like = [&] {
      if (sql_flavor) return std::to_string(rng.bounded(200));
      return std::string(kEntities[rng.bounded(7)]) + " " + std::to_string(rng.bounded(1000));
    };
    inst.gold_answers = {gold_like()};
    inst.gold_sql = "SELECT COUNT(*) FROM t WHERE score > " + std::to_string(rng.bounded(100));

    // wrong answers: with structural signal the mistaken side looks the way
    // mistakes do (stray text); without it they must be indistinguishable in
    // distribution from gold or the dtype/substring features leak labels
    std::string wrong_sql, wrong_e2e;
    if (struct_signal) {
      wrong_sql = "miss sql " + std::to_string(i);
      wrong_e2e = "miss e2e " + std::to_string(i);
    } else {
      do { wrong_sql = gold_like(); } while (wrong_sql == inst.gold_answers[0]);
      do {
        wrong_e2e = gold_like();
      } while (wrong_e2e == inst.gold_answers[0] || wrong_e2e == wrong_sql);
    }

    ModelPrediction sql_pred;
    sql_pred.instance_id = inst.id;
    sql_pred.source = PredictionSource::Text2Sql;
    sql_pred.answers = sql_correct ? inst.gold_answers : std::vector<std::string>{wrong_sql};
    sql_pred.exec_ok = true;
    sql_pred.sql_text = rng.uniform() < 0.3
                            ? "SELECT c1_parsed FROM t WHERE c2_list > 1"
                            : "SELECT COUNT(*) FROM t WHERE score > 10";
    if (!sql_correct && rng.uniform() < spec.exec_fail_fraction) {
      sql_pred.exec_ok = false;
      sql_pred.answers.clear();
    }

    ModelPrediction e2e_pred;
    e2e_pred.instance_id = inst.id;
    e2e_pred.source = PredictionSource::E2E;
    e2e_pred.answers = e2e_correct ? inst.gold_answers : std::vector<std::string>{wrong_e2e};

    double sql_conf, e2e_conf;
    if (conf_signal) {
      sql_conf = sql_correct ? rng.uniform(0.75, 0.95) : rng.uniform(0.05, 0.25);
      e2e_conf = e2e_correct ? rng.uniform(0.75, 0.95) : rng.uniform(0.05, 0.25);
    } else {
      sql_conf = rng.uniform(0.3, 0.7);
      e2e_conf = rng.uniform(0.3, 0.7);
    }
    auto apply_conf = [&rng](ModelPrediction& pred, double conf) {
      pred.n_tokens = 1 + static_cast<int>(rng.bounded(8));
      pred.seq_logprob = std::log(conf) * pred.n_tokens;
    };
    apply_conf(sql_pred, sql_conf);
    apply_conf(e2e_pred, e2e_conf);

    if (rng.uniform() < spec.candidate_fraction && !e2e_pred.answers.empty()) {
      std::vector<std::vector<std::string>> candidates;
      candidates.push_back(e2e_pred.answers);
      candidates.push_back(e2e_pred.answers);
      candidates.push_back({"variant " + std::to_string(rng.bounded(50))});
      candidates.push_back(e2e_pred.answers);
      candidates.push_back({"variant " + std::to_string(50 + rng.bounded(50))});
      e2e_pred.candidates = std::move(candidates);
    }

    fixture.instances.push_back(std::move(inst));
    fixture.sql_preds.push_back(std::move(sql_pred));
    fixture.e2e_preds.push_back(std::move(e2e_pred));
  }
  return fixture;
}

}  // namespace syntqa
