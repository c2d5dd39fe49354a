#include <doctest.h>

#include "syntqa/errors.hpp"
#include "syntqa/pipeline.hpp"
#include "syntqa/repair.hpp"
#include "syntqa/rng.hpp"
#include "syntqa/sql/executor.hpp"
#include "syntqa/sql/parser.hpp"

#include "support/generators.hpp"

using namespace syntqa;
using namespace syntqa::sql;

namespace {

TableData city_table() {
  return TableData::build(
      "cities", {"attendance", "date", "city"},
      {
          {CellValue::number(52000), CellValue::text("May 3"), CellValue::text("New York")},
          {CellValue::number(43000), CellValue::text("May 9"), CellValue::text("Boston")},
          {CellValue::number(51000), CellValue::text("June 1"), CellValue::text("Chicago")},
      });
}

}  // namespace

TEST_CASE("repair threshold follows min(2, ceil(0.34 * len))") {
  CHECK(repair_threshold("a") == 1);
  CHECK(repair_threshold("ab") == 1);
  CHECK(repair_threshold("abc") == 2);
  CHECK(repair_threshold("abcdef") == 2);
  CHECK(repair_threshold("attendance") == 2);
}

TEST_CASE("misspelled columns snap to the closest header") {
  TableData table = city_table();
  SqlQuery query = parse_sql("SELECT attendence FROM t");
  auto [repaired, edits] = repair_columns(query, table);
  REQUIRE(edits.size() == 1);
  CHECK(edits[0].kind == EditKind::Column);
  CHECK(edits[0].before == "attendence");
  CHECK(edits[0].after == "attendance");
  CHECK(edits[0].distance == 1);
  CHECK(std::get<SelectExpr::Column>(repaired.select[0].node).ref.name == "attendance");
}

TEST_CASE("exact columns pass through untouched") {
  TableData table = city_table();
  SqlQuery query = parse_sql("SELECT attendance FROM t WHERE city = 'Boston'");
  auto [repaired, edits] = repair_columns(query, table);
  CHECK(edits.empty());
  CHECK(repaired == query);
}

TEST_CASE("hopeless column names propagate UnknownColumn") {
  TableData table = city_table();  // headers all length >= 4
  SqlQuery query = parse_sql("SELECT zzz FROM t");
  try {
    repair_columns(query, table);
    FAIL("expected UnknownColumn");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownColumn);
  }
}

TEST_CASE("string literals snap to the closest cell value") {
  TableData table = city_table();
  SqlQuery query = parse_sql("SELECT date FROM t WHERE city = 'New Yrok'");
  auto [repaired, edits] = repair_literals(query, table);
  REQUIRE(edits.size() == 1);
  CHECK(edits[0].kind == EditKind::Literal);
  CHECK(edits[0].before == "New Yrok");
  CHECK(edits[0].after == "New York");
  CHECK(edits[0].distance == 2);
  CHECK(repaired.where[0].value() == CellValue::text("New York"));

  SUBCASE("exact literals stay") {
    SqlQuery exact = parse_sql("SELECT date FROM t WHERE city = 'boston'");
    auto [r2, e2] = repair_literals(exact, table);
    CHECK(e2.empty());
  }
  SUBCASE("numeric literals are never rewritten") {
    SqlQuery numeric = parse_sql("SELECT city FROM t WHERE attendance = 2000");
    auto [r3, e3] = repair_literals(numeric, table);
    CHECK(e3.empty());
    CHECK(r3 == numeric);
  }
  SUBCASE("distant literals are left untouched") {
    SqlQuery hopeless = parse_sql("SELECT date FROM t WHERE city = 'qqqqqqqq'");
    auto [r4, e4] = repair_literals(hopeless, table);
    CHECK(e4.empty());
  }
  SUBCASE("wildcard patterns are left untouched") {
    SqlQuery wild = parse_sql("SELECT date FROM t WHERE city LIKE 'New%'");
    auto [r5, e5] = repair_literals(wild, table);
    CHECK(e5.empty());
  }
}

TEST_CASE("type repair reroutes numeric comparisons on text columns") {
  TableData pts = TableData::build(
      "p", {"name", "score"},
      {
          {CellValue::text("a"), CellValue::text("10 pts")},
          {CellValue::text("b"), CellValue::text("3 pts")},
          {CellValue::text("c"), CellValue::text("12 pts")},
      });
  SqlQuery query = parse_sql("SELECT name FROM t WHERE score > 10");
  auto [repaired, edits] = repair_types(query, pts);
  REQUIRE(edits.size() == 1);
  CHECK(edits[0].kind == EditKind::Type);
  CHECK(repaired.where[0].column.numeric_cast);
  auto result = execute(repaired, pts);
  CHECK(result == std::vector<CellValue>{CellValue::text("c")});

  SUBCASE("numeric columns stay untouched") {
    TableData table = city_table();
    SqlQuery q2 = parse_sql("SELECT city FROM t WHERE attendance > 50000");
    auto [r2, e2] = repair_types(q2, table);
    CHECK(e2.empty());
    CHECK(r2 == q2);
  }
  SUBCASE("sum over a pure text column raises TypeMismatch") {
    TableData table = city_table();
    SqlQuery q3 = parse_sql("SELECT SUM(city) FROM t");
    try {
      repair_types(q3, table);
      FAIL("expected TypeMismatch");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::TypeMismatch);
    }
  }
  SUBCASE("sum over mostly-numeric text column is retargeted") {
    SqlQuery q4 = parse_sql("SELECT SUM(score) FROM t");
    auto [r4, e4] = repair_types(q4, pts);
    REQUIRE(e4.size() == 1);
    auto sum = execute(r4, pts);
    CHECK(sum == std::vector<CellValue>{CellValue::number(25)});
  }
}

TEST_CASE("full pipeline repairs and reports") {
  TableData table = city_table();
  RepairReport report = repair_query("SELECT attendence FROM t WHERE city = 'Bostn'", table);
  CHECK(report.edits.size() == 2);
  CHECK(report.repaired_sql == "SELECT attendance FROM t WHERE city = 'Boston'");
  auto result = execute(parse_sql(report.repaired_sql), table);
  CHECK(result == std::vector<CellValue>{CellValue::number(43000)});
  // a second pass finds nothing left to fix
  RepairReport again = repair_query(report.repaired_sql, table);
  CHECK(again.edits.empty());
  CHECK(again.repaired_sql == report.repaired_sql);
}

TEST_CASE("all three repair passes compose on one query") {
  TableData table = TableData::build(
      "games", {"attendance", "city", "score"},
      {
          {CellValue::number(52000), CellValue::text("New York"), CellValue::text("10 pts")},
          {CellValue::number(43000), CellValue::text("Boston"), CellValue::text("12 pts")},
          {CellValue::number(51000), CellValue::text("Chicago"), CellValue::text("3 pts")},
      });
  RepairReport report = repair_query(
      "SELECT attendence FROM t WHERE city = 'Chicago ' AND score > 5", table);
  // column snap + numeric cast; the literal already matches after trimming
  REQUIRE(report.edits.size() == 2);
  CHECK(report.edits[0].kind == EditKind::Column);
  CHECK(report.edits[1].kind == EditKind::Type);
  auto result = execute(parse_sql(report.repaired_sql), table);
  CHECK(result.empty());  // Chicago scored 3

  RepairReport full = repair_query(
      "SELECT attendence FROM t WHERE city = 'Bostn' AND score > 5", table);
  REQUIRE(full.edits.size() == 3);
  CHECK(full.edits[0].kind == EditKind::Column);
  CHECK(full.edits[1].kind == EditKind::Literal);
  CHECK(full.edits[2].kind == EditKind::Type);
  auto values = execute(parse_sql(full.repaired_sql), table);
  CHECK(values == std::vector<CellValue>{CellValue::number(43000)});
}

TEST_CASE("prediction materialization repairs, executes, and records failures") {
  TableData table = city_table();

  ModelPrediction pred;
  pred.instance_id = "q";
  pred.source = PredictionSource::Text2Sql;
  pred.n_tokens = 1;
  pred.seq_logprob = -0.5;
  pred.sql_text = "SELECT city FROM t WHERE attendence = 43000";

  SUBCASE("typo'd query repaired and executed") {
    ModelPrediction out = materialize_sql_prediction(pred, table);
    CHECK(out.exec_ok == true);
    CHECK(out.answers == std::vector<std::string>{"Boston"});
  }
  SUBCASE("repair disabled leaves the unknown column to fail") {
    MaterializeOptions options;
    options.repair = false;
    ModelPrediction out = materialize_sql_prediction(pred, table, options);
    CHECK(out.exec_ok == false);
    CHECK(out.answers.empty());
  }
  SUBCASE("unparseable queries record exec_ok=false") {
    pred.sql_text = "SELEC city FRM t";
    ModelPrediction out = materialize_sql_prediction(pred, table);
    CHECK(out.exec_ok == false);
    CHECK(out.answers.empty());
  }
  SUBCASE("already-executed predictions pass through") {
    pred.exec_ok = true;
    pred.answers = {"cached"};
    ModelPrediction out = materialize_sql_prediction(pred, table);
    CHECK(out.answers == std::vector<std::string>{"cached"});
    MaterializeOptions force;
    force.force = true;
    ModelPrediction redone = materialize_sql_prediction(pred, table, force);
    CHECK(redone.answers == std::vector<std::string>{"Boston"});
  }
  SUBCASE("e2e predictions pass through untouched") {
    ModelPrediction e2e;
    e2e.instance_id = "q";
    e2e.source = PredictionSource::E2E;
    e2e.answers = {"Boston"};
    CHECK(materialize_sql_prediction(e2e, table).answers ==
          std::vector<std::string>{"Boston"});
  }
}

TEST_CASE("repair is identity on well-formed queries") {
  Rng rng(99);
  for (int i = 0; i < 150; ++i) {
    TableData table = testing::random_table(rng);
    SqlQuery query = testing::well_formed_query(rng, table);
    std::string printed = print_sql(query);
    CAPTURE(printed);
    RepairReport report = repair_query(printed, table);
    CHECK(report.edits.empty());
    CHECK(report.repaired_sql == printed);
  }
}

TEST_CASE("repair is idempotent") {
  // typo'd queries force real edits; a second pass must find nothing
  Rng rng(123);
  int repaired_some = 0;
  for (int i = 0; i < 150; ++i) {
    TableData table = testing::random_table(rng);
    SqlQuery query = testing::well_formed_query(rng, table);
    for (auto& cond : query.where) {
      if (rng.uniform() < 0.5) {
        cond.column.name = testing::inject_typo(rng, cond.column.name, 1);
      } else if (cond.values.front().is_text()) {
        cond.values.front() = CellValue::text(
            testing::inject_typo(rng, cond.values.front().text_value(), 1));
      }
    }
    std::string sql = print_sql(query);
    RepairReport once;
    try {
      once = repair_query(sql, table);
    } catch (const Error&) {
      continue;  // a hopeless column name; the verdict is stable, nothing to re-run
    }
    repaired_some += !once.edits.empty();
    RepairReport twice = repair_query(once.repaired_sql, table);
    CHECK(twice.repaired_sql == once.repaired_sql);
    CHECK(twice.edits.empty());
  }
  CHECK(repaired_some > 5);
}

TEST_CASE("repair never breaks a succeeding query") {
  Rng rng(321);
  int checked = 0;
  for (int i = 0; i < 150; ++i) {
    TableData table = testing::random_table(rng);
    SqlQuery query = testing::random_query(rng, table);
    std::string printed = print_sql(query);
    bool ran_before = false;
    try {
      execute(query, table);
      ran_before = true;
    } catch (const Error&) {
    }
    if (!ran_before) continue;
    RepairReport report;
    try {
      report = repair_query(printed, table);
    } catch (const Error&) {
      // the execution pipeline falls back to the original query in this case
      continue;
    }
    CAPTURE(printed);
    CAPTURE(report.repaired_sql);
    CHECK_NOTHROW(execute(parse_sql(report.repaired_sql), table));
    ++checked;
  }
  CHECK(checked > 50);
}
