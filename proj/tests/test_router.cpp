#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <thread>

#include <httplib.h>

#include "syntqa/errors.hpp"
#include "syntqa/router/http_backend.hpp"
#include "syntqa/router/route.hpp"

using namespace syntqa;

namespace {

struct RouteFixture {
  TableData table = TableData::build(
      "t", {"name", "goals"},
      {{CellValue::text("Alice"), CellValue::number(3)},
       {CellValue::text("Bob"), CellValue::number(5)}});
  QAInstance instance;
  ModelPrediction sql_pred;
  ModelPrediction e2e_pred;

  RouteFixture() {
    instance.id = "q";
    instance.question_tokens = {"who", "scored", "most"};
    instance.table_id = "t";
    instance.gold_answers = {"Bob"};

    sql_pred.instance_id = "q";
    sql_pred.source = PredictionSource::Text2Sql;
    sql_pred.answers = {"Alice"};
    sql_pred.exec_ok = true;
    sql_pred.sql_text = "SELECT name FROM t";
    sql_pred.n_tokens = 1;
    sql_pred.seq_logprob = -0.5;

    e2e_pred.instance_id = "q";
    e2e_pred.source = PredictionSource::E2E;
    e2e_pred.answers = {"Bob"};
    e2e_pred.n_tokens = 1;
    e2e_pred.seq_logprob = -0.5;
  }
};

}  // namespace

TEST_CASE("agreement and execution failure bypass the backend") {
  RouteFixture f;
  StubBackend stub;  // unscripted: any call would throw

  SUBCASE("agreement routes to sql with no calls") {
    f.sql_pred.answers = {"Bob"};
    auto decision = route(f.instance, f.table, f.sql_pred, f.e2e_pred, stub);
    CHECK(decision.rationale_tag == "agreement");
    CHECK(decision.chosen_source == PredictionSource::Text2Sql);
    CHECK(stub.call_log().empty());
  }
  SUBCASE("execution failure routes to e2e with no calls") {
    f.sql_pred.exec_ok = false;
    f.sql_pred.answers.clear();
    auto decision = route(f.instance, f.table, f.sql_pred, f.e2e_pred, stub);
    CHECK(decision.rationale_tag == "exec_failed");
    CHECK(decision.chosen_source == PredictionSource::E2E);
    CHECK(stub.call_log().empty());
  }
  SUBCASE("empty sql answers route to e2e with no calls") {
    f.sql_pred.answers.clear();
    auto decision = route(f.instance, f.table, f.sql_pred, f.e2e_pred, stub);
    CHECK(decision.rationale_tag == "exec_failed");
    CHECK(stub.call_log().empty());
  }
}

TEST_CASE("module order and outcomes") {
  RouteFixture f;

  SUBCASE("similarity yes picks sql") {
    StubBackend stub({{JudgeModule::Similarity, Verdict::Yes}});
    auto decision = route(f.instance, f.table, f.sql_pred, f.e2e_pred, stub);
    CHECK(decision.rationale_tag == "similarity");
    CHECK(decision.chosen_source == PredictionSource::Text2Sql);
    CHECK(stub.call_log() == std::vector<JudgeModule>{JudgeModule::Similarity});
  }
  SUBCASE("relevance no picks e2e") {
    StubBackend stub({{JudgeModule::Similarity, Verdict::No},
                      {JudgeModule::Relevance, Verdict::No}});
    auto decision = route(f.instance, f.table, f.sql_pred, f.e2e_pred, stub);
    CHECK(decision.rationale_tag == "relevance");
    CHECK(decision.chosen_source == PredictionSource::E2E);
  }
  SUBCASE("alignment no picks e2e") {
    StubBackend stub({{JudgeModule::Similarity, Verdict::No},
                      {JudgeModule::Relevance, Verdict::Yes},
                      {JudgeModule::Alignment, Verdict::No}});
    auto decision = route(f.instance, f.table, f.sql_pred, f.e2e_pred, stub);
    CHECK(decision.rationale_tag == "alignment");
  }
  SUBCASE("comparison decides the residual case") {
    StubBackend stub({{JudgeModule::Similarity, Verdict::No},
                      {JudgeModule::Relevance, Verdict::Yes},
                      {JudgeModule::Alignment, Verdict::Yes},
                      {JudgeModule::Comparison, Verdict::PickE2e}});
    auto decision = route(f.instance, f.table, f.sql_pred, f.e2e_pred, stub);
    CHECK(decision.rationale_tag == "comparison");
    CHECK(decision.chosen_source == PredictionSource::E2E);
    CHECK(stub.call_log() ==
          std::vector<JudgeModule>{JudgeModule::Similarity, JudgeModule::Relevance,
                                   JudgeModule::Alignment, JudgeModule::Comparison});
  }
  SUBCASE("counting questions with small integers consult contradiction") {
    f.instance.question_tokens = {"how", "many", "players", "scored"};
    f.sql_pred.answers = {"2"};
    f.e2e_pred.answers = {"3"};
    StubBackend stub({{JudgeModule::Similarity, Verdict::No},
                      {JudgeModule::Relevance, Verdict::Yes},
                      {JudgeModule::Alignment, Verdict::Yes},
                      {JudgeModule::Contradiction, Verdict::Yes}});
    auto decision = route(f.instance, f.table, f.sql_pred, f.e2e_pred, stub);
    CHECK(decision.rationale_tag == "contradiction");
    CHECK(decision.chosen_source == PredictionSource::E2E);
    CHECK(stub.call_log().back() == JudgeModule::Contradiction);
  }
  SUBCASE("large integers skip contradiction") {
    f.instance.question_tokens = {"how", "many", "players", "scored"};
    f.sql_pred.answers = {"2"};
    f.e2e_pred.answers = {"900"};
    StubBackend stub({{JudgeModule::Similarity, Verdict::No},
                      {JudgeModule::Relevance, Verdict::Yes},
                      {JudgeModule::Alignment, Verdict::Yes},
                      {JudgeModule::Comparison, Verdict::PickSql}});
    auto decision = route(f.instance, f.table, f.sql_pred, f.e2e_pred, stub);
    CHECK(decision.rationale_tag == "comparison");
    CHECK(decision.chosen_source == PredictionSource::Text2Sql);
  }
  SUBCASE("unscripted module raises") {
    StubBackend stub({{JudgeModule::Similarity, Verdict::No}});
    try {
      route(f.instance, f.table, f.sql_pred, f.e2e_pred, stub);
      FAIL("expected UnscriptedModule");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnscriptedModule);
    }
  }
}

TEST_CASE("templates render with placeholders filled") {
  PromptTemplates templates = PromptTemplates::builtin();
  RenderContext context;
  context.question = "who scored most";
  context.answer_a = "Alice";
  context.answer_b = "Bob";
  std::string prompt = templates.render(JudgeModule::Similarity, context);
  CHECK(prompt.find("who scored most") != std::string::npos);
  CHECK(prompt.find("Alice") != std::string::npos);
  CHECK(prompt.find("Bob") != std::string::npos);
  CHECK(prompt.find("{question}") == std::string::npos);
  CHECK(prompt.find("# similarity") == std::string::npos);  // header stripped
}

TEST_CASE("template directory loading") {
  PromptTemplates from_repo =
      PromptTemplates::load_dir(std::filesystem::path(SYNTQA_SOURCE_DIR) / "templates");
  for (JudgeModule module :
       {JudgeModule::Similarity, JudgeModule::Relevance, JudgeModule::Alignment,
        JudgeModule::Comparison, JudgeModule::Contradiction}) {
    CHECK(from_repo.raw(module) == PromptTemplates::builtin().raw(module));
  }
  try {
    PromptTemplates::load_dir("no-such-dir");
    FAIL("expected TemplateMissing");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TemplateMissing);
  }
}

TEST_CASE("replaying a recorded verdict log reproduces decisions") {
  RouteFixture f;
  StubBackend stub({{JudgeModule::Similarity, Verdict::No},
                    {JudgeModule::Relevance, Verdict::Yes},
                    {JudgeModule::Alignment, Verdict::Yes},
                    {JudgeModule::Comparison, Verdict::PickSql}});
  RecordingBackend recorder(stub);
  auto original = route(f.instance, f.table, f.sql_pred, f.e2e_pred, recorder);

  ReplayBackend replay(recorder.log());
  auto replayed = route(f.instance, f.table, f.sql_pred, f.e2e_pred, replay);
  CHECK(replayed.chosen_source == original.chosen_source);
  CHECK(replayed.answers == original.answers);
  CHECK(replayed.rationale_tag == original.rationale_tag);
}

TEST_CASE("backend failure falls back to confidence selection") {
  class Unavailable : public JudgeBackend {
   public:
    JudgeVerdict judge(const JudgeRequest&) override {
      throw Error(ErrorKind::BackendUnavailable, "down");
    }
  } backend;

  RouteFixture f;
  f.sql_pred.seq_logprob = std::log(0.9);
  f.e2e_pred.seq_logprob = std::log(0.2);
  auto decision = route_with_fallback(f.instance, f.table, f.sql_pred, f.e2e_pred, backend);
  CHECK(decision.rationale_tag == "confidence_fallback");
  CHECK(decision.chosen_source == PredictionSource::Text2Sql);

  // agreement still short-circuits without touching the broken backend
  f.sql_pred.answers = f.e2e_pred.answers;
  auto agreed = route_with_fallback(f.instance, f.table, f.sql_pred, f.e2e_pred, backend);
  CHECK(agreed.rationale_tag == "agreement");
}

TEST_CASE("reply parsing picks the first verdict token") {
  CHECK(parse_backend_reply(JudgeModule::Similarity, "Yes, they match.").first == Verdict::Yes);
  CHECK(parse_backend_reply(JudgeModule::Relevance, "no").first == Verdict::No);
  CHECK(parse_backend_reply(JudgeModule::Comparison, "B").first == Verdict::PickE2e);
  CHECK(parse_backend_reply(JudgeModule::Comparison, "Answer: A.").first == Verdict::PickSql);
  auto [fallback_bool, ok_bool] = parse_backend_reply(JudgeModule::Alignment, "unclear");
  CHECK(fallback_bool == Verdict::No);
  CHECK_FALSE(ok_bool);
  auto [fallback_cmp, ok_cmp] = parse_backend_reply(JudgeModule::Comparison, "unclear");
  CHECK(fallback_cmp == Verdict::PickE2e);
  CHECK_FALSE(ok_cmp);
}

TEST_CASE("http backend against a local judge server") {
  httplib::Server server;
  std::atomic<int> hits{0};
  server.Post("/judge", [&](const httplib::Request& req, httplib::Response& res) {
    ++hits;
    // reply YES when the prompt mentions Alice, else NO
    if (req.body.find("Alice") != std::string::npos) {
      res.set_content("{\"reply\":\"Yes, same entity.\"}", "application/json");
    } else {
      res.set_content("no", "text/plain");
    }
  });
  int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread server_thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  HttpBackendConfig config;
  config.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/judge";
  config.timeout_seconds = 5;
  HttpBackend backend(config);

  JudgeRequest request;
  request.module = JudgeModule::Similarity;
  request.prompt = "Answer A: Alice / Answer B: Alice";
  CHECK(backend.judge(request).verdict == Verdict::Yes);
  request.prompt = "Answer A: x / Answer B: y";
  CHECK(backend.judge(request).verdict == Verdict::No);
  CHECK(hits == 2);

  SUBCASE("comparison parsing and fallback") {
    httplib::Server cmp;
    cmp.Post("/judge", [&](const httplib::Request&, httplib::Response& res) {
      res.set_content("B", "text/plain");
    });
    int cmp_port = cmp.bind_to_any_port("127.0.0.1");
    std::thread cmp_thread([&] { cmp.listen_after_bind(); });
    cmp.wait_until_ready();
    HttpBackendConfig cfg;
    cfg.endpoint = "http://127.0.0.1:" + std::to_string(cmp_port) + "/judge";
    HttpBackend cmp_backend(cfg);
    JudgeRequest cmp_request;
    cmp_request.module = JudgeModule::Comparison;
    cmp_request.prompt = "pick one";
    CHECK(cmp_backend.judge(cmp_request).verdict == Verdict::PickE2e);
    cmp.stop();
    cmp_thread.join();
  }

  server.stop();
  server_thread.join();
}

TEST_CASE("http backend reports unreachable endpoints") {
  HttpBackendConfig config;
  config.endpoint = "http://127.0.0.1:9/judge";  // discard port, nothing listens
  config.timeout_seconds = 1;
  config.max_retries = 1;
  HttpBackend backend(config);
  JudgeRequest request;
  request.module = JudgeModule::Similarity;
  request.prompt = "hello";
  try {
    backend.judge(request);
    FAIL("expected BackendUnavailable or Timeout");
  } catch (const Error& e) {
    CHECK((e.kind() == ErrorKind::BackendUnavailable || e.kind() == ErrorKind::Timeout));
  }
}

TEST_CASE("endpoint resolution from the environment") {
  ::unsetenv(kLlmEndpointEnvVar);
  CHECK_THROWS_AS(HttpBackend(HttpBackendConfig{}), Error);
  ::setenv(kLlmEndpointEnvVar, "http://127.0.0.1:8099/judge", 1);
  HttpBackend backend{HttpBackendConfig{}};
  CHECK(backend.endpoint() == "http://127.0.0.1:8099/judge");
  ::unsetenv(kLlmEndpointEnvVar);
}
