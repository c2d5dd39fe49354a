#include <doctest.h>

#include "syntqa/metrics.hpp"

using namespace syntqa;

using Answers = std::vector<std::string>;

TEST_CASE("exact match normalizes case, whitespace, and quotes") {
  CHECK(exact_match({"New York"}, {"new york "}));
  CHECK(exact_match({"\"Paris\""}, {"paris"}));
  CHECK(exact_match({"a   b"}, {"a b"}));
  CHECK_FALSE(exact_match({"new york"}, {"newyork"}));
}

TEST_CASE("exact match compares numbers numerically") {
  CHECK(exact_match({"2,300"}, {"2300"}));
  CHECK(exact_match({"45%"}, {"45"}));
  CHECK(exact_match({"3.0"}, {"3"}));
  CHECK(exact_match({"0.5"}, {".5"}));
  CHECK_FALSE(exact_match({"3"}, {"4"}));
  CHECK_FALSE(exact_match({"3"}, {"three"}));
  CHECK(exact_match({"1.0000001"}, {"1.0000002"}));       // inside 1e-6
  CHECK_FALSE(exact_match({"1.0"}, {"1.001"}));           // outside 1e-6
}

TEST_CASE("exact match uses multiset semantics") {
  CHECK(exact_match({"a", "b"}, {"b", "a"}));
  CHECK_FALSE(exact_match({"a", "a"}, {"a"}));
  CHECK_FALSE(exact_match({"a"}, {"a", "a"}));
  CHECK(exact_match({"1", "one"}, {"one", "1"}));
  CHECK_FALSE(exact_match({}, {"a"}));
  CHECK_FALSE(exact_match({"a"}, {}));  // empty gold never matches
}

TEST_CASE("exact match is reflexive and symmetric") {
  std::vector<Answers> samples = {
      {"Alice"}, {"2,300"}, {"a", "b"}, {"Mixed", "42"}, {"  padded  "},
  };
  for (const auto& s : samples) {
    CHECK(exact_match(s, s));
    for (const auto& t : samples) {
      CHECK(exact_match(s, t) == exact_match(t, s));
    }
  }
}

TEST_CASE("answer keys group equivalent lists") {
  CHECK(answer_list_key({"B", "a"}) == answer_list_key({"a", "b"}));
  CHECK(answer_list_key({"2,300"}) == answer_list_key({"2300"}));
  CHECK(answer_list_key({"a"}) != answer_list_key({"a", "a"}));
}

TEST_CASE("normalize_answer canonicalizes numerics") {
  CHECK(normalize_answer(" '2,300' ") == "2300");
  CHECK(normalize_answer("New  York") == "new york");
  CHECK(normalize_answer("\"quoted\"") == "quoted");
}
