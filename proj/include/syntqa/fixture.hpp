#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "syntqa/instance.hpp"
#include "syntqa/table.hpp"

namespace syntqa {

enum class SignalKind { None, Confidence, Structural, Both };

std::string_view signal_kind_name(SignalKind kind);
SignalKind signal_kind_from_name(std::string_view name);

/// Synthetic corpus spec: quadrant proportions of (SQL, E2E) correctness,
/// how strongly the feature vector reveals the correct side, and which
/// feature families carry that signal.
struct FixtureSpec {
  std::size_t n = 1000;
  double both_correct = 0.498;
  double sql_only = 0.149;
  double e2e_only = 0.128;
  double both_wrong = 0.225;
  double signal = 1.0;                        ///< 0 = uninformative features
  SignalKind signal_kind = SignalKind::Both;
  double exec_fail_fraction = 0.0;            ///< among SQL-incorrect instances
  double candidate_fraction = 0.0;            ///< predictions carrying vote candidates
  std::size_t max_rows = 60;
  std::uint64_t seed = 1;
};

struct Fixture {
  std::map<std::string, TableData> tables;
  std::vector<QAInstance> instances;
  std::vector<ModelPrediction> sql_preds;
  std::vector<ModelPrediction> e2e_preds;
};

/// Quadrant frequencies hit the spec exactly up to largest-remainder
/// rounding (within 1/n per quadrant).
Fixture make_fixture(const FixtureSpec& spec);

/// Exact largest-remainder apportionment of n over the four quadrants.
std::array<std::size_t, 4> quadrant_counts(const FixtureSpec& spec);

}  // namespace syntqa
