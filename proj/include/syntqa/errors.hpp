#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace syntqa {

enum class ErrorKind {
  // ingestion
  MalformedTable,
  DuplicateColumn,
  IoError,
  MissingField,
  UnknownTable,
  DuplicateId,
  InvalidRecord,
  // sql
  ParseError,
  UnknownColumn,
  TypeMismatch,
  EmptyAggregate,
  DivideByZero,
  // features / selectors
  MismatchedIds,
  DegenerateData,
  NonConvergence,
  DimensionMismatch,
  VersionMismatch,
  // ensemble / router
  EmptyCandidates,
  UnscriptedModule,
  BackendUnavailable,
  Timeout,
  TemplateMissing,
  // harness
  MissingInstance,
  MissingPrediction,
  UnpairedInstance,
  InvalidSpec,
};

std::string_view error_kind_name(ErrorKind kind);

/// Single exception type used across the toolkit; `kind` carries the error
/// taxonomy, `position`/`detail` are populated for parse errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  Error(ErrorKind kind, std::string message, std::size_t position, std::string expected)
      : std::runtime_error(std::string(error_kind_name(kind)) + " at " +
                           std::to_string(position) + ": " + message +
                           (expected.empty() ? "" : " (expected " + expected + ")")),
        kind_(kind),
        position_(position),
        expected_(std::move(expected)) {}

  ErrorKind kind() const { return kind_; }
  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  ErrorKind kind_;
  std::size_t position_ = 0;
  std::string expected_;
};

}  // namespace syntqa
