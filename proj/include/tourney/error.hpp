#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tourney {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  PreconditionError(std::string condition, const std::string& detail)
      : Error(condition + ": " + detail), condition_(std::move(condition)) {}
  const std::string& condition() const { return condition_; }

 private:
  std::string condition_;
};

// Input too large for an exhaustive oracle.
class GuardError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", char " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Raised by multi-stage pipelines; `stage` names the step that broke.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& detail, std::vector<int> witness = {})
      : Error(stage + ": " + detail), stage_(std::move(stage)), witness_(std::move(witness)) {}
  const std::string& stage() const { return stage_; }
  const std::vector<int>& witness() const { return witness_; }

 private:
  std::string stage_;
  std::vector<int> witness_;
};

enum class Mode { strict, operational, best_effort };

const char* to_string(Mode m);
Mode parse_mode(const std::string& s);

}  // namespace tourney
