#pragma once

#include <stdexcept>
#include <string>

namespace dkb {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by the KB file parser; carries 1-based position info.
struct ParseError : Error {
  ParseError(std::string msg, int line, int column)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  int line;
  int column;
};

// Semantic problems found after parsing (free effect variables, missing goal, ...).
struct ValidationError : Error {
  using Error::Error;
};

// An axiom whose shape is outside the accepted grammar.
struct MalformedAxiom : ValidationError {
  using ValidationError::ValidationError;
};

// Certain-answer evaluation was asked over an inconsistent state.
struct InconsistentState : Error {
  using Error::Error;
};

// Action application with a substitution that leaves effect variables free.
struct NonGroundEffect : Error {
  using Error::Error;
};

// Scenario generator parameters that cannot produce a well-posed problem.
struct InvalidParams : Error {
  using Error::Error;
};

// The random problem generator ran out of rejection-sampling retries.
struct GenerationExhausted : Error {
  using Error::Error;
};

struct InvalidRepetitions : Error {
  using Error::Error;
};

}  // namespace dkb
