#pragma once

#include <stdexcept>
#include <string>

namespace ccf {

// Violated mathematical precondition (unknown scenario, probability <= 0, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Experiment config failed validation. Message names the offending field.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Base for anything wrong with input data.
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent projection CSV. Message names the line.
class IngestError : public DataError {
public:
  IngestError(const std::string& what, std::size_t line)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// Requested (location, scenario, year) keys are absent from the table.
class CoverageError : public DataError {
public:
  using DataError::DataError;
};

// Optimizer bounds cannot contain a solution.
class InfeasibleError : public DomainError {
public:
  using DomainError::DomainError;
};

}  // namespace ccf
