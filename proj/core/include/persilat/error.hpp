#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace persilat {

// Stable error codes. The CLI maps these to exit codes and JSON error records.
enum class ErrorCode {
  parse,
  field,
  shape,
  unknown_node,
  duplicate_node,
  duplicate_edge,
  cycle,
  commutativity,
  stabilization,
  budget,
  not_a_grid,
  not_a_filtration,
  not_a_zigzag,
  index,
  internal,
};

std::string_view to_string(ErrorCode code);

// Input errors (malformed files, bad shapes) as opposed to domain errors.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& message) : Error(ErrorCode::shape, message) {}
};

class FieldError : public Error {
 public:
  explicit FieldError(const std::string& message) : Error(ErrorCode::field, message) {}
};

class UnknownNodeError : public Error {
 public:
  explicit UnknownNodeError(const std::string& id)
      : Error(ErrorCode::unknown_node, "unknown node id '" + id + "'"), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class CycleError : public Error {
 public:
  explicit CycleError(std::vector<std::string> nodes);
  const std::vector<std::string>& nodes() const noexcept { return nodes_; }

 private:
  std::vector<std::string> nodes_;
};

class DuplicateEdgeError : public Error {
 public:
  DuplicateEdgeError(std::string from, std::string to)
      : Error(ErrorCode::duplicate_edge, "duplicate edge " + from + " -> " + to),
        from_(std::move(from)),
        to_(std::move(to)) {}
  const std::string& from() const noexcept { return from_; }
  const std::string& to() const noexcept { return to_; }

 private:
  std::string from_, to_;
};

// Two directed paths between the same pair compose to different matrices.
class CommutativityError : public Error {
 public:
  CommutativityError(std::string from, std::string to, std::vector<std::string> path_a,
                     std::vector<std::string> path_b);

  const std::string& from() const noexcept { return from_; }
  const std::string& to() const noexcept { return to_; }
  const std::vector<std::string>& path_a() const noexcept { return path_a_; }
  const std::vector<std::string>& path_b() const noexcept { return path_b_; }

 private:
  std::string from_, to_;
  std::vector<std::string> path_a_, path_b_;
};

class StabilizationDiagnostic : public Error {
 public:
  StabilizationDiagnostic(int iterations, std::vector<std::pair<std::size_t, std::size_t>> dims);
  int iterations() const noexcept { return iterations_; }
  // (dim meet, dim join) per iteration.
  const std::vector<std::pair<std::size_t, std::size_t>>& dims_history() const noexcept {
    return dims_history_;
  }

 private:
  int iterations_;
  std::vector<std::pair<std::size_t, std::size_t>> dims_history_;
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& message) : Error(ErrorCode::budget, message) {}
};

// Collects every violation found while reading an input, not just the first.
class ParseError : public Error {
 public:
  explicit ParseError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

}  // namespace persilat
