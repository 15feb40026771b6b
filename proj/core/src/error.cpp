#include "persilat/error.hpp"

namespace persilat {

namespace {

std::string join_path(const std::vector<std::string>& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += " -> ";
    out += path[i];
  }
  return out;
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse: return "ParseError";
    case ErrorCode::field: return "FieldError";
    case ErrorCode::shape: return "ShapeError";
    case ErrorCode::unknown_node: return "UnknownNodeError";
    case ErrorCode::duplicate_node: return "DuplicateNodeError";
    case ErrorCode::duplicate_edge: return "DuplicateEdgeError";
    case ErrorCode::cycle: return "CycleError";
    case ErrorCode::commutativity: return "CommutativityError";
    case ErrorCode::stabilization: return "StabilizationDiagnostic";
    case ErrorCode::budget: return "BudgetExceeded";
    case ErrorCode::not_a_grid: return "NotAGridError";
    case ErrorCode::not_a_filtration: return "NotAFiltrationError";
    case ErrorCode::not_a_zigzag: return "NotAZigZagError";
    case ErrorCode::index: return "IndexError";
    case ErrorCode::internal: return "InternalError";
  }
  return "Error";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse:
    case ErrorCode::field:
    case ErrorCode::shape:
    case ErrorCode::unknown_node:
    case ErrorCode::duplicate_node:
    case ErrorCode::index:
      return true;
    default:
      return false;
  }
}

CycleError::CycleError(std::vector<std::string> nodes)
    : Error(ErrorCode::cycle, "edge relation has a cycle through " + join_path(nodes)),
      nodes_(std::move(nodes)) {}

CommutativityError::CommutativityError(std::string from, std::string to,
                                       std::vector<std::string> path_a,
                                       std::vector<std::string> path_b)
    : Error(ErrorCode::commutativity, "diagram does not commute between " + from + " and " + to +
                                          ": paths [" + join_path(path_a) + "] and [" +
                                          join_path(path_b) + "] compose to different maps"),
      from_(std::move(from)),
      to_(std::move(to)),
      path_a_(std::move(path_a)),
      path_b_(std::move(path_b)) {}

StabilizationDiagnostic::StabilizationDiagnostic(
    int iterations, std::vector<std::pair<std::size_t, std::size_t>> dims)
    : Error(ErrorCode::stabilization, "meet/join construction did not reach a fixpoint within " +
                                          std::to_string(iterations) + " iterations"),
      iterations_(iterations),
      dims_history_(std::move(dims)) {}

ParseError::ParseError(std::vector<std::string> issues)
    : Error(ErrorCode::parse, [&] {
        std::string msg = "invalid input";
        for (const auto& issue : issues) msg += "\n  " + issue;
        return msg;
      }()),
      issues_(std::move(issues)) {}

}  // namespace persilat
