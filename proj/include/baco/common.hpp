#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace baco {

using NodeId = std::uint32_t;
using RawLabel = std::uint32_t;

// A cluster label as used by the quality functions. Arbitrary integers;
// a co-cluster is the set of all nodes (users first, then items) sharing
// one value.
using Label = std::int64_t;
using Labeling = std::vector<Label>;

// Thrown on malformed text input (edge lists, assignment files).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Thrown by the solver in strict-budget mode when the label count cannot
// be driven down to the requested budget.
class BudgetError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace baco
