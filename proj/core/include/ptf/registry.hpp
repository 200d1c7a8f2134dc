#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptf/core.hpp"

namespace ptf {

/// A named Boolean operation with a total, deterministic evaluator.
/// The evaluator receives inputs in bit-position order: x[i] is the value of
/// the variable declared at position i (variables[i]).
struct OperationSpec {
  std::string name;
  int n = 0;
  std::vector<std::string> variables;
  std::function<Sign(std::span<const Sign>)> evaluator;
};

/// Materializes the operation's complete truth table (op.n <= 24).
TruthTable truth_table_of(const OperationSpec& op);

/// Built-in operation groups: 16 two-variable functions, 10 three-variable
/// operations, 10 four-variable operations. Group membership and naming are
/// stable; see the README for each operation's formula.
const std::vector<OperationSpec>& builtin_operations(int n);

/// Looks up an operation by name across all groups ("implies" style aliases
/// included). Returns nullptr when unknown.
const OperationSpec* find_operation(std::string_view name);

/// All registry names for error messages and CLI listings.
std::vector<std::string> registry_names();

}  // namespace ptf
