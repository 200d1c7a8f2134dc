#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ptf/core.hpp"
#include "ptf/registry.hpp"

namespace ptf {

/// Outcome of exhaustive search for one operation.
struct EnumerationResult {
  std::string op_name;
  std::vector<TernaryMask> perfect_masks;
  std::optional<TernaryMask> selected;
  bool certificate_holds = false;
};

/// All ternary masks that reproduce the table exactly on every input, in
/// base-3 counter order (digit mapping 0->0, 1->+1, 2->-1, least significant
/// digit at character 0). Restricted to n <= 3; use the unbounded variant to
/// build n=4 ground truth explicitly.
std::vector<TernaryMask> enumerate_perfect_masks(const TruthTable& table, int workers = 1);

/// Same search without the n <= 3 guard (3^16 candidates at n = 4; several
/// cpu-minutes single-threaded).
std::vector<TernaryMask> enumerate_perfect_masks_unbounded(const TruthTable& table, int workers);

/// Maximum-zero-count candidate; ties broken by the lexicographically
/// smallest coefficient sequence under the value order 0 < +1 < -1.
TernaryMask select_mask(std::span<const TernaryMask> candidates);

/// Minimum of f(x) * <w, chi(x)> over all inputs.
std::int64_t min_margin(const TernaryMask& mask, const TruthTable& table);

/// True iff the strict margin condition f(x) * <w, chi(x)> >= 1 holds at
/// every input. Stricter than accuracy 1.0: zero dot products fail it.
bool margin_certificate(const TernaryMask& mask, const TruthTable& table);

struct RepresentabilityRow {
  std::string op;
  bool representable = false;
  std::optional<TernaryMask> selected;
  int support = 0;
  double sparsity = 0.0;
  bool certificate = false;
  std::size_t perfect_count = 0;
};

EnumerationResult enumerate_operation(const OperationSpec& op, int workers = 1);

/// One row per operation; all operations must share n <= 3.
std::vector<RepresentabilityRow> representability_report(std::span<const OperationSpec> ops,
                                                         int workers = 1);

}  // namespace ptf
