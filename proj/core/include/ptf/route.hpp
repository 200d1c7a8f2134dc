#pragma once

#include <span>
#include <vector>

#include "ptf/core.hpp"

namespace ptf {

/// Dense row-major real matrix, sized for routing work (a handful of rows
/// and columns).
struct RealMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  RealMatrix() = default;
  RealMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

/// Column-stochastic routing matrix produced by Sinkhorn projection. Columns
/// sum to 1; rows sum to cols/rows (1 in the square case).
struct RoutingMatrix {
  RealMatrix p;
  double row_target = 1.0;

  double column_sum(int c) const;
  double row_sum(int r) const;
};

/// Log-domain alternating row/column normalization of exp(logits), run for a
/// fixed iteration count (row update then column update per iteration, so
/// column sums end exact). Rejects non-finite logits.
RoutingMatrix sinkhorn_project(const RealMatrix& logits, int iterations = 20);

/// Per-column argmax parent selection; ties go to the lowest parent index.
std::vector<int> harden_routing(const RoutingMatrix& routing);

struct SignVector {
  std::vector<Sign> signs;

  void validate() const;
};

/// Hard routing plus per-child sign over a frozen parent mask bank.
struct CompositionPlan {
  std::vector<int> assignment;  // child -> parent index
  SignVector signs;             // one per child
  std::vector<TernaryMask> parents;

  void validate() const;
};

/// The child's parent mask with the child's sign applied coefficient-wise.
TernaryMask compose_mask(const CompositionPlan& plan, int child);

struct LinearFit {
  int parent = -1;
  Sign sign = +1;
  double accuracy = 0.0;
};

/// Exhaustive search over (parent, sign) pairs per target; sign fixed to +1
/// when allow_signs is false. Ties keep the lowest parent index, then the
/// +1 sign.
std::vector<LinearFit> solve_linear_composition(std::span<const TruthTable> targets,
                                                std::span<const TernaryMask> parents,
                                                bool allow_signs);

RealMatrix matmul(const RealMatrix& a, const RealMatrix& b);

/// Largest singular value via power iteration on A^T A.
double spectral_norm(const RealMatrix& a, int iterations = 200);

}  // namespace ptf
