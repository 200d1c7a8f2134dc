#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ptf/core.hpp"

namespace ptf::packed {

/// Bit-sliced evaluator for one ternary mask: 64 independent samples per
/// word, one word per input variable, bit 1 = TRUE (-1).
///
/// Each supported character contributes a +-1 term whose sign is the parity
/// of the selected input bits; the threshold sum over K terms is negative
/// exactly when more than K/2 term bits are set, so evaluation reduces to
/// XOR parities, a vertical-counter popcount and a bitwise magnitude
/// comparison.
class MaskKernel {
 public:
  explicit MaskKernel(const TernaryMask& mask);

  int n() const noexcept { return n_; }

  /// Evaluates 64 samples; returns the output word (bit 1 = TRUE).
  std::uint64_t eval(std::span<const std::uint64_t> input_words) const;

 private:
  int n_;
  // Characters with nonzero coefficient: variable subset and a flip word
  // (all-ones when the coefficient is -1).
  struct Term {
    std::uint32_t subset;
    std::uint64_t flip;
  };
  std::vector<Term> terms_;
  std::size_t majority_floor_;  // floor(K/2); TRUE needs strictly more set bits
};

/// Reference scalar path with the same 64-lane contract, for A/B comparison.
std::uint64_t eval_mask_naive64(const TernaryMask& mask, std::span<const std::uint64_t> input_words);

enum class Kernel { naive, packed };

std::string to_string(Kernel k);

struct ThroughputRow {
  Kernel kernel = Kernel::packed;
  std::size_t batch = 0;
  std::size_t op_count = 0;
  double millis = 0.0;
  double mops = 0.0;  // batch * ops / (seconds * 1e6)
};

/// batch * op_count / (seconds * 1e6).
double mega_ops(std::size_t batch, std::size_t op_count, double seconds);

/// Evaluates every mask over a seeded random batch (rounded up to whole
/// 64-sample words) and reports the median over repetitions.
ThroughputRow throughput_bench(std::span<const TernaryMask> masks, std::size_t batch,
                               int repetitions, Kernel kernel, std::uint64_t seed = 0);

}  // namespace ptf::packed
