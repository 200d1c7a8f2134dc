#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptf/core.hpp"
#include "ptf/parallel.hpp"
#include "ptf/registry.hpp"

namespace ptf {

/// Normalized Fourier coefficients of an n-variable function; for a
/// +-1-valued source, coefficients lie in [-1, 1] and satisfy Parseval
/// (sum of squares = 1).
struct SpectralVector {
  int n = 0;
  std::vector<double> coeffs;
};

/// Black-box access to an n-variable Boolean function. Queries must be
/// deterministic. n is capped at 63 so an input assignment fits one word.
struct Oracle {
  int n = 0;
  std::function<Sign(std::span<const Sign>)> query;
};

Oracle oracle_from(const TruthTable& table);
Oracle oracle_from(const OperationSpec& op);

/// Monte Carlo sampling plan. The Hoeffding floor for +-1 summands is
/// m >= 2 ln(2/delta) / epsilon^2, which for_accuracy() uses; validate()
/// enforces the weaker classical floor so caller-supplied plans with larger
/// epsilon budgets still pass.
struct EstimationPlan {
  double epsilon = 0.0;
  double delta = 0.0;
  std::int64_t m = 0;
  int max_degree = 0;

  static EstimationPlan for_accuracy(double epsilon, double delta, int max_degree);
  void validate() const;
};

namespace detail {

// Plain radix-2 butterflies over [0, size) for strides in [1, limit).
template <typename T>
void fwht_stages(T* values, std::size_t size, std::size_t limit) {
  for (std::size_t half = 1; half < limit; half <<= 1) {
    for (std::size_t block = 0; block < size; block += half << 1) {
      for (std::size_t i = block; i < block + half; ++i) {
        const T lo = values[i];
        const T hi = values[i + half];
        values[i] = lo + hi;
        values[i + half] = lo - hi;
      }
    }
  }
}

// Two consecutive stages (strides half and 2*half) fused into one pass,
// applied to the quadruple range [q_begin, q_end) of the size/4 independent
// butterflies.
template <typename T>
void fwht_radix4_quads(T* values, std::size_t half, std::size_t q_begin, std::size_t q_end) {
  std::size_t q = q_begin;
  while (q < q_end) {
    const std::size_t block_index = q / half;
    const std::size_t offset = q % half;
    const std::size_t run = std::min(q_end - q, half - offset);
    T* base = values + block_index * (half << 2) + offset;
    for (std::size_t i = 0; i < run; ++i) {
      const T x0 = base[i];
      const T x1 = base[i + half];
      const T x2 = base[i + 2 * half];
      const T x3 = base[i + 3 * half];
      const T s01 = x0 + x1;
      const T d01 = x0 - x1;
      const T s23 = x2 + x3;
      const T d23 = x2 - x3;
      base[i] = s01 + s23;
      base[i + half] = d01 + d23;
      base[i + 2 * half] = s01 - s23;
      base[i + 3 * half] = d01 - d23;
    }
    q += run;
  }
}

int fwht_worker_count(std::size_t size);

}  // namespace detail

/// In-place unnormalized Walsh-Hadamard transform. Applying it twice scales
/// the input by 2^n. Length must be a power of two.
///
/// Small-stride stages run block-local while each block is cache resident;
/// the remaining large-stride stages are fused pairwise (radix-4) and, for
/// large buffers, partitioned across workers (butterflies are independent,
/// so the result is bit-identical to the serial pass).
template <typename T>
void fwht_inplace(std::span<T> values) {
  const std::size_t size = values.size();
  if (size == 0 || !std::has_single_bit(size)) {
    throw std::invalid_argument("fwht: length must be a power of two");
  }
  constexpr std::size_t kBlockBase = std::size_t{1} << 14;  // 128 KiB of doubles
  if (size <= 2 * kBlockBase) {
    detail::fwht_stages(values.data(), size, size);
    return;
  }
  // Pick the local block so the remaining stage count is even; every
  // large-stride sweep is then a fused radix-4 pass.
  const int total_stages = std::countr_zero(size);
  const std::size_t block = (total_stages - 14) % 2 == 0 ? kBlockBase : kBlockBase << 1;
  const int workers = detail::fwht_worker_count(size);
  T* data = values.data();
  parallel_chunks(0, size / block, workers, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t b = lo; b < hi; ++b) detail::fwht_stages(data + b * block, block, block);
  });
  for (std::size_t half = block; half < size; half <<= 2) {
    parallel_chunks(0, size / 4, workers, [&](std::size_t, std::size_t lo, std::size_t hi) {
      detail::fwht_radix4_quads(data, half, lo, hi);
    });
  }
}

template <typename T>
std::vector<T> fwht(std::vector<T> values) {
  fwht_inplace(std::span<T>(values));
  return values;
}

/// Exact normalized spectrum of a truth table (integer transform divided by
/// 2^n at the boundary; the division is exact in binary floating point).
SpectralVector exact_coefficients(const TruthTable& table);

/// Monte Carlo estimate of one coefficient from m uniform samples drawn by
/// the counter-based generator keyed on (seed, sample index).
double estimate_coefficient(const Oracle& oracle, CharacterIndex s, const EstimationPlan& plan,
                            std::uint64_t seed);

struct SurveyEntry {
  CharacterIndex character;
  double estimate = 0.0;
};

/// Estimates every coefficient of degree <= plan.max_degree from one shared
/// sample batch. Entries are ordered by (degree, subset). Throws when the
/// candidate count exceeds the budget.
std::vector<SurveyEntry> low_degree_survey(const Oracle& oracle, const EstimationPlan& plan,
                                           std::uint64_t seed,
                                           std::size_t candidate_budget = 1u << 16);

/// Number of subsets of an n-element set with size <= d.
std::uint64_t low_degree_candidate_count(int n, int d);

struct FwhtBenchRow {
  int n = 0;
  std::size_t dimension = 0;
  double millis = 0.0;  // median wall time over the repetitions
  double mcoeffs_per_sec = 0.0;
  double megabytes = 0.0;
  bool ok = false;
  std::string note;
};

/// Times the double-precision transform on deterministic +-1 inputs and
/// reports the median over `repetitions`. Rows that fail to allocate are
/// reported and the sweep continues.
std::vector<FwhtBenchRow> fwht_benchmark(std::span<const int> n_values, int repetitions);

}  // namespace ptf
