#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ptf/core.hpp"
#include "ptf/registry.hpp"
#include "ptf/rng.hpp"
#include "ptf/transform.hpp"

namespace ptf {

struct QuantizationConfig {
  double tau = 0.3;

  void validate() const;
};

/// Coefficient-wise thresholding: +1 above tau, -1 below -tau, else 0.
TernaryMask quantize_coefficients(const SpectralVector& spectrum, const QuantizationConfig& config);

struct McmcConfig {
  std::vector<double> temperatures{0.01, 0.1, 0.5, 1.0};  // strictly ascending
  int max_sweeps = 20000;
  int swap_interval = 1;  // sweeps between swap attempts
  std::uint64_t seed = 0;

  void validate() const;
};

enum class InitStrategy { random_ternary, wht_threshold };

std::string to_string(InitStrategy s);

struct SynthesisTrace {
  std::string op_name;
  double initial_accuracy = 0.0;
  double final_accuracy = 0.0;
  std::optional<int> steps_to_perfect;  // sweeps; present iff final accuracy is 1.0
  InitStrategy init_strategy = InitStrategy::wht_threshold;
  std::uint64_t seed = 0;
};

/// Parallel-tempering refinement over the ternary mask space with energy
/// E(c) = 1 - accuracy(c, table). All chains start from `initial`; one sweep
/// performs 2^n Gibbs coordinate resamplings per chain in a seeded random
/// order, followed by a replica-exchange attempt between one random adjacent
/// temperature pair. Returns the best mask ever visited; terminates early at
/// energy zero. Fully reproducible from config.seed.
std::pair<TernaryMask, SynthesisTrace> mcmc_refine(const TernaryMask& initial,
                                                   const TruthTable& table,
                                                   const McmcConfig& config);

/// Full pipeline: exact spectrum -> tau-threshold quantization -> MCMC
/// refinement when the quantized mask is imperfect.
std::pair<TernaryMask, SynthesisTrace> synthesize(const TruthTable& table,
                                                  const QuantizationConfig& q,
                                                  const McmcConfig& m);

/// Same, with the operation's name and variable order attached to the result.
std::pair<TernaryMask, SynthesisTrace> synthesize(const OperationSpec& op,
                                                  const QuantizationConfig& q,
                                                  const McmcConfig& m);

/// Uniform random ternary mask (each coefficient independently from
/// {-1, 0, +1}).
TernaryMask random_ternary_mask(int n, std::uint64_t seed);

struct WarmstartRecord {
  InitStrategy strategy;
  std::string op;
  std::uint64_t seed = 0;
  int steps = 0;  // sweeps to first perfect visit; max_sweeps when unconverged
  bool converged = false;
};

struct WarmstartSummary {
  InitStrategy strategy;
  double mean_steps = 0.0;
  double stddev_steps = 0.0;
  double median_steps = 0.0;
  int converged = 0;
  int total = 0;
};

struct WarmstartResult {
  std::vector<WarmstartRecord> records;
  std::vector<WarmstartSummary> summaries;  // one per strategy
};

/// Runs mcmc_refine for every (op, seed) pair from both a random ternary
/// initialization and the quantized exact spectrum, and aggregates
/// sweeps-to-perfect per strategy.
WarmstartResult warmstart_experiment(std::span<const OperationSpec> ops,
                                     std::span<const std::uint64_t> seeds,
                                     const QuantizationConfig& q, const McmcConfig& m,
                                     int workers = 1);

namespace mcmc {

/// The tempered chain ensemble behind mcmc_refine, exposed so tests can step
/// it and inspect states directly.
class TemperedSampler {
 public:
  TemperedSampler(const TruthTable& table, const McmcConfig& config, const TernaryMask& initial);

  int chain_count() const;
  std::span<const Sign> state(int chain) const;
  std::size_t mismatches(int chain) const;

  /// One Gibbs sweep (2^n single-coordinate resamplings) on one chain.
  void run_sweep(int chain);
  /// Replica-exchange attempt between chains (pair, pair+1); returns whether
  /// the swap was accepted.
  bool attempt_swap(int pair);
  /// Advances the whole ensemble by one sweep (all chains + swap schedule).
  void step();

  int sweeps_done() const { return sweeps_done_; }
  std::size_t best_mismatches() const { return best_mismatches_; }
  const std::vector<Sign>& best_state() const { return best_state_; }
  std::optional<int> first_perfect_sweep() const { return first_perfect_sweep_; }

 private:
  void record(int chain);
  void resample_coordinate(int chain, std::size_t coord);

  const TruthTable* table_;
  McmcConfig config_;
  std::size_t dim_;
  std::vector<std::vector<Sign>> states_;
  std::vector<std::vector<std::int32_t>> dots_;  // per-chain cached <w, chi(x)>
  std::vector<std::size_t> mismatches_;
  std::vector<rng::Stream> chain_rng_;
  rng::Stream swap_rng_;
  std::vector<Sign> best_state_;
  std::size_t best_mismatches_;
  std::optional<int> first_perfect_sweep_;
  int sweeps_done_ = 0;
  bool in_sweep_ = false;
};

}  // namespace mcmc

}  // namespace ptf
