#include "ptf/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ptf/parallel.hpp"

namespace ptf {

void QuantizationConfig::validate() const {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::invalid_argument("quantization threshold must satisfy 0 < tau < 1");
  }
}

void McmcConfig::validate() const {
  if (temperatures.empty()) throw std::invalid_argument("mcmc: need at least one temperature");
  for (std::size_t i = 0; i < temperatures.size(); ++i) {
    if (!(temperatures[i] > 0.0)) throw std::invalid_argument("mcmc: temperatures must be positive");
    if (i > 0 && !(temperatures[i] > temperatures[i - 1])) {
      throw std::invalid_argument("mcmc: temperatures must be strictly ascending");
    }
  }
  if (max_sweeps < 1) throw std::invalid_argument("mcmc: max_sweeps must be >= 1");
  if (swap_interval < 1) throw std::invalid_argument("mcmc: swap_interval must be >= 1");
}

TernaryMask quantize_coefficients(const SpectralVector& spectrum, const QuantizationConfig& config) {
  config.validate();
  std::vector<Sign> coeffs(spectrum.coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double v = spectrum.coeffs[i];
    coeffs[i] = v > config.tau ? Sign{+1} : (v < -config.tau ? Sign{-1} : Sign{0});
  }
  return TernaryMask(spectrum.n, std::move(coeffs));
}

std::string to_string(InitStrategy s) {
  return s == InitStrategy::random_ternary ? "random_ternary" : "wht_threshold";
}

TernaryMask random_ternary_mask(int n, std::uint64_t seed) {
  rng::Stream stream(seed, 0x7e72ULL);
  std::vector<Sign> coeffs(std::size_t{1} << n);
  for (auto& c : coeffs) c = static_cast<Sign>(static_cast<int>(stream.below(3)) - 1);
  return TernaryMask(n, std::move(coeffs));
}

namespace mcmc {

TemperedSampler::TemperedSampler(const TruthTable& table, const McmcConfig& config,
                                 const TernaryMask& initial)
    : table_(&table),
      config_(config),
      dim_(table.size()),
      swap_rng_(config.seed, 0xffffULL),
      best_mismatches_(dim_ + 1) {
  config_.validate();
  if (initial.n() != table.n()) {
    throw std::invalid_argument("mcmc_refine: mask/table dimension mismatch");
  }
  const int chains = static_cast<int>(config_.temperatures.size());
  const std::vector<Sign> init(initial.coeffs().begin(), initial.coeffs().end());
  for (int c = 0; c < chains; ++c) {
    states_.push_back(init);
    chain_rng_.emplace_back(config_.seed, static_cast<std::uint64_t>(c));
    // dots[x] = <w, chi(x)>
    std::vector<std::int32_t> dots(dim_, 0);
    for (std::size_t x = 0; x < dim_; ++x) {
      dots[x] = static_cast<std::int32_t>(mask_dot_at(initial, x));
    }
    dots_.push_back(std::move(dots));
    std::size_t bad = 0;
    for (std::size_t x = 0; x < dim_; ++x) bad += sign_of(dots_[c][x]) != table.output(x);
    mismatches_.push_back(bad);
    record(c);
  }
}

int TemperedSampler::chain_count() const { return static_cast<int>(states_.size()); }

std::span<const Sign> TemperedSampler::state(int chain) const { return states_.at(chain); }

std::size_t TemperedSampler::mismatches(int chain) const { return mismatches_.at(chain); }

void TemperedSampler::record(int chain) {
  if (mismatches_[chain] < best_mismatches_) {
    best_mismatches_ = mismatches_[chain];
    best_state_ = states_[chain];
    if (best_mismatches_ == 0 && !first_perfect_sweep_) {
      // A hit inside a running sweep is charged to that sweep.
      first_perfect_sweep_ = sweeps_done_ + (in_sweep_ ? 1 : 0);
    }
  }
}

void TemperedSampler::resample_coordinate(int chain, std::size_t coord) {
  auto& state = states_[chain];
  auto& dots = dots_[chain];
  const Sign current = state[coord];
  const double temperature = config_.temperatures[static_cast<std::size_t>(chain)];

  // Mismatch counts for the three candidate values of this coefficient.
  std::size_t bad[3] = {0, 0, 0};
  const auto subset = static_cast<std::uint32_t>(coord);
  for (std::size_t x = 0; x < dim_; ++x) {
    const int chi = std::popcount(static_cast<std::uint32_t>(x) & subset) & 1 ? -1 : +1;
    const std::int32_t base = dots[x] - current * chi;
    const Sign want = table_->output(x);
    bad[0] += sign_of(base - chi) != want;  // value -1
    bad[1] += sign_of(base) != want;        // value 0
    bad[2] += sign_of(base + chi) != want;  // value +1
  }

  // Boltzmann weights over the full conditional.
  const double scale = 1.0 / static_cast<double>(dim_);
  const std::size_t min_bad = std::min({bad[0], bad[1], bad[2]});
  double weights[3];
  double total = 0.0;
  for (int v = 0; v < 3; ++v) {
    weights[v] = std::exp(-(static_cast<double>(bad[v] - min_bad) * scale) / temperature);
    total += weights[v];
  }
  const double draw = chain_rng_[chain].next_double() * total;
  int pick = 2;
  if (draw < weights[0]) {
    pick = 0;
  } else if (draw < weights[0] + weights[1]) {
    pick = 1;
  }

  const auto value = static_cast<Sign>(pick - 1);
  if (value != current) {
    const int delta = value - current;
    for (std::size_t x = 0; x < dim_; ++x) {
      const int chi = std::popcount(static_cast<std::uint32_t>(x) & subset) & 1 ? -1 : +1;
      dots[x] += delta * chi;
    }
    state[coord] = value;
    mismatches_[chain] = bad[static_cast<std::size_t>(pick)];
  } else {
    mismatches_[chain] = bad[static_cast<std::size_t>(pick)];
  }
}

void TemperedSampler::run_sweep(int chain) {
  in_sweep_ = true;
  // Coordinates visited in a fresh seeded random order each sweep.
  std::vector<std::size_t> order(dim_);
  for (std::size_t i = 0; i < dim_; ++i) order[i] = i;
  for (std::size_t i = dim_; i > 1; --i) {
    const std::size_t j = chain_rng_[chain].below(i);
    std::swap(order[i - 1], order[j]);
  }
  for (std::size_t coord : order) {
    resample_coordinate(chain, coord);
    record(chain);
  }
  in_sweep_ = false;
}

bool TemperedSampler::attempt_swap(int pair) {
  const auto i = static_cast<std::size_t>(pair);
  const double scale = 1.0 / static_cast<double>(dim_);
  const double e_lo = static_cast<double>(mismatches_[i]) * scale;
  const double e_hi = static_cast<double>(mismatches_[i + 1]) * scale;
  const double t_lo = config_.temperatures[i];
  const double t_hi = config_.temperatures[i + 1];
  const double log_accept = (e_lo - e_hi) * (1.0 / t_lo - 1.0 / t_hi);
  const bool accept = log_accept >= 0.0 || swap_rng_.next_double() < std::exp(log_accept);
  if (accept) {
    std::swap(states_[i], states_[i + 1]);
    std::swap(dots_[i], dots_[i + 1]);
    std::swap(mismatches_[i], mismatches_[i + 1]);
  }
  return accept;
}

void TemperedSampler::step() {
  for (int c = 0; c < chain_count(); ++c) run_sweep(c);
  ++sweeps_done_;
  if (chain_count() > 1 && sweeps_done_ % config_.swap_interval == 0) {
    attempt_swap(static_cast<int>(swap_rng_.below(static_cast<std::uint64_t>(chain_count() - 1))));
  }
}

}  // namespace mcmc

std::pair<TernaryMask, SynthesisTrace> mcmc_refine(const TernaryMask& initial,
                                                   const TruthTable& table,
                                                   const McmcConfig& config) {
  mcmc::TemperedSampler sampler(table, config, initial);
  SynthesisTrace trace;
  trace.seed = config.seed;
  trace.initial_accuracy = accuracy(initial, table);

  while (sampler.best_mismatches() > 0 && sampler.sweeps_done() < config.max_sweeps) {
    sampler.step();
  }

  TernaryMask best(initial.n(), sampler.best_state(), initial.variables());
  trace.final_accuracy =
      1.0 - static_cast<double>(sampler.best_mismatches()) / static_cast<double>(table.size());
  if (sampler.best_mismatches() == 0) trace.steps_to_perfect = sampler.first_perfect_sweep();
  return {std::move(best), trace};
}

std::pair<TernaryMask, SynthesisTrace> synthesize(const TruthTable& table,
                                                  const QuantizationConfig& q,
                                                  const McmcConfig& m) {
  const auto spectrum = exact_coefficients(table);
  const auto quantized = quantize_coefficients(spectrum, q);
  const double initial = accuracy(quantized, table);
  if (initial == 1.0) {
    SynthesisTrace trace;
    trace.initial_accuracy = initial;
    trace.final_accuracy = 1.0;
    trace.steps_to_perfect = 0;
    trace.seed = m.seed;
    return {quantized, trace};
  }
  auto [mask, trace] = mcmc_refine(quantized, table, m);
  trace.initial_accuracy = initial;
  return {std::move(mask), trace};
}

std::pair<TernaryMask, SynthesisTrace> synthesize(const OperationSpec& op,
                                                  const QuantizationConfig& q,
                                                  const McmcConfig& m) {
  auto [mask, trace] = synthesize(truth_table_of(op), q, m);
  trace.op_name = op.name;
  return {TernaryMask(mask.n(), std::vector<Sign>(mask.coeffs().begin(), mask.coeffs().end()),
                      op.variables),
          trace};
}

WarmstartResult warmstart_experiment(std::span<const OperationSpec> ops,
                                     std::span<const std::uint64_t> seeds,
                                     const QuantizationConfig& q, const McmcConfig& m,
                                     int workers) {
  if (ops.empty()) throw std::invalid_argument("warmstart: empty operation list");
  if (seeds.empty()) throw std::invalid_argument("warmstart: empty seed list");
  q.validate();
  m.validate();

  struct Job {
    std::size_t op_index;
    std::uint64_t seed;
    InitStrategy strategy;
  };
  std::vector<Job> jobs;
  for (std::size_t o = 0; o < ops.size(); ++o) {
    for (const auto seed : seeds) {
      jobs.push_back({o, seed, InitStrategy::random_ternary});
      jobs.push_back({o, seed, InitStrategy::wht_threshold});
    }
  }

  std::vector<WarmstartRecord> records(jobs.size());
  parallel_chunks(0, jobs.size(), workers, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const auto& job = jobs[j];
      const auto& op = ops[job.op_index];
      const auto table = truth_table_of(op);

      TernaryMask init = job.strategy == InitStrategy::random_ternary
                             ? random_ternary_mask(op.n, rng::at(job.seed, 0x1213, job.op_index))
                             : quantize_coefficients(exact_coefficients(table), q);
      McmcConfig run = m;
      run.seed = rng::at(job.seed, static_cast<std::uint64_t>(job.strategy), job.op_index);
      const auto [mask, trace] = mcmc_refine(init, table, run);

      WarmstartRecord rec;
      rec.strategy = job.strategy;
      rec.op = op.name;
      rec.seed = job.seed;
      rec.converged = trace.steps_to_perfect.has_value();
      rec.steps = rec.converged ? *trace.steps_to_perfect : m.max_sweeps;
      records[j] = std::move(rec);
    }
  });

  WarmstartResult result;
  result.records = std::move(records);
  for (InitStrategy strategy : {InitStrategy::random_ternary, InitStrategy::wht_threshold}) {
    std::vector<double> steps;
    int converged = 0;
    for (const auto& rec : result.records) {
      if (rec.strategy != strategy) continue;
      steps.push_back(rec.steps);
      converged += rec.converged;
    }
    WarmstartSummary summary;
    summary.strategy = strategy;
    summary.total = static_cast<int>(steps.size());
    summary.converged = converged;
    double mean = 0.0;
    for (double s : steps) mean += s;
    mean /= static_cast<double>(steps.size());
    double var = 0.0;
    for (double s : steps) var += (s - mean) * (s - mean);
    var = steps.size() > 1 ? var / static_cast<double>(steps.size() - 1) : 0.0;
    std::sort(steps.begin(), steps.end());
    summary.mean_steps = mean;
    summary.stddev_steps = std::sqrt(var);
    summary.median_steps = steps.size() % 2 == 1
                               ? steps[steps.size() / 2]
                               : 0.5 * (steps[steps.size() / 2 - 1] + steps[steps.size() / 2]);
    result.summaries.push_back(summary);
  }
  return result;
}

}  // namespace ptf
