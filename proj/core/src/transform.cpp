#include "ptf/transform.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <new>

#include "ptf/rng.hpp"

namespace ptf {

namespace {

constexpr int kMaxTransformN = 24;
constexpr int kMaxOracleN = 63;

int chi_sign(std::uint64_t bits, std::uint64_t subset) {
  return std::popcount(bits & subset) & 1 ? -1 : +1;
}

}  // namespace

namespace detail {

int fwht_worker_count(std::size_t size) {
  if (size < (std::size_t{1} << 19)) return 1;
  return std::min(resolve_workers(0), 8);
}

}  // namespace detail

Oracle oracle_from(const TruthTable& table) {
  const int n = table.n();
  return Oracle{n, [table, n](std::span<const Sign> x) {
                  std::size_t idx = 0;
                  for (int i = 0; i < n; ++i) {
                    if (x[static_cast<std::size_t>(i)] == kTrue) idx |= std::size_t{1} << i;
                  }
                  return table.output(idx);
                }};
}

Oracle oracle_from(const OperationSpec& op) {
  if (op.n > kMaxOracleN) throw std::invalid_argument("oracle: n exceeds 63");
  return Oracle{op.n, op.evaluator};
}

EstimationPlan EstimationPlan::for_accuracy(double epsilon, double delta, int max_degree) {
  EstimationPlan plan;
  plan.epsilon = epsilon;
  plan.delta = delta;
  plan.max_degree = max_degree;
  if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("estimation plan requires 0 < epsilon, delta < 1");
  }
  plan.m = static_cast<std::int64_t>(std::ceil(2.0 * std::log(2.0 / delta) / (epsilon * epsilon)));
  plan.validate();
  return plan;
}

void EstimationPlan::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("estimation plan requires 0 < epsilon, delta < 1");
  }
  const auto floor_m =
      static_cast<std::int64_t>(std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon)));
  if (m < floor_m) {
    throw std::invalid_argument("estimation plan sample count below the Hoeffding floor");
  }
  if (max_degree < 0) throw std::invalid_argument("estimation plan degree must be >= 0");
}

SpectralVector exact_coefficients(const TruthTable& table) {
  if (table.n() > kMaxTransformN) {
    throw std::invalid_argument("exact_coefficients: n exceeds the transform bound");
  }
  std::vector<std::int64_t> work(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) work[i] = table.output(i);
  fwht_inplace(std::span<std::int64_t>(work));
  SpectralVector spectrum{table.n(), std::vector<double>(table.size())};
  const auto scale = 1.0 / static_cast<double>(table.size());
  for (std::size_t i = 0; i < work.size(); ++i) {
    spectrum.coeffs[i] = static_cast<double>(work[i]) * scale;
  }
  return spectrum;
}

double estimate_coefficient(const Oracle& oracle, CharacterIndex s, const EstimationPlan& plan,
                            std::uint64_t seed) {
  plan.validate();
  if (oracle.n > kMaxOracleN) throw std::invalid_argument("oracle: n exceeds 63");
  if (s.n != oracle.n || (std::uint64_t{s.subset} >> oracle.n) != 0) {
    throw std::invalid_argument("estimate_coefficient: character does not match the oracle");
  }
  const std::uint64_t input_mask = (1ULL << oracle.n) - 1;
  std::int64_t acc = 0;
  std::vector<Sign> x(static_cast<std::size_t>(oracle.n));
  for (std::int64_t j = 0; j < plan.m; ++j) {
    const std::uint64_t bits = rng::at(seed, 0, static_cast<std::uint64_t>(j)) & input_mask;
    for (int i = 0; i < oracle.n; ++i) x[static_cast<std::size_t>(i)] = (bits >> i) & 1 ? kTrue : kFalse;
    acc += oracle.query(x) * chi_sign(bits, s.subset);
  }
  return static_cast<double>(acc) / static_cast<double>(plan.m);
}

std::uint64_t low_degree_candidate_count(int n, int d) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;
  for (int k = 0; k <= d && k <= n; ++k) {
    total += binom;
    binom = binom * static_cast<std::uint64_t>(n - k) / static_cast<std::uint64_t>(k + 1);
  }
  return total;
}

std::vector<SurveyEntry> low_degree_survey(const Oracle& oracle, const EstimationPlan& plan,
                                           std::uint64_t seed, std::size_t candidate_budget) {
  plan.validate();
  if (plan.max_degree > oracle.n) {
    throw std::invalid_argument("low_degree_survey: degree cap exceeds the variable count");
  }
  const std::uint64_t count = low_degree_candidate_count(oracle.n, plan.max_degree);
  if (count > candidate_budget) {
    throw std::invalid_argument("low_degree_survey: " + std::to_string(count) +
                                " candidates exceed the budget of " +
                                std::to_string(candidate_budget));
  }

  // Candidates in (degree, subset) order, each degree enumerated by
  // Gosper's hack.
  std::vector<std::uint64_t> subsets;
  subsets.reserve(count);
  subsets.push_back(0);
  for (int d = 1; d <= plan.max_degree; ++d) {
    std::uint64_t s = (1ULL << d) - 1;
    while (s < (1ULL << oracle.n)) {
      subsets.push_back(s);
      const std::uint64_t c = s & (~s + 1);
      const std::uint64_t r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
  }

  const std::uint64_t input_mask = (1ULL << oracle.n) - 1;
  std::vector<double> acc(subsets.size(), 0.0);
  std::vector<Sign> x(static_cast<std::size_t>(oracle.n));
  for (std::int64_t j = 0; j < plan.m; ++j) {
    const std::uint64_t bits = rng::at(seed, 0, static_cast<std::uint64_t>(j)) & input_mask;
    for (int i = 0; i < oracle.n; ++i) x[static_cast<std::size_t>(i)] = (bits >> i) & 1 ? kTrue : kFalse;
    const int f = oracle.query(x);
    for (std::size_t c = 0; c < subsets.size(); ++c) {
      acc[c] += f * chi_sign(bits, subsets[c]);
    }
  }

  std::vector<SurveyEntry> out;
  out.reserve(subsets.size());
  for (std::size_t c = 0; c < subsets.size(); ++c) {
    out.push_back(SurveyEntry{CharacterIndex{static_cast<std::uint32_t>(subsets[c]), oracle.n},
                              acc[c] / static_cast<double>(plan.m)});
  }
  return out;
}

std::vector<FwhtBenchRow> fwht_benchmark(std::span<const int> n_values, int repetitions) {
  if (repetitions < 1) throw std::invalid_argument("fwht_benchmark: repetitions must be >= 1");
  std::vector<FwhtBenchRow> rows(n_values.size());
  std::vector<std::vector<double>> bases(n_values.size());
  std::size_t work_size = 0;

  for (std::size_t k = 0; k < n_values.size(); ++k) {
    auto& row = rows[k];
    row.n = n_values[k];
    if (row.n < 1 || row.n > kMaxTransformN) {
      row.note = "n outside the supported range 1..24";
      continue;
    }
    row.dimension = std::size_t{1} << row.n;
    row.megabytes = static_cast<double>(row.dimension) * sizeof(double) / (1024.0 * 1024.0);
    try {
      bases[k].resize(row.dimension);
      for (std::size_t i = 0; i < row.dimension; ++i) {
        bases[k][i] = rng::at(0x5eedULL, static_cast<std::uint64_t>(row.n), i) & 1 ? -1.0 : 1.0;
      }
      row.ok = true;
      work_size = std::max(work_size, row.dimension);
    } catch (const std::bad_alloc&) {
      bases[k].clear();
      row.note = "allocation failed";
    }
  }

  std::vector<double> work;
  try {
    work.resize(work_size);
  } catch (const std::bad_alloc&) {
    for (auto& row : rows) {
      if (row.ok) {
        row.ok = false;
        row.note = "allocation failed";
      }
    }
    return rows;
  }

  // One untimed warmup pass per size, then interleaved timed repetitions so
  // a transient stall lands on at most one sample per size; the median
  // discards it.
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (!rows[k].ok) continue;
    std::copy(bases[k].begin(), bases[k].end(), work.begin());
    fwht_inplace(std::span<double>(work.data(), rows[k].dimension));
  }
  std::vector<std::vector<double>> wall(rows.size());
  for (int rep = 0; rep < repetitions; ++rep) {
    // Rotate the visit order so a sustained stall cannot keep hitting the
    // same size at the same phase of every round.
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const std::size_t k = (j + static_cast<std::size_t>(rep)) % rows.size();
      if (!rows[k].ok) continue;
      std::copy(bases[k].begin(), bases[k].end(), work.begin());
      const auto t0 = std::chrono::steady_clock::now();
      fwht_inplace(std::span<double>(work.data(), rows[k].dimension));
      const auto t1 = std::chrono::steady_clock::now();
      wall[k].push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
  }
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (!rows[k].ok) continue;
    std::sort(wall[k].begin(), wall[k].end());
    rows[k].millis = wall[k][wall[k].size() / 2];
    rows[k].mcoeffs_per_sec = static_cast<double>(rows[k].dimension) / (rows[k].millis * 1e3);
  }
  return rows;
}

}  // namespace ptf
