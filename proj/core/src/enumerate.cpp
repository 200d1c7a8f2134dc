#include "ptf/enumerate.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <stdexcept>

#include "ptf/parallel.hpp"

namespace ptf {

namespace {

constexpr std::array<Sign, 3> kDigitValue{0, +1, -1};

// Rank for the tie-break value order 0 < +1 < -1.
constexpr int value_rank(Sign v) { return v == 0 ? 0 : (v == +1 ? 1 : 2); }

std::uint64_t pow3(int e) {
  std::uint64_t p = 1;
  while (e-- > 0) p *= 3;
  return p;
}

std::vector<Sign> decode_candidate(std::uint64_t counter, std::size_t dim) {
  std::vector<Sign> coeffs(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    coeffs[i] = kDigitValue[counter % 3];
    counter /= 3;
  }
  return coeffs;
}

// Sign matrix chi[x][s] over all inputs and characters, stored row-major.
std::vector<std::int8_t> character_table(int n) {
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::int8_t> chi(dim * dim);
  for (std::size_t x = 0; x < dim; ++x) {
    for (std::size_t s = 0; s < dim; ++s) {
      chi[x * dim + s] = std::popcount(x & s) & 1 ? -1 : +1;
    }
  }
  return chi;
}

std::vector<TernaryMask> enumerate_impl(const TruthTable& table, int workers) {
  const int n = table.n();
  const std::size_t dim = std::size_t{1} << n;
  const std::uint64_t total = pow3(static_cast<int>(dim));
  const auto chi = character_table(n);

  const int w = resolve_workers(workers);
  std::vector<std::vector<std::uint64_t>> hits(static_cast<std::size_t>(w) + 1);
  parallel_chunks(0, total, w, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    auto& local = hits[chunk];
    std::vector<Sign> coeffs = decode_candidate(begin, dim);
    for (std::uint64_t c = begin; c < end; ++c) {
      bool perfect = true;
      for (std::size_t x = 0; x < dim && perfect; ++x) {
        std::int32_t dot = 0;
        const std::int8_t* row = chi.data() + x * dim;
        for (std::size_t s = 0; s < dim; ++s) dot += coeffs[s] * row[s];
        perfect = sign_of(dot) == table.output(x);
      }
      if (perfect) local.push_back(c);
      // Increment the base-3 counter in digit form.
      for (std::size_t i = 0; i < dim; ++i) {
        const int digit = value_rank(coeffs[i]);
        if (digit < 2) {
          coeffs[i] = kDigitValue[static_cast<std::size_t>(digit) + 1];
          break;
        }
        coeffs[i] = 0;
      }
    }
  });

  std::vector<TernaryMask> result;
  for (const auto& chunk : hits) {
    for (std::uint64_t c : chunk) result.emplace_back(n, decode_candidate(c, dim));
  }
  return result;
}

}  // namespace

std::vector<TernaryMask> enumerate_perfect_masks(const TruthTable& table, int workers) {
  if (table.n() > 3) {
    throw std::invalid_argument(
        "enumerate_perfect_masks: exhaustive search is limited to n <= 3; "
        "use spectral synthesis for n = 4");
  }
  return enumerate_impl(table, workers);
}

std::vector<TernaryMask> enumerate_perfect_masks_unbounded(const TruthTable& table, int workers) {
  if (table.n() > 4) {
    throw std::invalid_argument("enumerate_perfect_masks_unbounded: n must be <= 4");
  }
  return enumerate_impl(table, workers);
}

TernaryMask select_mask(std::span<const TernaryMask> candidates) {
  if (candidates.empty()) throw std::invalid_argument("select_mask: empty candidate set");
  const TernaryMask* best = &candidates[0];
  for (const auto& cand : candidates.subspan(1)) {
    if (cand.support() < best->support()) {
      best = &cand;
      continue;
    }
    if (cand.support() > best->support()) continue;
    const auto a = cand.coeffs();
    const auto b = best->coeffs();
    for (std::size_t i = 0; i < a.size(); ++i) {
      const int ra = value_rank(a[i]);
      const int rb = value_rank(b[i]);
      if (ra != rb) {
        if (ra < rb) best = &cand;
        break;
      }
    }
  }
  return *best;
}

std::int64_t min_margin(const TernaryMask& mask, const TruthTable& table) {
  if (mask.n() != table.n()) {
    throw std::invalid_argument("margin_certificate: mask/table dimension mismatch");
  }
  std::int64_t margin = std::numeric_limits<std::int64_t>::max();
  for (std::size_t x = 0; x < table.size(); ++x) {
    margin = std::min(margin, table.output(x) * mask_dot_at(mask, x));
  }
  return margin;
}

bool margin_certificate(const TernaryMask& mask, const TruthTable& table) {
  return min_margin(mask, table) >= 1;
}

EnumerationResult enumerate_operation(const OperationSpec& op, int workers) {
  const auto table = truth_table_of(op);
  EnumerationResult result;
  result.op_name = op.name;
  result.perfect_masks = enumerate_perfect_masks(table, workers);
  // Attach the operation's declared variable order to every mask.
  for (auto& m : result.perfect_masks) {
    m = TernaryMask(m.n(), std::vector<Sign>(m.coeffs().begin(), m.coeffs().end()), op.variables);
  }
  if (!result.perfect_masks.empty()) {
    result.selected = select_mask(result.perfect_masks);
    result.certificate_holds = margin_certificate(*result.selected, table);
  }
  return result;
}

std::vector<RepresentabilityRow> representability_report(std::span<const OperationSpec> ops,
                                                         int workers) {
  std::vector<RepresentabilityRow> rows;
  for (const auto& op : ops) {
    const auto res = enumerate_operation(op, workers);
    RepresentabilityRow row;
    row.op = op.name;
    row.representable = !res.perfect_masks.empty();
    row.perfect_count = res.perfect_masks.size();
    if (res.selected) {
      row.selected = res.selected;
      row.support = res.selected->support();
      row.sparsity = res.selected->sparsity();
      row.certificate = res.certificate_holds;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ptf
