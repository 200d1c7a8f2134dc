#include "ptf/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace ptf {

namespace {

void check_n(int n, int max_n) {
  if (n < 1 || n > max_n) {
    throw std::invalid_argument("variable count out of range: n = " + std::to_string(n));
  }
}

}  // namespace

std::vector<std::string> default_variables(int n) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (n <= 26) {
      names.push_back(std::string(1, static_cast<char>('a' + i)));
    } else {
      names.push_back("x" + std::to_string(i));
    }
  }
  return names;
}

std::string character_label(std::uint32_t subset, std::span<const std::string> variables) {
  if (subset == 0) return "1";
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (subset >> i & 1) parts.push_back(variables[i]);
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += p;
  return out;
}

TruthTable::TruthTable(int n, std::vector<Sign> outputs) : n_(n), outputs_(std::move(outputs)) {
  check_n(n, kMaxMaterializedN);
  if (outputs_.size() != (std::size_t{1} << n_)) {
    throw std::invalid_argument("truth table length must be 2^n");
  }
  for (Sign v : outputs_) {
    if (!is_sign(v)) throw std::invalid_argument("truth table outputs must be +-1");
  }
}

std::vector<Sign> TruthTable::input_at(std::size_t index) const {
  std::vector<Sign> x(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) x[static_cast<std::size_t>(i)] = input_bit(index, i);
  return x;
}

TernaryMask::TernaryMask(int n, std::vector<Sign> coeffs)
    : TernaryMask(n, std::move(coeffs), default_variables(n)) {}

TernaryMask::TernaryMask(int n, std::vector<Sign> coeffs, std::vector<std::string> variables)
    : n_(n), coeffs_(std::move(coeffs)), variables_(std::move(variables)) {
  check_n(n, TruthTable::kMaxMaterializedN);
  if (coeffs_.size() != (std::size_t{1} << n_)) {
    throw std::invalid_argument("mask length must be 2^n");
  }
  for (Sign c : coeffs_) {
    if (c < -1 || c > 1) throw std::invalid_argument("mask coefficients must be in {-1,0,+1}");
  }
  if (variables_.size() != static_cast<std::size_t>(n_)) {
    throw std::invalid_argument("mask must declare one variable name per position");
  }
}

int TernaryMask::support() const noexcept {
  int count = 0;
  for (Sign c : coeffs_) count += (c != 0);
  return count;
}

double TernaryMask::sparsity() const noexcept {
  return 1.0 - static_cast<double>(support()) / static_cast<double>(coeffs_.size());
}

TernaryMask TernaryMask::negated_mask() const {
  std::vector<Sign> flipped(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) flipped[i] = static_cast<Sign>(-coeffs_[i]);
  return TernaryMask(n_, std::move(flipped), variables_);
}

TernaryMask reindexed(const TernaryMask& mask, const std::vector<std::string>& new_variables) {
  if (new_variables.size() != mask.variables().size()) {
    throw std::invalid_argument("reindexed: variable count mismatch");
  }
  // old_pos[j] = bit position of new variable j in the old ordering
  std::vector<int> old_pos(new_variables.size());
  for (std::size_t j = 0; j < new_variables.size(); ++j) {
    auto it = std::find(mask.variables().begin(), mask.variables().end(), new_variables[j]);
    if (it == mask.variables().end()) {
      throw std::invalid_argument("reindexed: unknown variable " + new_variables[j]);
    }
    old_pos[j] = static_cast<int>(it - mask.variables().begin());
  }
  std::vector<Sign> coeffs(mask.size());
  for (std::size_t s = 0; s < mask.size(); ++s) {
    std::uint32_t old_subset = 0;
    for (std::size_t j = 0; j < new_variables.size(); ++j) {
      if (s >> j & 1) old_subset |= 1u << old_pos[j];
    }
    coeffs[s] = mask.coeff(old_subset);
  }
  return TernaryMask(mask.n(), std::move(coeffs), new_variables);
}

std::vector<Sign> expand_basis(std::span<const Sign> x) {
  for (Sign v : x) {
    if (!is_sign(v)) throw std::invalid_argument("expand_basis: inputs must be +-1");
  }
  const std::size_t dim = std::size_t{1} << x.size();
  std::vector<Sign> phi(dim, kFalse);
  phi[0] = +1;
  // chi_{S | {i}} = x_i * chi_S, filling indices in increasing subset order.
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t s = 0; s < bit; ++s) {
      phi[bit | s] = static_cast<Sign>(phi[s] * x[i]);
    }
  }
  return phi;
}

std::int64_t mask_dot(const TernaryMask& mask, std::span<const Sign> x) {
  if (x.size() != static_cast<std::size_t>(mask.n())) {
    throw std::invalid_argument("eval_mask: mask/input dimension mismatch");
  }
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!is_sign(x[i])) throw std::invalid_argument("eval_mask: inputs must be +-1");
    if (x[i] == kTrue) bits |= 1u << i;
  }
  std::int64_t dot = 0;
  const auto coeffs = mask.coeffs();
  for (std::size_t s = 0; s < coeffs.size(); ++s) {
    if (coeffs[s] == 0) continue;
    const int chi = std::popcount(bits & static_cast<std::uint32_t>(s)) & 1 ? -1 : +1;
    dot += coeffs[s] * chi;
  }
  return dot;
}

std::int64_t mask_dot_at(const TernaryMask& mask, std::size_t input_index) {
  std::int64_t dot = 0;
  const auto coeffs = mask.coeffs();
  const auto bits = static_cast<std::uint32_t>(input_index);
  for (std::size_t s = 0; s < coeffs.size(); ++s) {
    if (coeffs[s] == 0) continue;
    const int chi = std::popcount(bits & static_cast<std::uint32_t>(s)) & 1 ? -1 : +1;
    dot += coeffs[s] * chi;
  }
  return dot;
}

Sign eval_mask(const TernaryMask& mask, std::span<const Sign> x) {
  return sign_of(mask_dot(mask, x));
}

std::size_t mismatch_count(const TernaryMask& mask, const TruthTable& table) {
  if (mask.n() != table.n()) {
    throw std::invalid_argument("accuracy: mask/table dimension mismatch");
  }
  std::size_t bad = 0;
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    bad += sign_of(mask_dot_at(mask, idx)) != table.output(idx);
  }
  return bad;
}

double accuracy(const TernaryMask& mask, const TruthTable& table) {
  const auto bad = mismatch_count(mask, table);
  return 1.0 - static_cast<double>(bad) / static_cast<double>(table.size());
}

SupportStats support_stats(std::span<const TernaryMask> masks) {
  if (masks.empty()) throw std::invalid_argument("support_stats: empty mask sequence");
  const int n = masks.front().n();
  double support_sum = 0.0;
  double sparsity_sum = 0.0;
  for (const auto& m : masks) {
    if (m.n() != n) throw std::invalid_argument("support_stats: masks must share n");
    support_sum += m.support();
    sparsity_sum += m.sparsity();
  }
  const auto count = static_cast<double>(masks.size());
  return SupportStats{support_sum / count, sparsity_sum / count};
}

}  // namespace ptf
