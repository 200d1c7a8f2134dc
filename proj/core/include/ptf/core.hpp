#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ptf {

/// Logical values use the sign encoding throughout: -1 is TRUE, +1 is FALSE.
/// The sign of a zero threshold sum is defined as +1 (FALSE); several
/// canonical masks rely on that tie rule.
using Sign = std::int8_t;

inline constexpr Sign kTrue = -1;
inline constexpr Sign kFalse = +1;

constexpr bool is_sign(int v) noexcept { return v == -1 || v == +1; }
constexpr Sign sign_of(std::int64_t dot) noexcept { return dot < 0 ? kTrue : kFalse; }
constexpr Sign negated(Sign v) noexcept { return static_cast<Sign>(-v); }
constexpr bool truth(Sign v) noexcept { return v == kTrue; }
constexpr Sign sign_from_bool(bool b) noexcept { return b ? kTrue : kFalse; }

/// Subset of variable positions selecting one Fourier character chi_S.
/// Bit i of `subset` corresponds to the variable at bit position i of the
/// truth table input index.
struct CharacterIndex {
  std::uint32_t subset = 0;
  int n = 0;

  int degree() const noexcept { return std::popcount(subset); }
};

/// Default variable names "a", "b", ... for bit positions 0..n-1.
std::vector<std::string> default_variables(int n);

/// Human-readable character label ("1" for the empty set, otherwise the
/// participating variable names in alphabetical order, e.g. "ab", "cd").
std::string character_label(std::uint32_t subset, std::span<const std::string> variables);

/// Complete output vector of an n-variable Boolean function over all 2^n
/// inputs. Input index encoding: bit i of the index carries the variable at
/// position i, bit value 0 -> +1 (FALSE), bit value 1 -> -1 (TRUE).
class TruthTable {
 public:
  static constexpr int kMaxMaterializedN = 24;

  TruthTable(int n, std::vector<Sign> outputs);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return outputs_.size(); }
  Sign output(std::size_t index) const { return outputs_.at(index); }
  const std::vector<Sign>& outputs() const noexcept { return outputs_; }

  /// Decodes a table index into the input assignment it stands for.
  std::vector<Sign> input_at(std::size_t index) const;

  bool operator==(const TruthTable&) const = default;

 private:
  int n_;
  std::vector<Sign> outputs_;
};

/// Decodes bit i of `index` into the sign value of variable i.
constexpr Sign input_bit(std::size_t index, int i) noexcept {
  return (index >> i) & 1 ? kTrue : kFalse;
}

/// Ternary coefficient vector over the 2^n Fourier characters, together with
/// the declared variable order (variables[i] is the name at bit position i).
class TernaryMask {
 public:
  TernaryMask(int n, std::vector<Sign> coeffs);
  TernaryMask(int n, std::vector<Sign> coeffs, std::vector<std::string> variables);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  Sign coeff(std::size_t character) const { return coeffs_.at(character); }
  const std::vector<Sign>& coeffs() const noexcept { return coeffs_; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }

  int support() const noexcept;
  double sparsity() const noexcept;

  /// Coefficient-wise negation; flips the computed function wherever the
  /// threshold sum is nonzero.
  TernaryMask negated_mask() const;

  bool operator==(const TernaryMask& other) const {
    return n_ == other.n_ && coeffs_ == other.coeffs_;
  }

 private:
  int n_;
  std::vector<Sign> coeffs_;
  std::vector<std::string> variables_;
};

/// Re-express a mask under a different declared variable order. The new order
/// must be a permutation of the mask's variable names.
TernaryMask reindexed(const TernaryMask& mask, const std::vector<std::string>& new_variables);

/// Expands an input assignment into the full character basis: entry S equals
/// prod_{i in S} x_i, entry 0 equals +1. Rejects entries other than +-1.
std::vector<Sign> expand_basis(std::span<const Sign> x);

/// Integer dot product of mask coefficients with the character expansion of x.
std::int64_t mask_dot(const TernaryMask& mask, std::span<const Sign> x);

/// Dot product evaluated directly from a truth table index (no allocation).
std::int64_t mask_dot_at(const TernaryMask& mask, std::size_t input_index);

/// sign(<mask, chi(x)>) with sign(0) = +1.
Sign eval_mask(const TernaryMask& mask, std::span<const Sign> x);

/// Fraction of the 2^n inputs where eval_mask agrees with the table.
double accuracy(const TernaryMask& mask, const TruthTable& table);

/// Number of inputs misclassified by the mask.
std::size_t mismatch_count(const TernaryMask& mask, const TruthTable& table);

struct SupportStats {
  double mean_support = 0.0;
  double mean_sparsity = 0.0;
};

/// Arithmetic means of support counts and sparsity fractions. Requires a
/// nonempty sequence of masks with uniform n.
SupportStats support_stats(std::span<const TernaryMask> masks);

}  // namespace ptf
