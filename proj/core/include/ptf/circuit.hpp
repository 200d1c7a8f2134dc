#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ptf/core.hpp"

namespace ptf {

/// One ternary-mask gate wired over named signals. Gates are 2- or 3-input.
struct GateNode {
  TernaryMask mask;
  std::vector<std::string> inputs;
  std::string output;
};

/// Combinational circuit: gates in topological order over named signals.
class Circuit {
 public:
  Circuit(std::vector<std::string> primary_inputs, std::vector<GateNode> gates,
          std::vector<std::string> outputs);

  const std::vector<std::string>& primary_inputs() const noexcept { return primary_inputs_; }
  const std::vector<std::string>& outputs() const noexcept { return outputs_; }
  const std::vector<GateNode>& gates() const noexcept { return gates_; }

  std::size_t gate_count() const noexcept { return gates_.size(); }

  /// Longest input-to-output path measured in gates.
  int depth() const;

  /// Evaluates the circuit on a complete named assignment.
  std::unordered_map<std::string, Sign> evaluate(
      const std::unordered_map<std::string, Sign>& assignment) const;

  /// Evaluates on inputs ordered as primary_inputs(); returns outputs ordered
  /// as outputs(). This is the fast path used by randomized verification.
  std::vector<Sign> evaluate_ordered(std::span<const Sign> inputs) const;

  /// Copy with one gate's mask replaced; used for fault-injection tests.
  Circuit with_gate_mask(std::size_t gate_index, TernaryMask mask) const;

 private:
  void compile();

  std::vector<std::string> primary_inputs_;
  std::vector<GateNode> gates_;
  std::vector<std::string> outputs_;

  // Compiled form: signals flattened to indices, gate functions to LUTs.
  struct CompiledGate {
    std::uint16_t lut = 0;  // bit i = output for input pattern i (1 = TRUE)
    int arity = 0;
    int in[3] = {0, 0, 0};
    int out = 0;
  };
  std::vector<CompiledGate> compiled_;
  std::vector<int> output_slots_;
  std::size_t slot_count_ = 0;
};

/// Full adder over inputs (a, b, cin): sum is a parity_3 gate, carry a
/// majority_3 gate, both maximally sparse masks from exhaustive enumeration.
Circuit build_full_adder();

/// Ripple-carry adder, LSB first: inputs a0..a{b-1}, b0..b{b-1}, cin;
/// outputs s0..s{b-1}, cout. Uses exactly 2*bits gates.
Circuit build_ripple_adder(int bits);

/// Bitwise-equality comparator: per-bit XNOR gates reduced by a balanced
/// AND tree; output signal "eq".
Circuit build_equality(int bits);

/// Unsigned strict greater-than (x > y): one a-and-not-b seed gate plus a
/// majority-style carry gate per remaining bit, LSB to MSB so higher bits
/// override; output signal "gt".
Circuit build_comparator(int bits);

/// Sampling verification report. rule_of_three_bound = 3/m when no errors
/// were seen; wilson is the 95% score interval for the error rate.
struct VerificationReport {
  std::size_t samples = 0;
  std::size_t errors = 0;
  std::optional<double> rule_of_three_bound;
  std::pair<double, double> wilson_interval{0.0, 0.0};
  std::uint64_t seed = 0;
};

/// Wilson score interval for e errors in m samples at confidence z.
std::pair<double, double> wilson_interval(std::size_t errors, std::size_t samples, double z = 1.96);

using ReferenceEvaluator = std::function<std::vector<Sign>(std::span<const Sign>)>;

/// Draws m uniform input assignments from the counter-based generator and
/// compares every circuit output against the reference evaluator. Sample i
/// is keyed by (seed, i), so reports are identical for any worker count.
VerificationReport verify_random(const Circuit& circuit, const ReferenceEvaluator& oracle,
                                 std::size_t samples, std::uint64_t seed, int workers = 1);

/// Reference evaluators in the circuit builders' input/output order.
/// Bit mapping: TRUE (-1) is binary 1, signal index i has weight 2^i.
ReferenceEvaluator adder_oracle(int bits);
ReferenceEvaluator equality_oracle(int bits);
ReferenceEvaluator comparator_oracle(int bits);

}  // namespace ptf
