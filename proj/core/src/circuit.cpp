#include "ptf/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "ptf/enumerate.hpp"
#include "ptf/parallel.hpp"
#include "ptf/registry.hpp"
#include "ptf/rng.hpp"

namespace ptf {

namespace {

constexpr int kMaxBits = 128;

void check_bits(int bits) {
  if (bits < 1 || bits > kMaxBits) {
    throw std::invalid_argument("circuit width must be between 1 and 128 bits");
  }
}

// Maximally sparse perfect mask for a named registry operation.
const TernaryMask& selected_mask(const std::string& op_name) {
  static std::mutex mutex;
  static std::unordered_map<std::string, TernaryMask> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(op_name);
  if (it == cache.end()) {
    const OperationSpec* op = find_operation(op_name);
    if (op == nullptr) throw std::invalid_argument("unknown operation " + op_name);
    auto result = enumerate_operation(*op);
    if (!result.selected) throw std::logic_error("no perfect mask for " + op_name);
    it = cache.emplace(op_name, *result.selected).first;
  }
  return it->second;
}

// Comparator carry gate: f(x, y, g) = majority(x, not y, g), i.e. keep g when
// the bits are equal, else x-and-not-y. Enumerated once as a 3-input mask.
const TernaryMask& comparator_step_mask() {
  static const TernaryMask mask = [] {
    OperationSpec op;
    op.name = "gt_step";
    op.n = 3;
    op.variables = {"x", "y", "g"};
    op.evaluator = [](std::span<const Sign> v) {
      const int votes = truth(v[0]) + !truth(v[1]) + truth(v[2]);
      return sign_from_bool(votes >= 2);
    };
    auto result = enumerate_operation(op);
    if (!result.selected) throw std::logic_error("comparator step gate is not representable");
    return *result.selected;
  }();
  return mask;
}

std::string sig(const char* prefix, int i) { return prefix + std::to_string(i); }

}  // namespace

Circuit::Circuit(std::vector<std::string> primary_inputs, std::vector<GateNode> gates,
                 std::vector<std::string> outputs)
    : primary_inputs_(std::move(primary_inputs)),
      gates_(std::move(gates)),
      outputs_(std::move(outputs)) {
  compile();
}

void Circuit::compile() {
  std::unordered_map<std::string, int> slots;
  for (const auto& name : primary_inputs_) {
    if (!slots.emplace(name, static_cast<int>(slots.size())).second) {
      throw std::invalid_argument("duplicate primary input " + name);
    }
  }
  compiled_.clear();
  compiled_.reserve(gates_.size());
  for (const auto& gate : gates_) {
    if (gate.mask.n() < 2 || gate.mask.n() > 3) {
      throw std::invalid_argument("gates must have 2 or 3 inputs");
    }
    if (gate.inputs.size() != static_cast<std::size_t>(gate.mask.n())) {
      throw std::invalid_argument("gate arity does not match its mask");
    }
    CompiledGate cg;
    cg.arity = gate.mask.n();
    for (int i = 0; i < cg.arity; ++i) {
      const auto it = slots.find(gate.inputs[static_cast<std::size_t>(i)]);
      if (it == slots.end()) {
        // Topological order: every input must already be defined.
        throw std::invalid_argument("gate input " + gate.inputs[static_cast<std::size_t>(i)] +
                                    " is not defined before use");
      }
      cg.in[i] = it->second;
    }
    const auto [it, inserted] = slots.emplace(gate.output, static_cast<int>(slots.size()));
    if (!inserted) throw std::invalid_argument("signal " + gate.output + " defined twice");
    cg.out = it->second;
    // Gate function as a LUT over input patterns (bit i of pattern = input i
    // is TRUE), matching the truth table index encoding.
    for (std::size_t pattern = 0; pattern < (std::size_t{1} << cg.arity); ++pattern) {
      if (sign_of(mask_dot_at(gate.mask, pattern)) == kTrue) {
        cg.lut |= static_cast<std::uint16_t>(1u << pattern);
      }
    }
    compiled_.push_back(cg);
  }
  output_slots_.clear();
  for (const auto& name : outputs_) {
    const auto it = slots.find(name);
    if (it == slots.end()) throw std::invalid_argument("unknown output signal " + name);
    output_slots_.push_back(it->second);
  }
  slot_count_ = slots.size();
}

int Circuit::depth() const {
  std::vector<int> level(slot_count_, 0);
  int deepest = 0;
  std::size_t slot = primary_inputs_.size();
  for (const auto& cg : compiled_) {
    int in_level = 0;
    for (int i = 0; i < cg.arity; ++i) in_level = std::max(in_level, level[cg.in[i]]);
    level[slot++] = in_level + 1;
    deepest = std::max(deepest, in_level + 1);
  }
  return deepest;
}

std::vector<Sign> Circuit::evaluate_ordered(std::span<const Sign> inputs) const {
  if (inputs.size() != primary_inputs_.size()) {
    throw std::invalid_argument("evaluate: expected " + std::to_string(primary_inputs_.size()) +
                                " inputs");
  }
  std::vector<Sign> values(slot_count_);
  std::copy(inputs.begin(), inputs.end(), values.begin());
  for (const auto& cg : compiled_) {
    std::size_t pattern = 0;
    for (int i = 0; i < cg.arity; ++i) {
      if (values[cg.in[i]] == kTrue) pattern |= std::size_t{1} << i;
    }
    values[cg.out] = (cg.lut >> pattern) & 1 ? kTrue : kFalse;
  }
  std::vector<Sign> out;
  out.reserve(output_slots_.size());
  for (int slot : output_slots_) out.push_back(values[slot]);
  return out;
}

std::unordered_map<std::string, Sign> Circuit::evaluate(
    const std::unordered_map<std::string, Sign>& assignment) const {
  std::vector<Sign> inputs;
  inputs.reserve(primary_inputs_.size());
  for (const auto& name : primary_inputs_) {
    const auto it = assignment.find(name);
    if (it == assignment.end()) throw std::invalid_argument("missing input signal " + name);
    if (!is_sign(it->second)) throw std::invalid_argument("input values must be +-1");
    inputs.push_back(it->second);
  }
  const auto values = evaluate_ordered(inputs);
  std::unordered_map<std::string, Sign> out;
  for (std::size_t i = 0; i < outputs_.size(); ++i) out[outputs_[i]] = values[i];
  return out;
}

Circuit Circuit::with_gate_mask(std::size_t gate_index, TernaryMask mask) const {
  auto gates = gates_;
  gates.at(gate_index).mask = std::move(mask);
  return Circuit(primary_inputs_, std::move(gates), outputs_);
}

Circuit build_full_adder() {
  const auto& parity = selected_mask("parity_3");
  const auto& majority = selected_mask("majority_3");
  std::vector<GateNode> gates;
  gates.push_back(GateNode{parity, {"a", "b", "cin"}, "sum"});
  gates.push_back(GateNode{majority, {"a", "b", "cin"}, "cout"});
  return Circuit({"a", "b", "cin"}, std::move(gates), {"sum", "cout"});
}

Circuit build_ripple_adder(int bits) {
  check_bits(bits);
  const auto& parity = selected_mask("parity_3");
  const auto& majority = selected_mask("majority_3");

  std::vector<std::string> inputs;
  for (int i = 0; i < bits; ++i) inputs.push_back(sig("a", i));
  for (int i = 0; i < bits; ++i) inputs.push_back(sig("b", i));
  inputs.push_back("cin");

  std::vector<GateNode> gates;
  std::string carry = "cin";
  for (int i = 0; i < bits; ++i) {
    const std::string cout = i + 1 == bits ? "cout" : sig("c", i + 1);
    gates.push_back(GateNode{parity, {sig("a", i), sig("b", i), carry}, sig("s", i)});
    gates.push_back(GateNode{majority, {sig("a", i), sig("b", i), carry}, cout});
    carry = cout;
  }

  std::vector<std::string> outputs;
  for (int i = 0; i < bits; ++i) outputs.push_back(sig("s", i));
  outputs.push_back("cout");
  return Circuit(std::move(inputs), std::move(gates), std::move(outputs));
}

Circuit build_equality(int bits) {
  check_bits(bits);
  const auto& xnor = selected_mask("xnor");
  const auto& land = selected_mask("and");

  std::vector<std::string> inputs;
  for (int i = 0; i < bits; ++i) inputs.push_back(sig("a", i));
  for (int i = 0; i < bits; ++i) inputs.push_back(sig("b", i));

  std::vector<GateNode> gates;
  std::vector<std::string> layer;
  for (int i = 0; i < bits; ++i) {
    const std::string name = bits == 1 ? "eq" : sig("e", i);
    gates.push_back(GateNode{xnor, {sig("a", i), sig("b", i)}, name});
    layer.push_back(name);
  }
  // Balanced AND reduction.
  int next_id = 0;
  while (layer.size() > 1) {
    std::vector<std::string> reduced;
    for (std::size_t i = 0; i + 1 < layer.size(); i += 2) {
      const bool last = layer.size() == 2;
      const std::string name = last ? "eq" : sig("t", next_id++);
      gates.push_back(GateNode{land, {layer[i], layer[i + 1]}, name});
      reduced.push_back(name);
    }
    if (layer.size() % 2 == 1) reduced.push_back(layer.back());
    layer = std::move(reduced);
  }
  return Circuit(std::move(inputs), std::move(gates), {"eq"});
}

Circuit build_comparator(int bits) {
  check_bits(bits);
  const auto& seed_gate = selected_mask("not_implies");  // x and not y
  const auto& step = comparator_step_mask();

  std::vector<std::string> inputs;
  for (int i = 0; i < bits; ++i) inputs.push_back(sig("a", i));
  for (int i = 0; i < bits; ++i) inputs.push_back(sig("b", i));

  std::vector<GateNode> gates;
  std::string state = bits == 1 ? "gt" : "g0";
  gates.push_back(GateNode{seed_gate, {"a0", "b0"}, state});
  for (int i = 1; i < bits; ++i) {
    const std::string next = i + 1 == bits ? "gt" : sig("g", i);
    gates.push_back(GateNode{step, {sig("a", i), sig("b", i), state}, next});
    state = next;
  }
  return Circuit(std::move(inputs), std::move(gates), {"gt"});
}

std::pair<double, double> wilson_interval(std::size_t errors, std::size_t samples, double z) {
  const double m = static_cast<double>(samples);
  const double p = static_cast<double>(errors) / m;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / m;
  const double center = (p + z2 / (2.0 * m)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / m + z2 / (4.0 * m * m)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

VerificationReport verify_random(const Circuit& circuit, const ReferenceEvaluator& oracle,
                                 std::size_t samples, std::uint64_t seed, int workers) {
  if (samples < 1) throw std::invalid_argument("verify_random: need at least one sample");
  const std::size_t n_inputs = circuit.primary_inputs().size();
  const std::size_t words = (n_inputs + 63) / 64;

  const int w = resolve_workers(workers);
  std::vector<std::size_t> errors_per_chunk(static_cast<std::size_t>(w) + 1, 0);
  parallel_chunks(0, samples, w, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    std::vector<Sign> inputs(n_inputs);
    std::size_t bad = 0;
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t k = 0; k < words; ++k) {
        const std::uint64_t bits = rng::at(seed, k, i);
        const std::size_t base = k * 64;
        const std::size_t limit = std::min(n_inputs - base, std::size_t{64});
        for (std::size_t b = 0; b < limit; ++b) {
          inputs[base + b] = (bits >> b) & 1 ? kTrue : kFalse;
        }
      }
      const auto got = circuit.evaluate_ordered(inputs);
      const auto want = oracle(inputs);
      if (got != want) ++bad;
    }
    errors_per_chunk[chunk] += bad;
  });

  VerificationReport report;
  report.samples = samples;
  report.seed = seed;
  for (std::size_t e : errors_per_chunk) report.errors += e;
  if (report.errors == 0) {
    report.rule_of_three_bound = 3.0 / static_cast<double>(samples);
  }
  report.wilson_interval = wilson_interval(report.errors, samples);
  return report;
}

namespace {

// Little-endian integer view of a signal group; TRUE (-1) is bit value 1.
std::uint64_t group_value(std::span<const Sign> signals, std::size_t offset, int bits) {
  std::uint64_t v = 0;
  for (int i = 0; i < bits; ++i) {
    if (signals[offset + static_cast<std::size_t>(i)] == kTrue) v |= std::uint64_t{1} << i;
  }
  return v;
}

}  // namespace

ReferenceEvaluator adder_oracle(int bits) {
  check_bits(bits);
  // Native machine addition up to 64 bits; schoolbook digits beyond that.
  if (bits <= 64) {
    return [bits](std::span<const Sign> in) {
      const auto ubits = static_cast<std::size_t>(bits);
      const std::uint64_t x = group_value(in, 0, bits);
      const std::uint64_t y = group_value(in, ubits, bits);
      const unsigned __int128 sum = static_cast<unsigned __int128>(x) + y +
                                    (in[2 * ubits] == kTrue ? 1 : 0);
      std::vector<Sign> out(ubits + 1);
      for (int i = 0; i < bits; ++i) {
        out[static_cast<std::size_t>(i)] = sign_from_bool((sum >> i) & 1);
      }
      out[ubits] = sign_from_bool((sum >> bits) & 1);
      return out;
    };
  }
  return [bits](std::span<const Sign> in) {
    const auto ubits = static_cast<std::size_t>(bits);
    std::vector<Sign> out(ubits + 1);
    int carry = in[2 * ubits] == kTrue ? 1 : 0;
    for (int i = 0; i < bits; ++i) {
      const int a = in[static_cast<std::size_t>(i)] == kTrue;
      const int b = in[ubits + static_cast<std::size_t>(i)] == kTrue;
      const int total = a + b + carry;
      out[static_cast<std::size_t>(i)] = sign_from_bool(total & 1);
      carry = total >> 1;
    }
    out[ubits] = sign_from_bool(carry != 0);
    return out;
  };
}

ReferenceEvaluator equality_oracle(int bits) {
  check_bits(bits);
  return [bits](std::span<const Sign> in) {
    const auto ubits = static_cast<std::size_t>(bits);
    bool equal = true;
    for (std::size_t i = 0; i < ubits; ++i) equal &= in[i] == in[ubits + i];
    return std::vector<Sign>{sign_from_bool(equal)};
  };
}

ReferenceEvaluator comparator_oracle(int bits) {
  check_bits(bits);
  return [bits](std::span<const Sign> in) {
    const auto ubits = static_cast<std::size_t>(bits);
    // Compare from the most significant bit down.
    for (int i = bits - 1; i >= 0; --i) {
      const bool x = in[static_cast<std::size_t>(i)] == kTrue;
      const bool y = in[ubits + static_cast<std::size_t>(i)] == kTrue;
      if (x != y) return std::vector<Sign>{sign_from_bool(x)};
    }
    return std::vector<Sign>{kFalse};
  };
}

}  // namespace ptf
