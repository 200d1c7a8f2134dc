#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ptf/circuit.hpp"
#include "ptf/core.hpp"

namespace ptf::io {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Mask interchange document:
///   {"n": 2, "variables": ["a","b"], "coeffs": [0,0,0,1], "op_name": "xor"}
/// coeffs are indexed by character bitmask; variables[i] names bit i.
std::string to_json(const TernaryMask& mask, std::string_view op_name = {});
TernaryMask mask_from_json(std::string_view text);
std::string mask_op_name_from_json(std::string_view text);

/// Truth table document: {"n": 2, "outputs": [1,1,1,-1]}.
std::string to_json(const TruthTable& table);
TruthTable table_from_json(std::string_view text);

/// Netlist document: named inputs, gate records (mask, input signals, output
/// signal), named outputs.
std::string to_json(const Circuit& circuit);
Circuit circuit_from_json(std::string_view text);

std::string to_json(const VerificationReport& report);
VerificationReport report_from_json(std::string_view text);

/// Reproducibility manifest emitted next to every CLI artifact.
struct RunManifest {
  std::string command;
  std::string version = kArtifactVersion;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> output_paths;
};

std::string to_json(const RunManifest& manifest);
RunManifest manifest_from_json(std::string_view text);

}  // namespace ptf::io
