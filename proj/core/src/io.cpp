#include "ptf/io.hpp"

#include <json.hpp>

namespace ptf::io {

namespace {

using Json = nlohmann::ordered_json;

Json mask_to_value(const TernaryMask& mask, std::string_view op_name) {
  Json j;
  j["n"] = mask.n();
  j["variables"] = mask.variables();
  std::vector<int> coeffs(mask.coeffs().begin(), mask.coeffs().end());
  j["coeffs"] = coeffs;
  if (!op_name.empty()) j["op_name"] = std::string(op_name);
  return j;
}

TernaryMask mask_from_value(const Json& j) {
  const int n = j.at("n").get<int>();
  std::vector<int> raw = j.at("coeffs").get<std::vector<int>>();
  std::vector<Sign> coeffs;
  coeffs.reserve(raw.size());
  for (int v : raw) {
    if (v < -1 || v > 1) throw std::invalid_argument("mask coefficients must be in {-1,0,+1}");
    coeffs.push_back(static_cast<Sign>(v));
  }
  if (j.contains("variables")) {
    return TernaryMask(n, std::move(coeffs), j.at("variables").get<std::vector<std::string>>());
  }
  return TernaryMask(n, std::move(coeffs));
}

}  // namespace

std::string to_json(const TernaryMask& mask, std::string_view op_name) {
  return mask_to_value(mask, op_name).dump(2);
}

TernaryMask mask_from_json(std::string_view text) {
  return mask_from_value(Json::parse(text));
}

std::string mask_op_name_from_json(std::string_view text) {
  const auto j = Json::parse(text);
  return j.contains("op_name") ? j.at("op_name").get<std::string>() : std::string{};
}

std::string to_json(const TruthTable& table) {
  Json j;
  j["n"] = table.n();
  std::vector<int> outputs(table.outputs().begin(), table.outputs().end());
  j["outputs"] = outputs;
  return j.dump(2);
}

TruthTable table_from_json(std::string_view text) {
  const auto j = Json::parse(text);
  const int n = j.at("n").get<int>();
  std::vector<int> raw = j.at("outputs").get<std::vector<int>>();
  std::vector<Sign> outputs;
  outputs.reserve(raw.size());
  for (int v : raw) {
    if (!is_sign(v)) throw std::invalid_argument("truth table outputs must be +-1");
    outputs.push_back(static_cast<Sign>(v));
  }
  return TruthTable(n, std::move(outputs));
}

std::string to_json(const Circuit& circuit) {
  Json j;
  j["inputs"] = circuit.primary_inputs();
  Json gates = Json::array();
  for (const auto& gate : circuit.gates()) {
    Json g;
    g["mask"] = mask_to_value(gate.mask, {});
    g["inputs"] = gate.inputs;
    g["output"] = gate.output;
    gates.push_back(std::move(g));
  }
  j["gates"] = std::move(gates);
  j["outputs"] = circuit.outputs();
  return j.dump(2);
}

Circuit circuit_from_json(std::string_view text) {
  const auto j = Json::parse(text);
  std::vector<GateNode> gates;
  for (const auto& g : j.at("gates")) {
    gates.push_back(GateNode{mask_from_value(g.at("mask")),
                             g.at("inputs").get<std::vector<std::string>>(),
                             g.at("output").get<std::string>()});
  }
  return Circuit(j.at("inputs").get<std::vector<std::string>>(), std::move(gates),
                 j.at("outputs").get<std::vector<std::string>>());
}

std::string to_json(const VerificationReport& report) {
  Json j;
  j["samples"] = report.samples;
  j["errors"] = report.errors;
  if (report.rule_of_three_bound) {
    j["rule_of_three_bound"] = *report.rule_of_three_bound;
  } else {
    j["rule_of_three_bound"] = nullptr;
  }
  j["wilson_interval"] = {report.wilson_interval.first, report.wilson_interval.second};
  j["seed"] = report.seed;
  return j.dump(2);
}

VerificationReport report_from_json(std::string_view text) {
  const auto j = Json::parse(text);
  VerificationReport report;
  report.samples = j.at("samples").get<std::size_t>();
  report.errors = j.at("errors").get<std::size_t>();
  if (!j.at("rule_of_three_bound").is_null()) {
    report.rule_of_three_bound = j.at("rule_of_three_bound").get<double>();
  }
  report.wilson_interval = {j.at("wilson_interval")[0].get<double>(),
                            j.at("wilson_interval")[1].get<double>()};
  report.seed = j.at("seed").get<std::uint64_t>();
  return report;
}

std::string to_json(const RunManifest& manifest) {
  Json j;
  j["command"] = manifest.command;
  j["version"] = manifest.version;
  Json params = Json::object();
  for (const auto& [key, value] : manifest.parameters) params[key] = value;
  j["parameters"] = std::move(params);
  j["seeds"] = manifest.seeds;
  j["outputs"] = manifest.output_paths;
  return j.dump(2);
}

RunManifest manifest_from_json(std::string_view text) {
  const auto j = Json::parse(text);
  RunManifest manifest;
  manifest.command = j.at("command").get<std::string>();
  manifest.version = j.at("version").get<std::string>();
  for (const auto& [key, value] : j.at("parameters").items()) {
    manifest.parameters.emplace_back(key, value.get<std::string>());
  }
  manifest.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  manifest.output_paths = j.at("outputs").get<std::vector<std::string>>();
  return manifest;
}

}  // namespace ptf::io
