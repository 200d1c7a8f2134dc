// ptfsynth: command-line driver for ternary polynomial-threshold synthesis,
// routing, circuit composition and verification.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "ptf/circuit.hpp"
#include "ptf/core.hpp"
#include "ptf/enumerate.hpp"
#include "ptf/io.hpp"
#include "ptf/packed.hpp"
#include "ptf/reference.hpp"
#include "ptf/registry.hpp"
#include "ptf/synth.hpp"
#include "ptf/transform.hpp"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  bool json = false;
  std::string out_path;
  int workers = 0;  // 0 = all cores
};

fs::path resolve_out(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("PTFSYNTH_OUT_DIR")) {
      p = fs::path(dir) / p;
    }
  }
  return p;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream stream(path);
  if (!stream) throw std::runtime_error("cannot write " + path.string());
  stream << text << '\n';
}

// Emits the artifact (when --out was given) plus its manifest, and prints the
// machine-readable document under --json.
void emit(const CommonOptions& common, ptf::io::RunManifest manifest, Json document) {
  if (!common.out_path.empty()) {
    const fs::path path = resolve_out(common.out_path);
    write_file(path, document.dump(2));
    manifest.output_paths.push_back(path.string());
    write_file(path.string() + ".manifest.json", ptf::io::to_json(manifest));
  }
  if (common.json) {
    document["manifest"] = Json::parse(ptf::io::to_json(manifest));
    std::printf("%s\n", document.dump(2).c_str());
  }
}

std::vector<ptf::OperationSpec> resolve_ops(int n, bool all, const std::vector<std::string>& names) {
  if (all) return ptf::builtin_operations(n);
  if (names.empty()) {
    throw UsageError("select operations with --all or --op NAME");
  }
  std::vector<ptf::OperationSpec> ops;
  for (const auto& name : names) {
    const ptf::OperationSpec* op = ptf::find_operation(name);
    if (op == nullptr) {
      std::string known;
      for (const auto& item : ptf::registry_names()) known += "\n  " + item;
      throw UsageError("unknown operation '" + name + "'; registry:" + known);
    }
    if (op->n != n) {
      throw UsageError("operation '" + name + "' has " + std::to_string(op->n) +
                       " variables; pass --n " + std::to_string(op->n));
    }
    ops.push_back(*op);
  }
  return ops;
}

Json mask_json(const ptf::TernaryMask& mask, const std::string& op_name) {
  return Json::parse(ptf::io::to_json(mask, op_name));
}

std::vector<std::uint64_t> resolve_seeds(int seed_count, std::optional<std::uint64_t> seed) {
  if (seed != std::nullopt) return {*seed};
  if (seed_count < 1) throw UsageError("--seeds must be >= 1");
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(seed_count));
  for (int i = 0; i < seed_count; ++i) seeds[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(i);
  return seeds;
}

// ---------------------------------------------------------------------------

int cmd_enumerate(const CommonOptions& common, int n, bool all,
                  const std::vector<std::string>& names) {
  if (n < 2 || n > 3) {
    throw UsageError("enumerate supports --n 2 or --n 3; use `ptfsynth synthesize` for n = 4");
  }
  const auto ops = resolve_ops(n, all, names);
  const auto rows = ptf::representability_report(ops, common.workers);

  bool all_representable = true;
  Json jrows = Json::array();
  if (!common.json) {
    std::printf("%-16s %-6s %-8s %-9s %-6s %s\n", "op", "ok", "support", "sparsity", "cert",
                "selected mask");
  }
  for (const auto& row : rows) {
    all_representable &= row.representable;
    Json jrow;
    jrow["op"] = row.op;
    jrow["representable"] = row.representable;
    jrow["perfect_count"] = row.perfect_count;
    if (row.selected) {
      jrow["support"] = row.support;
      jrow["sparsity"] = row.sparsity;
      jrow["certificate"] = row.certificate;
      jrow["mask"] = mask_json(*row.selected, row.op);
    }
    jrows.push_back(std::move(jrow));
    if (!common.json) {
      std::string coeffs;
      if (row.selected) {
        for (ptf::Sign c : row.selected->coeffs()) {
          coeffs += c == 0 ? " 0" : (c > 0 ? "+1" : "-1");
          coeffs += ' ';
        }
      }
      std::printf("%-16s %-6s %-8d %-9.3f %-6s [%s]\n", row.op.c_str(),
                  row.representable ? "yes" : "NO", row.support, row.sparsity,
                  row.certificate ? "yes" : "no", coeffs.c_str());
    }
  }

  ptf::io::RunManifest manifest;
  manifest.command = "enumerate";
  manifest.parameters = {{"n", std::to_string(n)},
                         {"all", all ? "true" : "false"},
                         {"workers", std::to_string(common.workers)}};
  Json document;
  document["command"] = "enumerate";
  document["rows"] = std::move(jrows);
  emit(common, std::move(manifest), std::move(document));
  return all_representable ? kExitOk : kExitCheckFailed;
}

int cmd_synthesize(const CommonOptions& common, int n, bool all,
                   const std::vector<std::string>& names, int seed_count,
                   std::optional<std::uint64_t> seed, double tau, int max_sweeps,
                   int swap_interval, const std::vector<double>& temperatures) {
  const auto ops = resolve_ops(n, all, names);
  const auto seeds = resolve_seeds(seed_count, seed);
  const ptf::QuantizationConfig q{tau};
  ptf::McmcConfig m;
  m.max_sweeps = max_sweeps;
  m.swap_interval = swap_interval;
  if (!temperatures.empty()) m.temperatures = temperatures;

  bool all_perfect = true;
  Json jrows = Json::array();
  if (!common.json) {
    std::printf("%-16s %-6s %-9s %-9s %-8s %-8s\n", "op", "seed", "initial", "final", "steps",
                "support");
  }
  for (const auto& op : ops) {
    for (const auto s : seeds) {
      ptf::McmcConfig run = m;
      run.seed = s;
      const auto [mask, trace] = ptf::synthesize(op, q, run);
      all_perfect &= trace.final_accuracy == 1.0;
      Json jrow;
      jrow["op"] = op.name;
      jrow["seed"] = s;
      jrow["initial_accuracy"] = trace.initial_accuracy;
      jrow["final_accuracy"] = trace.final_accuracy;
      if (trace.steps_to_perfect) {
        jrow["steps_to_perfect"] = *trace.steps_to_perfect;
      } else {
        jrow["steps_to_perfect"] = nullptr;
      }
      jrow["mask"] = mask_json(mask, op.name);
      jrows.push_back(std::move(jrow));
      if (!common.json) {
        const std::string steps =
            trace.steps_to_perfect ? std::to_string(*trace.steps_to_perfect) : "-";
        std::printf("%-16s %-6llu %-9.4f %-9.4f %-8s %-8d\n", op.name.c_str(),
                    static_cast<unsigned long long>(s), trace.initial_accuracy,
                    trace.final_accuracy, steps.c_str(), mask.support());
      }
    }
  }

  ptf::io::RunManifest manifest;
  manifest.command = "synthesize";
  manifest.seeds = seeds;
  manifest.parameters = {{"n", std::to_string(n)},
                         {"all", all ? "true" : "false"},
                         {"tau", std::to_string(tau)},
                         {"max_sweeps", std::to_string(max_sweeps)},
                         {"swap_interval", std::to_string(swap_interval)},
                         {"workers", std::to_string(common.workers)}};
  Json document;
  document["command"] = "synthesize";
  document["rows"] = std::move(jrows);
  emit(common, std::move(manifest), std::move(document));
  return all_perfect ? kExitOk : kExitCheckFailed;
}

int cmd_warmstart(const CommonOptions& common, int seed_count, double tau, int max_sweeps) {
  if (seed_count < 1) throw UsageError("--seeds must be >= 1");
  const auto& ops = ptf::builtin_operations(4);
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(seed_count));
  for (int i = 0; i < seed_count; ++i) seeds[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(i);

  ptf::McmcConfig m;
  m.max_sweeps = max_sweeps;
  const auto result = ptf::warmstart_experiment(ops, seeds, ptf::QuantizationConfig{tau}, m,
                                                common.workers);

  Json jrecords = Json::array();
  for (const auto& rec : result.records) {
    Json j;
    j["strategy"] = ptf::to_string(rec.strategy);
    j["op"] = rec.op;
    j["seed"] = rec.seed;
    j["steps"] = rec.steps;
    j["converged"] = rec.converged;
    jrecords.push_back(std::move(j));
  }
  Json jsummaries = Json::array();
  if (!common.json) {
    std::printf("%-16s %-12s %-12s %-10s %s\n", "strategy", "mean", "std", "median", "converged");
  }
  for (const auto& summary : result.summaries) {
    Json j;
    j["strategy"] = ptf::to_string(summary.strategy);
    j["mean_steps"] = summary.mean_steps;
    j["stddev_steps"] = summary.stddev_steps;
    j["median_steps"] = summary.median_steps;
    j["converged"] = summary.converged;
    j["total"] = summary.total;
    jsummaries.push_back(std::move(j));
    if (!common.json) {
      std::printf("%-16s %-12.1f %-12.1f %-10.1f %d/%d\n", ptf::to_string(summary.strategy).c_str(),
                  summary.mean_steps, summary.stddev_steps, summary.median_steps,
                  summary.converged, summary.total);
    }
  }

  ptf::io::RunManifest manifest;
  manifest.command = "warmstart";
  manifest.seeds = seeds;
  manifest.parameters = {{"seeds", std::to_string(seed_count)},
                         {"tau", std::to_string(tau)},
                         {"max_sweeps", std::to_string(max_sweeps)},
                         {"workers", std::to_string(common.workers)}};
  Json document;
  document["command"] = "warmstart";
  document["records"] = std::move(jrecords);
  document["summaries"] = std::move(jsummaries);
  emit(common, std::move(manifest), std::move(document));
  return kExitOk;
}

int cmd_compose(const CommonOptions& common, const std::string& kind, int bits,
                std::size_t samples, std::uint64_t seed) {
  ptf::Circuit circuit = [&] {
    if (kind == "adder") return ptf::build_ripple_adder(bits);
    if (kind == "equality") return ptf::build_equality(bits);
    if (kind == "comparator") return ptf::build_comparator(bits);
    throw UsageError("unknown circuit kind '" + kind + "' (adder, equality, comparator)");
  }();
  const ptf::ReferenceEvaluator oracle = [&] {
    if (kind == "adder") return ptf::adder_oracle(bits);
    if (kind == "equality") return ptf::equality_oracle(bits);
    return ptf::comparator_oracle(bits);
  }();

  const auto report = ptf::verify_random(circuit, oracle, samples, seed, common.workers);
  if (!common.json) {
    const std::string bound = report.rule_of_three_bound
                                  ? "<= " + std::to_string(*report.rule_of_three_bound)
                                  : std::string("-");
    std::printf("%-12s %-6s %-10s %-8s %-14s %s\n", "circuit", "bits", "samples", "errors",
                "error bound", "wilson 95%");
    std::printf("%-12s %-6d %-10zu %-8zu %-14s [%.3e, %.3e]\n", kind.c_str(), bits, report.samples,
                report.errors, bound.c_str(), report.wilson_interval.first,
                report.wilson_interval.second);
  }

  ptf::io::RunManifest manifest;
  manifest.command = "compose";
  manifest.seeds = {seed};
  manifest.parameters = {{"kind", kind},
                         {"bits", std::to_string(bits)},
                         {"samples", std::to_string(samples)},
                         {"workers", std::to_string(common.workers)}};
  Json document;
  document["command"] = "compose";
  document["circuit"] = kind;
  document["bits"] = bits;
  document["netlist"] = Json::parse(ptf::io::to_json(circuit));
  document["report"] = Json::parse(ptf::io::to_json(report));
  emit(common, std::move(manifest), std::move(document));
  return report.errors == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_bench(const CommonOptions& common, const std::string& kind, int n_min, int n_max, int reps,
              std::size_t batch, const std::string& kernel_name) {
  ptf::io::RunManifest manifest;
  manifest.command = "bench";
  Json document;
  document["command"] = "bench";
  document["kind"] = kind;

  if (kind == "fwht") {
    if (n_min > n_max) throw UsageError("--n-min must be <= --n-max");
    std::vector<int> ns;
    for (int n = n_min; n <= n_max; ++n) ns.push_back(n);
    const auto rows = ptf::fwht_benchmark(ns, reps);
    if (!common.json) {
      std::printf("%-4s %-12s %-12s %-18s %-12s %s\n", "n", "dimension", "time (ms)",
                  "throughput (M/s)", "memory (MB)", "note");
    }
    Json jrows = Json::array();
    for (const auto& row : rows) {
      Json j;
      j["n"] = row.n;
      j["dimension"] = row.dimension;
      j["time_ms"] = row.millis;
      j["throughput_mcoeffs_per_sec"] = row.mcoeffs_per_sec;
      j["memory_mb"] = row.megabytes;
      j["ok"] = row.ok;
      if (!row.note.empty()) j["note"] = row.note;
      jrows.push_back(std::move(j));
      if (!common.json) {
        if (row.ok) {
          std::printf("%-4d %-12zu %-12.3f %-18.1f %-12.2f\n", row.n, row.dimension, row.millis,
                      row.mcoeffs_per_sec, row.megabytes);
        } else {
          std::printf("%-4d %-12s %-12s %-18s %-12s %s\n", row.n, "-", "-", "-", "-",
                      row.note.c_str());
        }
      }
    }
    document["rows"] = std::move(jrows);
    manifest.parameters = {{"kind", kind},
                           {"n_min", std::to_string(n_min)},
                           {"n_max", std::to_string(n_max)},
                           {"reps", std::to_string(reps)}};
  } else if (kind == "inference") {
    std::vector<ptf::TernaryMask> masks;
    for (const auto& entry : ptf::reference::masks_n3()) masks.push_back(entry.mask);
    std::vector<ptf::packed::Kernel> kernels;
    if (kernel_name == "both") {
      kernels = {ptf::packed::Kernel::naive, ptf::packed::Kernel::packed};
    } else if (kernel_name == "naive") {
      kernels = {ptf::packed::Kernel::naive};
    } else if (kernel_name == "packed") {
      kernels = {ptf::packed::Kernel::packed};
    } else {
      throw UsageError("--kernel must be naive, packed or both");
    }
    if (!common.json) {
      std::printf("%-8s %-10s %-6s %-12s %s\n", "kernel", "batch", "ops", "time (ms)", "MOps/s");
    }
    Json jrows = Json::array();
    for (const auto kernel : kernels) {
      const auto row = ptf::packed::throughput_bench(masks, batch, reps, kernel, 1);
      Json j;
      j["kernel"] = ptf::packed::to_string(kernel);
      j["batch"] = row.batch;
      j["ops"] = row.op_count;
      j["time_ms"] = row.millis;
      j["mops"] = row.mops;
      jrows.push_back(std::move(j));
      if (!common.json) {
        std::printf("%-8s %-10zu %-6zu %-12.3f %.2f\n", ptf::packed::to_string(kernel).c_str(),
                    row.batch, row.op_count, row.millis, row.mops);
      }
    }
    document["rows"] = std::move(jrows);
    manifest.parameters = {{"kind", kind},
                           {"batch", std::to_string(batch)},
                           {"reps", std::to_string(reps)},
                           {"kernel", kernel_name}};
  } else {
    throw UsageError("unknown bench kind '" + kind + "' (fwht, inference)");
  }

  emit(common, std::move(manifest), std::move(document));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ternary polynomial-threshold synthesis toolkit"};
  app.require_subcommand(1);

  CommonOptions common;
  app.add_flag("--json", common.json, "machine-readable output on stdout");
  app.add_option("--out", common.out_path,
                 "write the result document (plus .manifest.json) to this path; relative paths "
                 "resolve against $PTFSYNTH_OUT_DIR");
  app.add_option("--workers", common.workers, "worker cap (0 = all cores)");

  auto* enumerate = app.add_subcommand("enumerate", "exhaustive ternary mask search (n <= 3)");
  enumerate->fallthrough();
  int en_n = 2;
  bool en_all = false;
  std::vector<std::string> en_ops;
  enumerate->add_option("--n", en_n, "variable count (2 or 3)");
  enumerate->add_flag("--all", en_all, "every registry operation of this arity");
  enumerate->add_option("--op", en_ops, "operation name (repeatable)");

  auto* synthesize = app.add_subcommand("synthesize", "spectral synthesis with MCMC refinement");
  synthesize->fallthrough();
  int sy_n = 4;
  bool sy_all = false;
  std::vector<std::string> sy_ops;
  int sy_seed_count = 1;
  std::optional<std::uint64_t> sy_seed;
  double sy_tau = 0.3;
  int sy_max_sweeps = 20000;
  int sy_swap_interval = 1;
  std::vector<double> sy_temps;
  synthesize->add_option("--n", sy_n, "variable count (2..4)");
  synthesize->add_flag("--all", sy_all, "every registry operation of this arity");
  synthesize->add_option("--op", sy_ops, "operation name (repeatable)");
  synthesize->add_option("--seeds", sy_seed_count, "number of seeds (0..k-1)");
  synthesize->add_option("--seed", sy_seed, "single explicit seed");
  synthesize->add_option("--tau", sy_tau, "quantization threshold");
  synthesize->add_option("--max-sweeps", sy_max_sweeps, "MCMC sweep budget");
  synthesize->add_option("--swap-interval", sy_swap_interval, "sweeps between swap attempts");
  synthesize->add_option("--temps", sy_temps, "temperature ladder (ascending)");

  auto* warmstart = app.add_subcommand("warmstart", "random vs WHT-threshold MCMC comparison");
  warmstart->fallthrough();
  int ws_seeds = 10;
  double ws_tau = 0.1;
  int ws_max_sweeps = 20000;
  warmstart->add_option("--seeds", ws_seeds, "number of seeds per strategy");
  warmstart->add_option("--tau", ws_tau, "warm-start quantization threshold");
  warmstart->add_option("--max-sweeps", ws_max_sweeps, "MCMC sweep budget");

  auto* compose = app.add_subcommand("compose", "build a circuit and verify it against an oracle");
  compose->fallthrough();
  std::string co_kind;
  int co_bits = 0;
  std::size_t co_samples = 100000;
  std::uint64_t co_seed = 0;
  compose->add_option("kind", co_kind, "adder | equality | comparator")->required();
  compose->add_option("--bits", co_bits, "bit width (1..128)")->required();
  compose->add_option("--samples", co_samples, "verification sample count");
  compose->add_option("--seed", co_seed, "verification seed");

  auto* bench = app.add_subcommand("bench", "performance tables");
  bench->fallthrough();
  std::string be_kind;
  int be_n_min = 16;
  int be_n_max = 22;
  int be_reps = 5;
  std::size_t be_batch = 100000;
  std::string be_kernel = "both";
  bench->add_option("kind", be_kind, "fwht | inference")->required();
  bench->add_option("--n-min", be_n_min, "smallest transform size");
  bench->add_option("--n-max", be_n_max, "largest transform size");
  bench->add_option("--reps", be_reps, "repetitions (median reported)");
  bench->add_option("--batch", be_batch, "inference batch size");
  bench->add_option("--kernel", be_kernel, "naive | packed | both");

  try {
    app.parse(argc, argv);
    if (enumerate->parsed()) return cmd_enumerate(common, en_n, en_all, en_ops);
    if (synthesize->parsed()) {
      return cmd_synthesize(common, sy_n, sy_all, sy_ops, sy_seed_count, sy_seed, sy_tau,
                            sy_max_sweeps, sy_swap_interval, sy_temps);
    }
    if (warmstart->parsed()) return cmd_warmstart(common, ws_seeds, ws_tau, ws_max_sweeps);
    if (compose->parsed()) return cmd_compose(common, co_kind, co_bits, co_samples, co_seed);
    if (bench->parsed()) {
      return cmd_bench(common, be_kind, be_n_min, be_n_max, be_reps, be_batch, be_kernel);
    }
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCheckFailed;
  }
}
