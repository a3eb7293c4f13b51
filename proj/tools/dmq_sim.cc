// dmq_sim: run one sweep and write <out>.csv plus its closed-form sidecar.
//
//   dmq_sim sinr-vs-l --config cfg.yaml --seed 7 --out out/fig3.csv --workers 4
//
// Exit codes: 0 success, 1 usage / internal error, 2 config error, 3 I/O error.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "dmq/experiments/config.h"
#include "dmq/experiments/sweeps.h"
#include "dmq/simd/kernels.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  unsigned workers = 1;
  std::string kernels = "auto";
};

int run(dmq::experiments::SweepKind kind, const Options& opt) {
  using namespace dmq::experiments;

  std::string text;
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read config '" << opt.config_path << "'\n";
      return kExitIo;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  ExperimentConfig cfg;
  try {
    cfg = validate_config(text, kind);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (opt.seed) cfg.trial.master_seed = *opt.seed;
  if (!opt.out.empty()) cfg.output = opt.out;
  if (cfg.output.empty()) {
    std::cerr << "config error: output: no output path (use --out or output:)\n";
    return kExitConfig;
  }

  if (opt.kernels != "auto") {
    const auto level =
        opt.kernels == "avx2" ? dmq::simd::Level::kAvx2 : dmq::simd::Level::kScalar;
    if (!dmq::simd::set_level(level)) {
      std::cerr << "error: kernel level '" << opt.kernels << "' is not supported here\n";
      return kExitUsage;
    }
  }

  const SweepOutput result = run_sweep(cfg, opt.workers);
  try {
    write_outputs(result, cfg.output);
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  }
  std::cerr << fmt::format("wrote {} ({} rows) and {}\n", cfg.output, result.result.rows.size(),
                           sidecar_path(cfg.output));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  using dmq::experiments::SweepKind;

  CLI::App app{"Directional-modulation link simulator with quantized phase shifters"};
  app.set_version_flag("--version", std::string(DMQ_VERSION));
  app.require_subcommand(1);

  Options opt;
  const std::pair<SweepKind, const char*> commands[] = {
      {SweepKind::kBerSweep, "BER versus direction angle (probe and Bob receivers)"},
      {SweepKind::kSinrVsL, "SINR loss at Bob versus phase-shifter bits L"},
      {SweepKind::kSinrVsNa, "SINR loss at Bob versus number of Alice antennas"},
      {SweepKind::kSrVsL, "secrecy rate versus L at several SNRs"},
      {SweepKind::kSrVsLNa, "secrecy rate versus L for several array sizes"},
  };
  std::vector<std::pair<CLI::App*, SweepKind>> subs;
  for (const auto& [kind, help] : commands) {
    CLI::App* sub = app.add_subcommand(std::string(dmq::experiments::sweep_command(kind)), help);
    sub->add_option("--config", opt.config_path, "YAML config (empty or missing keys: defaults)");
    sub->add_option("--seed", opt.seed, "master seed, overrides trial.master_seed");
    sub->add_option("--out", opt.out, "CSV path, overrides output");
    sub->add_option("--workers", opt.workers, "worker threads")
        ->check(CLI::Range(1u, 1024u));
    sub->add_option("--kernels", opt.kernels, "kernel level")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
    subs.emplace_back(sub, kind);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    for (const auto& [sub, kind] : subs) {
      if (sub->parsed()) return run(kind, opt);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
