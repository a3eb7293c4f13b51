// Experiment configuration: a YAML document with sections
//
//   scenario:  physical parameters (powers in dBm, angles in degrees)
//   sweep:     figure, qe_flavor
//   grids:     bits, n_alice, snr_db, angle_step
//   trial:     symbols_per_point, trials, master_seed, qe_model
//   output:    CSV path
//
// Every key is optional; missing keys take the reference defaults, grid and
// trial defaults depend on the sweep. Unknown keys are rejected.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dmq/channel_model.h"
#include "dmq/link_sim.h"
#include "dmq/metrics.h"

namespace dmq::experiments {

enum class SweepKind { kBerSweep, kSinrVsL, kSinrVsNa, kSrVsL, kSrVsLNa };

std::string_view sweep_name(SweepKind kind);      // "sinr_vs_l"
std::string_view sweep_command(SweepKind kind);   // "sinr-vs-l"
std::optional<SweepKind> parse_sweep_name(std::string_view name);

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message, int line = -1);
  // Dotted path of the offending key, e.g. "scenario.self_interference".
  const std::string& key() const { return key_; }
  // 1-based line in the source text, or -1 when unknown.
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

struct Grids {
  std::vector<int> bits;
  std::vector<int> n_alice;
  std::vector<double> snr_db;
  double angle_step_deg = 1.0;
};

struct ExperimentConfig {
  SweepKind kind = SweepKind::kSinrVsL;
  // Angles in radians and powers in watts; noise_power is set per SNR point.
  Scenario scenario;
  Grids grids;
  TrialConfig trial;
  QeFlavor qe_flavor = QeFlavor::kClosedForm;
  std::string output;

  // Resolved configuration as YAML (degrees, dBm), for output headers.
  std::string to_yaml() const;
};

/// Parses, defaults and range-checks a configuration. `kind` (from the CLI
/// subcommand) selects the sweep; if the document also names sweep.figure the
/// two must agree. Throws ConfigError.
ExperimentConfig validate_config(std::string_view text,
                                 std::optional<SweepKind> kind = std::nullopt);

}  // namespace dmq::experiments
