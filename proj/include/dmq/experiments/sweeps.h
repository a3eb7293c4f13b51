// Sweep drivers and CSV emission.
//
// Main CSV columns:
//   ber_sweep:              angle_deg, receiver_model, L_or_NQE, ber, stderr
//   sinr_vs_l, sinr_vs_na:  L, N_a, loss_db_simulated, loss_db_closed_form, stderr
//   sr_vs_l, sr_vs_l_na:    L, N_a, snr_db, sr_nqe, sr_qe, stderr
// Closed-form sidecar (<stem>.closed_form.csv):
//   ber_sweep:   angle_deg, receiver_model, L_or_NQE, ber_analytic, stderr
//   sinr sweeps: L, loss_db_closed_form, stderr
//   sr sweeps:   L, N_a, snr_db, sr_nqe, sr_qe_closed_form, stderr
// Both files start with '#' comment lines: tool version, sweep, master seed,
// SNR definition, kernel level, estimator notes and the resolved config.

#pragma once

#include <stdexcept>
#include <string>

#include "dmq/experiments/config.h"
#include "dmq/link_sim.h"

namespace dmq::experiments {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepOutput {
  SweepResult result;
  std::string csv;
  std::string closed_form_csv;
};

/// Runs the configured sweep on `workers` threads (>= 1). The output does not
/// depend on `workers`.
SweepOutput run_sweep(const ExperimentConfig& config, unsigned workers = 1);

/// "out/fig3.csv" -> "out/fig3.closed_form.csv".
std::string sidecar_path(const std::string& csv_path);

/// Writes the CSV and its sidecar. Throws IoError.
void write_outputs(const SweepOutput& output, const std::string& csv_path);

}  // namespace dmq::experiments
