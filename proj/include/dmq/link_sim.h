// QPSK Monte Carlo engine: probe / Bob BER and simulated SINR loss.
//
// Seeding is counter based. A sweep point's seed is derive_seed(master,
// {axis indices...}); trial t of that point draws from derive_seed(point, {t}).
// Nothing depends on evaluation order, so results are identical for any worker
// count.

#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dmq/beamforming.h"
#include "dmq/channel_model.h"
#include "dmq/phase_quantizer.h"
#include "dmq/types.h"

namespace dmq {

struct TrialConfig {
  std::uint64_t symbols_per_point = 100000;
  std::uint64_t trials = 100000;
  std::uint64_t master_seed = 20190101;
  QeModel qe_model = QeModel::kUniform;

  // Throws std::invalid_argument if symbols_per_point or trials is 0.
  void validate() const;
};

struct Estimate {
  double value = 0.0;
  // Sample standard deviation over trials / sqrt(trials); 0 for one trial.
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

struct SweepRow {
  std::vector<std::pair<std::string, double>> axes;
  std::string metric;
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// splitmix64-style hash of a base seed and a path of counters.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path);

/// Gray map (b0, b1) -> ((1 - 2 b0) + j (1 - 2 b1)) / sqrt(2); (0,0) -> (1+j)/sqrt(2).
cdouble qpsk_modulate(unsigned b0, unsigned b1);

/// Minimum-distance decision on sample / gain, i.e. the signs of
/// sample * conj(gain). A component exactly on a decision boundary decides 0,
/// so sample = 0 returns (0, 0). Throws std::invalid_argument for gain == 0.
std::array<unsigned, 2> qpsk_demodulate(cdouble sample, cdouble gain);

enum class ReceiverModel {
  kProbe,  // Alice via h(theta)^H, AN via Bob's nominal channel to Eve
  kBob,    // Alice via h_ab^H, AN via the self-interference channel
};

struct BerCount {
  std::uint64_t bit_errors = 0;
  std::uint64_t bits = 0;
  double ber() const { return bits ? static_cast<double>(bit_errors) / bits : 0.0; }
};

/// Sends `symbols` QPSK symbols from Alice's quantized beamformer and counts
/// bit errors at one receiver:
///   probe: sqrt(g_ae P_a) h(theta)^H v_a x + sqrt(g_be P_b) h_be^H v_b z + n
///   bob:   sqrt(g_ab P_a) h_ab^H v_a x + sqrt(rho P_b) h_bb^H v_b z + n
/// with z ~ CN(0, 1), n ~ CN(0, sigma^2), and coherent detection against the
/// known signal gain. `theta` is ignored for the Bob model. If the signal gain
/// is exactly zero the detector decides on the raw sample.
BerCount simulate_probe_ber(double theta, const Scenario& scenario,
                            const ChannelSet& channels,
                            const BeamformerPair& beamformers,
                            ReceiverModel receiver, std::uint64_t symbols, Rng& rng);

/// BER at one receiver averaged over trials. Each trial redraws h_bb and the
/// QE (uniform model), redesigns v_b, and sends symbols_per_point / trials
/// symbols (at least one). `codebook` null means no QE.
Estimate estimate_ber(double theta, const Scenario& scenario,
                      const PhaseCodebook* codebook, ReceiverModel receiver,
                      const TrialConfig& trial, std::uint64_t point_seed);

struct SinrLossOptions {
  QeModel model = QeModel::kUniform;
  // Deterministic model only: the desired direction. When empty, each trial
  // draws theta_d uniformly from [0, 2 pi).
  std::optional<double> direction;
  double spacing_ratio = 0.5;
};

/// Simulated SINR loss in dB, -10 log10(mean_t |sum_n exp(j dAlpha_n)|^2 / N^2),
/// with standard error by the delta method.
Estimate monte_carlo_sinr_loss(int n_alice, const PhaseCodebook& codebook,
                               std::uint64_t trials, Rng& rng,
                               const SinrLossOptions& options = {});

}  // namespace dmq
