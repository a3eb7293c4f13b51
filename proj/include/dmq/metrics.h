// SINR at Bob with and without quantization error, the SINR loss gamma, and
// achievable / secrecy rates (bits/s/Hz, log base 2). SINRs are linear.
//
// With QE, Bob's expected array gain |h_ab^H v_a(alpha-hat)|^2 is taken as
// N_a sinc^2(pi/2^L): squaring the large-array approximation
// (1/sqrt(N_a)) sum exp(j dAlpha) ~ sqrt(N_a) sinc(pi/2^L). The loss ratio
// gamma = 1/sinc^2(pi/2^L) follows from that reading.

#pragma once

#include "dmq/beamforming.h"
#include "dmq/channel_model.h"
#include "dmq/phase_quantizer.h"

namespace dmq {

enum class QeMode { kNqe, kQe };

// How Bob's gain is evaluated in QE mode. Eve's gain always comes from the
// realized quantized beamformer.
enum class QeFlavor { kClosedForm, kSampled };

struct MetricsReport {
  double sinr_nqe = 0.0;
  double sinr_qe = 0.0;
  double gamma_db = 0.0;
  double rate_bob = 0.0;  // NQE
  double rate_eve = 0.0;  // NQE
  double sr_nqe = 0.0;
  double sr_qe = 0.0;
  double interference_m = 0.0;  // rho P_b |h_bb^H v_b|^2 + sigma^2
  double interference_t = 0.0;  // g_be P_b |h_be^H v_b|^2 + sigma^2
};

/// M: self-interference plus noise at Bob.
double interference_at_bob(const ChannelSet& channels, const Scenario& scenario,
                           std::span<const cdouble> v_b);
/// T: AN plus noise at Eve.
double interference_at_eve(const ChannelSet& channels, const Scenario& scenario,
                           std::span<const cdouble> v_b);

/// log2(1 + S / (I + sigma2)).
double rate(double signal_power, double interference_power, double sigma2);

/// R_b - R_e before clamping, from received signal powers and the total
/// interference-plus-noise M (Bob) and T (Eve).
double secrecy_gap(double bob_signal, double eve_signal, double m, double t);

double sinr_bob_nqe(const ChannelSet& channels, const Scenario& scenario,
                    const BeamformerPair& beamformers);

double sinr_bob_qe_closed_form(const ChannelSet& channels, const Scenario& scenario,
                               const BeamformerPair& beamformers,
                               const PhaseCodebook& codebook);

/// gamma in dB, 10 log10(1 / sinc^2(pi / 2^L)).
double sinr_loss_closed_form(const PhaseCodebook& codebook);

/// Finite-array loss 10 log10(N_a / E[|sum exp(j dAlpha)|^2 / N_a]) with
/// E[|sum|^2] / N_a = 1 + (N_a - 1) sinc^2(pi / 2^L). Never exceeds gamma and
/// tends to it as N_a grows. Throws std::invalid_argument for n_alice < 1.
double sinr_loss_exact_expectation(const PhaseCodebook& codebook, int n_alice);

/// max{0, R_b - R_e}. In NQE mode v_a_ideal is used for both receivers and the
/// codebook is ignored.
double secrecy_rate(const ChannelSet& channels, const Scenario& scenario,
                    const BeamformerPair& beamformers, QeMode mode,
                    const PhaseCodebook& codebook,
                    QeFlavor flavor = QeFlavor::kClosedForm);

MetricsReport evaluate_metrics(const ChannelSet& channels, const Scenario& scenario,
                               const BeamformerPair& beamformers,
                               const PhaseCodebook& codebook,
                               QeFlavor flavor = QeFlavor::kClosedForm);

}  // namespace dmq
