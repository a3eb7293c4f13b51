#include "dmq/metrics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmq {
namespace {

double gain_sq(std::span<const cdouble> h, std::span<const cdouble> v) {
  return std::norm(effective_array_gain(h, v));
}

double bob_gain_qe(const ChannelSet& ch, const BeamformerPair& bf,
                   const PhaseCodebook& codebook, QeFlavor flavor) {
  if (flavor == QeFlavor::kSampled) return gain_sq(ch.h_ab, bf.v_a_quantized);
  const double s = expected_phasor(codebook);
  return static_cast<double>(ch.h_ab.size()) * s * s;
}

}  // namespace

double interference_at_bob(const ChannelSet& channels, const Scenario& scenario,
                           std::span<const cdouble> v_b) {
  return scenario.self_interference * scenario.power_bob *
             gain_sq(channels.h_bb, v_b) +
         scenario.noise_power;
}

double interference_at_eve(const ChannelSet& channels, const Scenario& scenario,
                           std::span<const cdouble> v_b) {
  return channels.g_be * scenario.power_bob * gain_sq(channels.h_be, v_b) +
         scenario.noise_power;
}

double rate(double signal_power, double interference_power, double sigma2) {
  const double denom = interference_power + sigma2;
  if (signal_power <= 0.0) return 0.0;
  return std::log2(1.0 + signal_power / denom);
}

double secrecy_gap(double bob_signal, double eve_signal, double m, double t) {
  return rate(bob_signal, m, 0.0) - rate(eve_signal, t, 0.0);
}

double sinr_bob_nqe(const ChannelSet& channels, const Scenario& scenario,
                    const BeamformerPair& beamformers) {
  const double m = interference_at_bob(channels, scenario, beamformers.v_b);
  return channels.g_ab * scenario.power_alice *
         gain_sq(channels.h_ab, beamformers.v_a_ideal) / m;
}

double sinr_bob_qe_closed_form(const ChannelSet& channels, const Scenario& scenario,
                               const BeamformerPair& beamformers,
                               const PhaseCodebook& codebook) {
  const double m = interference_at_bob(channels, scenario, beamformers.v_b);
  return channels.g_ab * scenario.power_alice *
         bob_gain_qe(channels, beamformers, codebook, QeFlavor::kClosedForm) / m;
}

double sinr_loss_closed_form(const PhaseCodebook& codebook) {
  const double s = expected_phasor(codebook);
  return -linear_to_db(s * s);
}

double sinr_loss_exact_expectation(const PhaseCodebook& codebook, int n_alice) {
  if (n_alice < 1) {
    throw std::invalid_argument("sinr_loss_exact_expectation: n_alice must be >= 1");
  }
  const double s = expected_phasor(codebook);
  const double n = n_alice;
  return linear_to_db(n / (1.0 + (n - 1.0) * s * s));
}

double secrecy_rate(const ChannelSet& channels, const Scenario& scenario,
                    const BeamformerPair& beamformers, QeMode mode,
                    const PhaseCodebook& codebook, QeFlavor flavor) {
  const double m = interference_at_bob(channels, scenario, beamformers.v_b);
  const double t = interference_at_eve(channels, scenario, beamformers.v_b);
  const double pa = scenario.power_alice;
  double bob_gain = 0.0;
  double eve_gain = 0.0;
  if (mode == QeMode::kNqe) {
    bob_gain = gain_sq(channels.h_ab, beamformers.v_a_ideal);
    eve_gain = gain_sq(channels.h_ae, beamformers.v_a_ideal);
  } else {
    bob_gain = bob_gain_qe(channels, beamformers, codebook, flavor);
    eve_gain = gain_sq(channels.h_ae, beamformers.v_a_quantized);
  }
  const double gap = secrecy_gap(channels.g_ab * pa * bob_gain,
                                 channels.g_ae * pa * eve_gain, m, t);
  return std::max(0.0, gap);
}

MetricsReport evaluate_metrics(const ChannelSet& channels, const Scenario& scenario,
                               const BeamformerPair& beamformers,
                               const PhaseCodebook& codebook, QeFlavor flavor) {
  MetricsReport r;
  r.interference_m = interference_at_bob(channels, scenario, beamformers.v_b);
  r.interference_t = interference_at_eve(channels, scenario, beamformers.v_b);
  r.sinr_nqe = sinr_bob_nqe(channels, scenario, beamformers);
  r.sinr_qe = channels.g_ab * scenario.power_alice *
              bob_gain_qe(channels, beamformers, codebook, flavor) /
              r.interference_m;
  r.gamma_db = linear_to_db(r.sinr_nqe / r.sinr_qe);
  const double pa = scenario.power_alice;
  r.rate_bob = rate(channels.g_ab * pa * gain_sq(channels.h_ab, beamformers.v_a_ideal),
                    r.interference_m, 0.0);
  r.rate_eve = rate(channels.g_ae * pa * gain_sq(channels.h_ae, beamformers.v_a_ideal),
                    r.interference_t, 0.0);
  r.sr_nqe = secrecy_rate(channels, scenario, beamformers, QeMode::kNqe, codebook);
  r.sr_qe = secrecy_rate(channels, scenario, beamformers, QeMode::kQe, codebook,
                         flavor);
  return r;
}

}  // namespace dmq
