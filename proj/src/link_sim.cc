#include "dmq/link_sim.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dmq/simd/kernels.h"

namespace dmq {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::size_t kBatch = 4096;

Estimate summarize(const std::vector<double>& samples) {
  Estimate e;
  e.trials = samples.size();
  if (samples.empty()) return e;
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(samples.size());
  e.value = mean;
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double s : samples) ss += (s - mean) * (s - mean);
    const double var = ss / static_cast<double>(samples.size() - 1);
    e.std_error = std::sqrt(var / static_cast<double>(samples.size()));
  }
  return e;
}

}  // namespace

void TrialConfig::validate() const {
  if (symbols_per_point == 0) {
    throw std::invalid_argument("TrialConfig: symbols_per_point must be >= 1");
  }
  if (trials == 0) throw std::invalid_argument("TrialConfig: trials must be >= 1");
}

std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(base);
  for (std::uint64_t idx : path) h = splitmix64(h ^ splitmix64(idx + kGolden));
  return h;
}

cdouble qpsk_modulate(unsigned b0, unsigned b1) {
  constexpr double a = std::numbers::sqrt2 / 2.0;
  return {b0 ? -a : a, b1 ? -a : a};
}

std::array<unsigned, 2> qpsk_demodulate(cdouble sample, cdouble gain) {
  if (gain == cdouble{0.0, 0.0}) {
    throw std::invalid_argument("qpsk_demodulate: zero composite gain");
  }
  const double zr = sample.real() * gain.real() + sample.imag() * gain.imag();
  const double zi = sample.imag() * gain.real() - sample.real() * gain.imag();
  return {zr < 0.0 ? 1u : 0u, zi < 0.0 ? 1u : 0u};
}

BerCount simulate_probe_ber(double theta, const Scenario& scenario,
                            const ChannelSet& channels,
                            const BeamformerPair& beamformers,
                            ReceiverModel receiver, std::uint64_t symbols, Rng& rng) {
  cdouble signal_gain;
  cdouble an_gain;
  if (receiver == ReceiverModel::kBob) {
    signal_gain = std::sqrt(channels.g_ab * scenario.power_alice) *
                  effective_array_gain(channels.h_ab, beamformers.v_a_quantized);
    an_gain = std::sqrt(scenario.self_interference * scenario.power_bob) *
              effective_array_gain(channels.h_bb, beamformers.v_b);
  } else {
    const CVec h = steering_vector(scenario.alice_array(), theta);
    signal_gain = std::sqrt(channels.g_ae * scenario.power_alice) *
                  effective_array_gain(h, beamformers.v_a_quantized);
    an_gain = std::sqrt(channels.g_be * scenario.power_bob) *
              effective_array_gain(channels.h_be, beamformers.v_b);
  }
  const cdouble detect_gain =
      signal_gain == cdouble{0.0, 0.0} ? cdouble{1.0, 0.0} : signal_gain;
  const double noise_sd = std::sqrt(scenario.noise_power / 2.0);
  constexpr double kHalf = std::numbers::sqrt2 / 2.0;

  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<cdouble> rx(kBatch);
  std::vector<std::uint8_t> sent(kBatch);
  BerCount count;
  std::uint64_t remaining = symbols;
  while (remaining > 0) {
    const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(remaining, kBatch));
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i % 32 == 0) word = rng();
      const auto s = static_cast<std::uint8_t>(word & 3u);
      word >>= 2;
      sent[i] = s;
      const double zr = normal(rng), zi = normal(rng);
      const double nr = normal(rng), ni = normal(rng);
      const cdouble z{zr * kHalf, zi * kHalf};
      const cdouble noise{nr * noise_sd, ni * noise_sd};
      rx[i] = signal_gain * qpsk_modulate(s >> 1, s & 1u) + an_gain * z + noise;
    }
    count.bit_errors += simd::count_qpsk_bit_errors(
        std::span<const cdouble>(rx.data(), n), detect_gain,
        std::span<const std::uint8_t>(sent.data(), n));
    count.bits += 2 * n;
    remaining -= n;
  }
  return count;
}

Estimate estimate_ber(double theta, const Scenario& scenario,
                      const PhaseCodebook* codebook, ReceiverModel receiver,
                      const TrialConfig& trial, std::uint64_t point_seed) {
  trial.validate();
  const std::uint64_t per_trial =
      std::max<std::uint64_t>(1, trial.symbols_per_point / trial.trials);
  std::vector<double> bers(trial.trials);
  for (std::uint64_t t = 0; t < trial.trials; ++t) {
    Rng rng(derive_seed(point_seed, {t}));
    const ChannelSet ch = build_channels(scenario, rng);
    const BeamformerPair bf =
        design_beamformers(scenario, ch, codebook, trial.qe_model, rng);
    bers[t] = simulate_probe_ber(theta, scenario, ch, bf, receiver, per_trial, rng).ber();
  }
  return summarize(bers);
}

Estimate monte_carlo_sinr_loss(int n_alice, const PhaseCodebook& codebook,
                               std::uint64_t trials, Rng& rng,
                               const SinrLossOptions& options) {
  if (n_alice < 1) throw std::invalid_argument("monte_carlo_sinr_loss: n_alice must be >= 1");
  if (trials < 1) throw std::invalid_argument("monte_carlo_sinr_loss: trials must be >= 1");
  const auto n = static_cast<std::size_t>(n_alice);
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  const ArrayGeometry geometry{n_alice, options.spacing_ratio};
  std::uniform_real_distribution<double> qe(-codebook.half_step(), codebook.half_step());
  std::uniform_real_distribution<double> direction(0.0, kTwoPi);

  std::vector<double> errors(n);
  std::vector<double> ratios(trials);
  std::vector<double> fixed_errors;
  if (options.model == QeModel::kDeterministic && options.direction) {
    fixed_errors = quantize_beamformer(aligned_phases(geometry, *options.direction),
                                       codebook).errors;
  }
  for (std::uint64_t t = 0; t < trials; ++t) {
    if (options.model == QeModel::kUniform) {
      for (double& e : errors) e = qe(rng);
    } else if (!fixed_errors.empty()) {
      errors = fixed_errors;
    } else {
      errors = quantize_beamformer(aligned_phases(geometry, direction(rng)), codebook).errors;
    }
    ratios[t] = std::norm(simd::phasor_sum(errors)) / n2;
  }
  const Estimate r = summarize(ratios);
  Estimate out;
  out.trials = r.trials;
  out.value = -linear_to_db(r.value);
  out.std_error = (10.0 / std::numbers::ln10) * r.std_error / r.value;
  return out;
}

}  // namespace dmq
