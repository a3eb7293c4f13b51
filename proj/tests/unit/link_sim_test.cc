#include "dmq/link_sim.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "dmq/metrics.h"

namespace dmq {
namespace {

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

TEST(DeriveSeed, DeterministicAndDistinct) {
  EXPECT_EQ(derive_seed(1, {2, 3}), derive_seed(1, {2, 3}));
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 20; ++a) {
    for (std::uint64_t b = 0; b < 20; ++b) seen.insert(derive_seed(7, {a, b}));
  }
  EXPECT_EQ(seen.size(), 400u);
  EXPECT_NE(derive_seed(7, {1, 2}), derive_seed(7, {2, 1}));
  EXPECT_NE(derive_seed(7, {0}), derive_seed(7, {0, 0}));
  EXPECT_NE(derive_seed(7, {}), derive_seed(8, {}));
}

TEST(Qpsk, GrayMapUnitEnergy) {
  constexpr double a = std::numbers::sqrt2 / 2.0;
  EXPECT_EQ(qpsk_modulate(0, 0), cdouble(a, a));
  EXPECT_EQ(qpsk_modulate(1, 0), cdouble(-a, a));
  EXPECT_EQ(qpsk_modulate(0, 1), cdouble(a, -a));
  EXPECT_EQ(qpsk_modulate(1, 1), cdouble(-a, -a));
  for (unsigned s = 0; s < 4; ++s) EXPECT_NEAR(std::norm(qpsk_modulate(s >> 1, s & 1)), 1.0, 1e-15);
}

TEST(Qpsk, RoundTripUnderRotation) {
  const cdouble gain = std::polar(2.5, 1.1);
  for (unsigned s = 0; s < 4; ++s) {
    const auto bits = qpsk_demodulate(gain * qpsk_modulate(s >> 1, s & 1), gain);
    EXPECT_EQ(bits[0], s >> 1);
    EXPECT_EQ(bits[1], s & 1);
  }
}

TEST(Qpsk, BoundaryAndZeroGain) {
  EXPECT_EQ(qpsk_demodulate({0.0, 0.0}, {1.0, 0.0}), (std::array<unsigned, 2>{0, 0}));
  EXPECT_EQ(qpsk_demodulate({0.0, -1.0}, {1.0, 0.0}), (std::array<unsigned, 2>{0, 1}));
  EXPECT_EQ(qpsk_demodulate({-1.0, 0.0}, {1.0, 0.0}), (std::array<unsigned, 2>{1, 0}));
  EXPECT_THROW(qpsk_demodulate({1.0, 1.0}, {0.0, 0.0}), std::invalid_argument);
}

// Bob receiver with no AN: pure AWGN at Es/N0 = snr_db.
struct AwgnLink {
  Scenario sc;
  ChannelSet ch;
  BeamformerPair bf;
  explicit AwgnLink(double snr_db) {
    sc = Scenario::defaults();
    sc.self_interference = 0.0;
    Rng rng(1);
    ch = build_channels(sc, rng);
    bf.v_a_ideal = analog_beamformer(aligned_phases(sc.alice_array(), sc.angle_ab));
    bf.v_a_quantized = bf.v_a_ideal;
    bf.v_b = CVec(ch.h_be.size(), cdouble{0.0, 0.0});
    const double es = ch.g_ab * sc.power_alice * sc.n_alice;
    sc.noise_power = es / db_to_linear(snr_db);
  }
};

TEST(SimulateProbeBer, AwgnCalibration) {
  for (double snr_db : {4.0, 7.0}) {
    AwgnLink link(snr_db);
    Rng rng(2);
    const BerCount c =
        simulate_probe_ber(0.0, link.sc, link.ch, link.bf, ReceiverModel::kBob, 200000, rng);
    EXPECT_EQ(c.bits, 400000u);
    const double p = q_function(std::sqrt(db_to_linear(snr_db)));
    const double se = std::sqrt(p * (1 - p) / c.bits);
    EXPECT_NEAR(c.ber(), p, 4 * se) << "snr " << snr_db;
  }
}

TEST(SimulateProbeBer, NoNoiseNoErrors) {
  AwgnLink link(10.0);
  link.sc.noise_power = 0.0;
  Rng rng(3);
  const auto c =
      simulate_probe_ber(0.0, link.sc, link.ch, link.bf, ReceiverModel::kBob, 5000, rng);
  EXPECT_EQ(c.bit_errors, 0u);
}

TEST(SimulateProbeBer, ZeroSignalGivesCoinFlips) {
  AwgnLink link(10.0);
  link.bf.v_a_quantized = CVec(link.bf.v_a_ideal.size(), cdouble{0.0, 0.0});
  Rng rng(4);
  const auto c =
      simulate_probe_ber(0.0, link.sc, link.ch, link.bf, ReceiverModel::kBob, 50000, rng);
  EXPECT_NEAR(c.ber(), 0.5, 0.01);
}

TEST(SimulateProbeBer, ProbeSeesBeamPattern) {
  Scenario sc = with_snr(Scenario{}, 10.0);
  Rng rng(5);
  const ChannelSet ch = build_channels(sc, rng);
  const BeamformerPair bf = design_beamformers(sc, ch, nullptr, QeModel::kUniform, rng);
  const auto on = simulate_probe_ber(sc.angle_ab, sc, ch, bf, ReceiverModel::kProbe, 20000, rng);
  const auto off =
      simulate_probe_ber(deg_to_rad(100.0), sc, ch, bf, ReceiverModel::kProbe, 20000, rng);
  EXPECT_LT(on.ber(), off.ber());
  EXPECT_GT(off.ber(), 0.4);
}

TEST(EstimateBer, DeterministicPerSeed) {
  const Scenario sc = with_snr(Scenario{}, 10.0);
  TrialConfig trial;
  trial.trials = 4;
  trial.symbols_per_point = 4000;
  const PhaseCodebook cb(2);
  const auto a = estimate_ber(1.0, sc, &cb, ReceiverModel::kProbe, trial, 77);
  const auto b = estimate_ber(1.0, sc, &cb, ReceiverModel::kProbe, trial, 77);
  const auto c = estimate_ber(1.0, sc, &cb, ReceiverModel::kProbe, trial, 78);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_NE(a.value, c.value);
  EXPECT_EQ(a.trials, 4u);
  EXPECT_GT(a.std_error, 0.0);
  trial.trials = 1;
  EXPECT_EQ(estimate_ber(1.0, sc, &cb, ReceiverModel::kProbe, trial, 77).std_error, 0.0);
  trial.trials = 0;
  EXPECT_THROW(estimate_ber(1.0, sc, &cb, ReceiverModel::kProbe, trial, 77),
               std::invalid_argument);
}

TEST(MonteCarloSinrLoss, SingleAntennaIsLossless) {
  Rng rng(1);
  const auto e = monte_carlo_sinr_loss(1, PhaseCodebook(1), 1000, rng);
  EXPECT_NEAR(e.value, 0.0, 1e-12);
  EXPECT_NEAR(e.std_error, 0.0, 1e-12);
}

TEST(MonteCarloSinrLoss, MatchesExactExpectation) {
  for (int n : {2, 4, 16}) {
    for (int b : {1, 2, 3}) {
      Rng rng(derive_seed(3, {std::uint64_t(n), std::uint64_t(b)}));
      const PhaseCodebook cb(b);
      const auto e = monte_carlo_sinr_loss(n, cb, 100000, rng);
      EXPECT_NEAR(e.value, sinr_loss_exact_expectation(cb, n), 4 * e.std_error + 1e-6)
          << "N=" << n << " L=" << b;
      EXPECT_GT(e.std_error, 0.0);
    }
  }
}

TEST(MonteCarloSinrLoss, DeterministicFixedDirection) {
  const PhaseCodebook cb(2);
  const double theta = deg_to_rad(47.0);
  SinrLossOptions opt;
  opt.model = QeModel::kDeterministic;
  opt.direction = theta;
  Rng rng(1);
  const auto e = monte_carlo_sinr_loss(8, cb, 10, rng, opt);
  const auto q = quantize_beamformer(aligned_phases({8, 0.5}, theta), cb);
  cdouble s{0.0, 0.0};
  for (double err : q.errors) s += std::polar(1.0, err);
  EXPECT_NEAR(e.value, -linear_to_db(std::norm(s) / 64.0), 1e-9);
  EXPECT_NEAR(e.std_error, 0.0, 1e-12);
}

TEST(MonteCarloSinrLoss, DeterministicRandomDirectionNearClosedForm) {
  SinrLossOptions opt;
  opt.model = QeModel::kDeterministic;
  Rng rng(9);
  const PhaseCodebook cb(3);
  const auto e = monte_carlo_sinr_loss(256, cb, 4000, rng, opt);
  EXPECT_NEAR(e.value, sinr_loss_closed_form(cb), 0.05);
}

TEST(MonteCarloSinrLoss, RejectsBadInput) {
  Rng rng(1);
  EXPECT_THROW(monte_carlo_sinr_loss(0, PhaseCodebook(1), 10, rng), std::invalid_argument);
  EXPECT_THROW(monte_carlo_sinr_loss(4, PhaseCodebook(1), 0, rng), std::invalid_argument);
}

}  // namespace
}  // namespace dmq
