#include "dmq/beamforming.h"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "dmq/metrics.h"

namespace dmq {
namespace {

double norm2(const CVec& v) {
  double s = 0.0;
  for (auto z : v) s += std::norm(z);
  return s;
}

// SR objective with the ideal v_a, unclamped.
double gap(const ChannelSet& ch, const Scenario& sc, const CVec& v_a, const CVec& v_b) {
  const double pa = sc.power_alice;
  return secrecy_gap(ch.g_ab * pa * std::norm(effective_array_gain(ch.h_ab, v_a)),
                     ch.g_ae * pa * std::norm(effective_array_gain(ch.h_ae, v_a)),
                     interference_at_bob(ch, sc, v_b), interference_at_eve(ch, sc, v_b));
}

TEST(AnalogBeamformer, ConstantModulus) {
  const std::vector<double> phases{0.1, 2.0, -1.0, 4.0, 0.0};
  const CVec v = analog_beamformer(phases);
  for (std::size_t i = 0; i < v.size(); ++i) {
    EXPECT_NEAR(std::abs(v[i]), 1.0 / std::sqrt(5.0), 1e-15);
    EXPECT_NEAR(std::abs(v[i] - std::polar(1.0 / std::sqrt(5.0), phases[i])), 0.0, 1e-15);
  }
  EXPECT_THROW(analog_beamformer(std::vector<double>{}), std::invalid_argument);
}

TEST(AlignedPhases, FullArrayGainTowardsDesiredDirection) {
  for (int n : {1, 2, 7, 16, 64}) {
    const ArrayGeometry g{n, 0.5};
    const double theta = deg_to_rad(60.0);
    const CVec v = analog_beamformer(aligned_phases(g, theta));
    const CVec h = steering_vector(g, theta);
    EXPECT_NEAR(std::norm(effective_array_gain(h, v)), n, 1e-9 * n);
    for (double a : aligned_phases(g, theta)) {
      EXPECT_GE(a, 0.0);
      EXPECT_LT(a, kTwoPi);
    }
  }
}

TEST(AlignedPhases, ReducedGainElsewhere) {
  const ArrayGeometry g{16, 0.5};
  const CVec v = analog_beamformer(aligned_phases(g, deg_to_rad(60.0)));
  const CVec h = steering_vector(g, deg_to_rad(120.0));
  EXPECT_LT(std::norm(effective_array_gain(h, v)), 1.0);
}

TEST(QuantizeBeamformer, ErrorsAndWeights) {
  const ArrayGeometry g{16, 0.5};
  const auto alpha = aligned_phases(g, deg_to_rad(33.0));
  for (int b : {1, 2, 3, 6}) {
    const PhaseCodebook cb(b);
    const auto q = quantize_beamformer(alpha, cb);
    ASSERT_EQ(q.weights.size(), 16u);
    ASSERT_EQ(q.errors.size(), 16u);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      EXPECT_LE(std::abs(q.errors[i]), cb.half_step() + 1e-12);
      const cdouble expect = std::polar(0.25, alpha[i] + q.errors[i]);
      EXPECT_NEAR(std::abs(q.weights[i] - expect), 0.0, 1e-12);
      // weight phase lies on the codebook
      const double k = wrap_two_pi(std::arg(q.weights[i])) / cb.step();
      EXPECT_NEAR(std::remainder(k, 1.0), 0.0, 1e-9);
    }
  }
}

TEST(EffectiveArrayGain, HermitianAndLengthChecked) {
  const CVec h{{1.0, 2.0}, {0.0, -1.0}};
  const CVec v{{3.0, 0.0}, {1.0, 1.0}};
  // conj(1+2j)*3 + conj(-j)*(1+j) = 3-6j + (j)(1+j) = 3-6j + j - 1 = 2-5j
  const cdouble g = effective_array_gain(h, v);
  EXPECT_NEAR(g.real(), 2.0, 1e-15);
  EXPECT_NEAR(g.imag(), -5.0, 1e-15);
  EXPECT_THROW(effective_array_gain(h, CVec(3)), std::invalid_argument);
}

class MaxSrTest : public ::testing::Test {
 protected:
  Scenario sc = Scenario::defaults();
  CVec v_a = analog_beamformer(aligned_phases(sc.alice_array(), sc.angle_ab));
};

TEST_F(MaxSrTest, UnitNormAndNotWorseThanSimpleChoices) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const ChannelSet ch = build_channels(sc, rng);
    const CVec v = max_sr_an_beamformer(ch, sc, v_a);
    EXPECT_NEAR(norm2(v), 1.0, 1e-12);
    const double best = gap(ch, sc, v_a, v);
    // Matched to Eve's channel.
    CVec to_eve(ch.h_be);
    for (auto& z : to_eve) z /= std::sqrt(norm2(ch.h_be));
    EXPECT_GE(best, gap(ch, sc, v_a, to_eve) - 1e-12);
    // Projection of h_be orthogonal to h_bb (zero-forcing).
    const cdouble c = effective_array_gain(ch.h_bb, ch.h_be) / norm2(ch.h_bb);
    CVec zf(ch.h_be);
    for (std::size_t i = 0; i < zf.size(); ++i) zf[i] -= c * ch.h_bb[i];
    const double zn = std::sqrt(norm2(zf));
    for (auto& z : zf) z /= zn;
    EXPECT_GE(best, gap(ch, sc, v_a, zf) - 1e-9);
  }
}

TEST_F(MaxSrTest, MatchesRandomSearchOracle) {
  sc.n_bob_tx = 3;
  Rng rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const ChannelSet ch = build_channels(sc, rng);
    const CVec v = max_sr_an_beamformer(ch, sc, v_a);
    const CVec o = an_beamformer_oracle(ch, sc, v_a, 20000, rng);
    EXPECT_NEAR(norm2(o), 1.0, 1e-12);
    EXPECT_GE(gap(ch, sc, v_a, v), gap(ch, sc, v_a, o) - 1e-9);
  }
}

TEST_F(MaxSrTest, NoSelfInterferenceJamsEve) {
  sc.self_interference = 0.0;
  Rng rng(13);
  const ChannelSet ch = build_channels(sc, rng);
  const CVec v = max_sr_an_beamformer(ch, sc, v_a);
  EXPECT_NEAR(std::norm(effective_array_gain(ch.h_be, v)), norm2(ch.h_be), 1e-9);
}

TEST_F(MaxSrTest, ParallelChannelsHandled) {
  Rng rng(14);
  ChannelSet ch = build_channels(sc, rng);
  ch.h_bb = ch.h_be;
  for (auto& z : ch.h_bb) z *= cdouble(0.3, -0.2);
  const CVec v = max_sr_an_beamformer(ch, sc, v_a);
  EXPECT_NEAR(norm2(v), 1.0, 1e-12);
  for (auto z : v) EXPECT_TRUE(std::isfinite(z.real()) && std::isfinite(z.imag()));
  // Jamming Eve also hits Bob; the choice must beat silence (v orthogonal to both).
  CVec silent(ch.h_be.size(), cdouble{0.0, 0.0});
  EXPECT_GE(gap(ch, sc, v_a, v), gap(ch, sc, v_a, silent) - 1e-12);
}

TEST_F(MaxSrTest, RejectsBadInput) {
  Rng rng(15);
  ChannelSet ch = build_channels(sc, rng);
  Scenario quiet = sc;
  quiet.noise_power = 0.0;
  EXPECT_THROW(max_sr_an_beamformer(ch, quiet, v_a), std::invalid_argument);
  ch.h_bb.resize(1);
  ch.h_be.resize(1);
  EXPECT_THROW(max_sr_an_beamformer(ch, sc, v_a), std::invalid_argument);
  EXPECT_THROW(an_beamformer_oracle(build_channels(sc, rng), sc, v_a, 0, rng),
               std::invalid_argument);
}

TEST(DesignBeamformers, Models) {
  const Scenario sc = Scenario::defaults();
  Rng rng(21);
  const ChannelSet ch = build_channels(sc, rng);
  const PhaseCodebook cb(3);

  Rng r1(1);
  const auto nqe = design_beamformers(sc, ch, nullptr, QeModel::kUniform, r1);
  EXPECT_EQ(nqe.v_a_quantized, nqe.v_a_ideal);
  EXPECT_NEAR(norm2(nqe.v_b), 1.0, 1e-12);

  Rng r2(1);
  const auto det = design_beamformers(sc, ch, &cb, QeModel::kDeterministic, r2);
  const auto alpha = aligned_phases(sc.alice_array(), sc.angle_ab);
  EXPECT_EQ(det.v_a_quantized, quantize_beamformer(alpha, cb).weights);
  EXPECT_EQ(det.v_b, nqe.v_b);  // v_b is designed from the ideal v_a

  Rng r3(1);
  const auto uni = design_beamformers(sc, ch, &cb, QeModel::kUniform, r3);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const double d = std::abs(std::arg(uni.v_a_quantized[i] / uni.v_a_ideal[i]));
    EXPECT_LE(d, cb.half_step() + 1e-12);
  }
}

}  // namespace
}  // namespace dmq
