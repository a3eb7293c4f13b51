#include "dmq/experiments/config.h"

#include <gtest/gtest.h>

#include <cmath>

namespace dmq::experiments {
namespace {

ConfigError config_error(std::string_view text,
                         std::optional<SweepKind> kind = std::nullopt) {
  try {
    validate_config(text, kind);
  } catch (const ConfigError& e) {
    return e;
  }
  ADD_FAILURE() << "expected ConfigError for:\n" << text;
  return ConfigError("", "");
}

TEST(SweepNames, RoundTrip) {
  for (auto k : {SweepKind::kBerSweep, SweepKind::kSinrVsL, SweepKind::kSinrVsNa,
                 SweepKind::kSrVsL, SweepKind::kSrVsLNa}) {
    EXPECT_EQ(parse_sweep_name(sweep_name(k)), k);
    EXPECT_EQ(parse_sweep_name(sweep_command(k)), k);
  }
  EXPECT_EQ(sweep_name(SweepKind::kSrVsLNa), "sr_vs_l_na");
  EXPECT_EQ(sweep_command(SweepKind::kSrVsLNa), "sr-vs-l-na");
  EXPECT_FALSE(parse_sweep_name("fig7").has_value());
}

TEST(ValidateConfig, EmptyGivesReferenceDefaults) {
  const ExperimentConfig c = validate_config("");
  EXPECT_EQ(c.kind, SweepKind::kSinrVsL);
  const Scenario& s = c.scenario;
  EXPECT_NEAR(s.power_alice, dbm_to_watts(70.0), 1e-6);
  EXPECT_NEAR(s.power_bob, dbm_to_watts(70.0), 1e-6);
  EXPECT_EQ(s.self_interference, 0.5);
  EXPECT_EQ(s.dist_ab, 500.0);
  EXPECT_EQ(s.dist_ae, 500.0);
  EXPECT_EQ(s.dist_be, 500.0);
  EXPECT_EQ(s.path_loss_exp, 2.0);
  EXPECT_NEAR(rad_to_deg(s.angle_ab), 60.0, 1e-12);
  EXPECT_NEAR(rad_to_deg(s.angle_ae), 120.0, 1e-12);
  EXPECT_NEAR(rad_to_deg(s.angle_be), 45.0, 1e-12);
  EXPECT_EQ(s.n_bob_tx, 16);
  EXPECT_EQ(c.grids.bits, (std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8}));
  EXPECT_EQ(c.grids.n_alice, (std::vector<int>{4, 16, 64, 256}));
  EXPECT_EQ(c.trial.trials, 100000u);
  EXPECT_EQ(c.trial.symbols_per_point, 100000u);
  EXPECT_GT(s.noise_power, 0.0);
}

TEST(ValidateConfig, PerSweepDefaults) {
  const auto ber = validate_config("", SweepKind::kBerSweep);
  EXPECT_EQ(ber.grids.bits, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(ber.grids.n_alice, (std::vector<int>{16}));
  EXPECT_EQ(ber.grids.snr_db, (std::vector<double>{10.0}));
  const auto sr = validate_config("", SweepKind::kSrVsL);
  EXPECT_EQ(sr.grids.snr_db, (std::vector<double>{0.0, 15.0, 30.0}));
  EXPECT_EQ(sr.grids.n_alice, (std::vector<int>{16}));
  const auto na = validate_config("sweep:\n  figure: sinr_vs_na\n");
  EXPECT_EQ(na.kind, SweepKind::kSinrVsNa);
  EXPECT_EQ(na.grids.bits, (std::vector<int>{3, 4, 5}));
}

TEST(ValidateConfig, ParsesAllSections) {
  const auto c = validate_config(R"(
scenario:
  power_alice: 40
  power_bob: 30
  angle_ab: 30
  self_interference: 0.25
  n_bob_tx: 4
sweep:
  figure: sr-vs-l
  qe_flavor: sampled
grids:
  bits: [2, 4]
  n_alice: [8]
  snr_db: [5, 10]
  angle_step: 2.5
trial:
  trials: 12
  symbols_per_point: 345
  master_seed: 99
  qe_model: deterministic
output: out.csv
)");
  EXPECT_EQ(c.kind, SweepKind::kSrVsL);
  EXPECT_NEAR(c.scenario.power_alice, 10.0, 1e-12);
  EXPECT_NEAR(c.scenario.power_bob, 1.0, 1e-12);
  EXPECT_NEAR(c.scenario.angle_ab, deg_to_rad(30.0), 1e-15);
  EXPECT_EQ(c.scenario.self_interference, 0.25);
  EXPECT_EQ(c.scenario.n_bob_tx, 4);
  EXPECT_EQ(c.qe_flavor, QeFlavor::kSampled);
  EXPECT_EQ(c.grids.bits, (std::vector<int>{2, 4}));
  EXPECT_EQ(c.grids.snr_db, (std::vector<double>{5.0, 10.0}));
  EXPECT_EQ(c.grids.angle_step_deg, 2.5);
  EXPECT_EQ(c.trial.trials, 12u);
  EXPECT_EQ(c.trial.symbols_per_point, 345u);
  EXPECT_EQ(c.trial.master_seed, 99u);
  EXPECT_EQ(c.trial.qe_model, QeModel::kDeterministic);
  EXPECT_EQ(c.output, "out.csv");
}

TEST(ValidateConfig, RhoOutOfRangeNamesKey) {
  const auto e = config_error("scenario:\n  self_interference: 1.5\n");
  EXPECT_EQ(e.key(), "scenario.self_interference");
  EXPECT_EQ(e.line(), 2);
  EXPECT_NE(std::string(e.what()).find("scenario.self_interference"), std::string::npos);
}

TEST(ValidateConfig, ZeroBitsRejected) {
  const auto e = config_error("grids:\n  bits: [1, 0, 3]\n");
  EXPECT_EQ(e.key(), "grids.bits");
  EXPECT_EQ(config_error("grids:\n  bits: [31]\n").key(), "grids.bits");
  EXPECT_EQ(config_error("grids:\n  bits: []\n").key(), "grids.bits");
}

TEST(ValidateConfig, UnknownKeysRejected) {
  EXPECT_EQ(config_error("scenario:\n  rho: 0.3\n").key(), "scenario.rho");
  EXPECT_EQ(config_error("scenaro:\n  n_alice: 4\n").key(), "scenaro");
  EXPECT_EQ(config_error("trial:\n  trails: 4\n").key(), "trial.trails");
}

TEST(ValidateConfig, ParseErrorHasLine) {
  const auto e = config_error("scenario:\n  n_alice: [1, 2\n  dist_ab: 3\n");
  EXPECT_GT(e.line(), 0);
  EXPECT_EQ(e.key(), "<document>");
}

TEST(ValidateConfig, TypeAndRangeErrors) {
  EXPECT_EQ(config_error("scenario:\n  n_alice: four\n").key(), "scenario.n_alice");
  EXPECT_EQ(config_error("scenario:\n  angle_ab: 360\n").key(), "scenario.angle_ab");
  EXPECT_EQ(config_error("scenario:\n  n_bob_tx: 1\n").key(), "scenario.n_bob_tx");
  EXPECT_EQ(config_error("scenario:\n  dist_ab: -4\n").key(), "scenario.dist_ab");
  EXPECT_EQ(config_error("trial:\n  trials: 0\n").key(), "trial.trials");
  EXPECT_EQ(config_error("trial:\n  qe_model: gaussian\n").key(), "trial.qe_model");
  EXPECT_EQ(config_error("sweep:\n  figure: fig9\n").key(), "sweep.figure");
  EXPECT_EQ(config_error("grids:\n  angle_step: 0\n").key(), "grids.angle_step");
  EXPECT_EQ(config_error("- 1\n- 2\n").key(), "<document>");
}

TEST(ValidateConfig, FigureMustMatchCommand) {
  const auto e = config_error("sweep:\n  figure: sr_vs_l\n", SweepKind::kSinrVsL);
  EXPECT_EQ(e.key(), "sweep.figure");
  EXPECT_NO_THROW(validate_config("sweep:\n  figure: sr_vs_l\n", SweepKind::kSrVsL));
}

TEST(ValidateConfig, NoisePowerVersusSnr) {
  const auto c = validate_config("scenario:\n  noise_power: 4.0e-4\n", SweepKind::kSinrVsL);
  EXPECT_EQ(c.scenario.noise_power, 4.0e-4);
  ASSERT_EQ(c.grids.snr_db.size(), 1u);
  EXPECT_NEAR(c.grids.snr_db[0], 20.0, 1e-9);  // 4e-6 * 1e4 / 4e-4 = 100
  EXPECT_EQ(config_error("scenario:\n  noise_power: 1.0\ngrids:\n  snr_db: [3]\n").key(),
            "grids.snr_db");
}

TEST(ValidateConfig, BerSweepNeedsSinglePoint) {
  EXPECT_EQ(config_error("grids:\n  n_alice: [4, 8]\n", SweepKind::kBerSweep).key(),
            "grids.n_alice");
  EXPECT_EQ(config_error("grids:\n  snr_db: [4, 8]\n", SweepKind::kBerSweep).key(),
            "grids.snr_db");
  const auto c = validate_config("grids:\n  n_alice: [8]\n", SweepKind::kBerSweep);
  EXPECT_EQ(c.scenario.n_alice, 8);
}

TEST(ExperimentConfig, YamlRoundTrip) {
  auto c = validate_config(R"(
scenario: {angle_ae: 100, power_alice: 55}
grids: {bits: [2, 3], n_alice: [8, 32], snr_db: [1, 2]}
trial: {trials: 17, master_seed: 5}
)",
                           SweepKind::kSrVsLNa);
  const auto d = validate_config(c.to_yaml(), SweepKind::kSrVsLNa);
  EXPECT_EQ(d.to_yaml(), c.to_yaml());
  EXPECT_NEAR(d.scenario.angle_ae, c.scenario.angle_ae, 1e-12);
  EXPECT_NEAR(d.scenario.power_alice, c.scenario.power_alice, 1e-9 * c.scenario.power_alice);
  EXPECT_EQ(d.grids.n_alice, c.grids.n_alice);
  EXPECT_EQ(d.trial.trials, 17u);
}

}  // namespace
}  // namespace dmq::experiments
