#include "dmq/channel_model.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dmq {
namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) {
    throw std::invalid_argument(std::string("Scenario.") + field + ": " + what);
  }
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

Scenario Scenario::defaults() { return with_snr(Scenario{}, 15.0); }

void Scenario::validate() const {
  require(positive(power_alice), "power_alice", "must be > 0");
  require(positive(power_bob), "power_bob", "must be > 0");
  require(positive(dist_ab), "dist_ab", "must be > 0");
  require(positive(dist_ae), "dist_ae", "must be > 0");
  require(positive(dist_be), "dist_be", "must be > 0");
  require(std::isfinite(angle_ab), "angle_ab", "must be finite");
  require(std::isfinite(angle_ae), "angle_ae", "must be finite");
  require(std::isfinite(angle_be), "angle_be", "must be finite");
  require(std::isfinite(path_loss_exp) && path_loss_exp >= 0.0, "path_loss_exp",
          "must be >= 0");
  require(positive(ref_attenuation), "ref_attenuation", "must be > 0");
  require(self_interference >= 0.0 && self_interference <= 1.0,
          "self_interference", "must be in [0, 1]");
  require(std::isfinite(noise_power) && noise_power >= 0.0, "noise_power",
          "must be >= 0");
  require(n_alice >= 1, "n_alice", "must be >= 1");
  require(n_bob_tx >= 1, "n_bob_tx", "must be >= 1");
  require(n_bob_rx == 1, "n_bob_rx", "Bob has a single receive antenna");
  require(positive(spacing_ratio), "spacing_ratio", "must be > 0");
}

double path_gain(double distance, double exponent, double epsilon) {
  if (!(distance > 0.0)) {
    throw std::invalid_argument("path_gain: distance must be > 0");
  }
  return epsilon / std::pow(distance, exponent);
}

ChannelSet build_channels(const Scenario& scenario, Rng& rng) {
  ChannelSet ch;
  ch.h_ab = steering_vector(scenario.alice_array(), scenario.angle_ab);
  ch.h_ae = steering_vector(scenario.alice_array(), scenario.angle_ae);
  ch.h_be = steering_vector(scenario.bob_tx_array(), scenario.angle_be);
  ch.h_bb.resize(static_cast<std::size_t>(scenario.n_bob_tx));
  for (auto& h : ch.h_bb) h = complex_normal(rng);
  ch.g_ab = path_gain(scenario.dist_ab, scenario.path_loss_exp,
                      scenario.ref_attenuation);
  ch.g_ae = path_gain(scenario.dist_ae, scenario.path_loss_exp,
                      scenario.ref_attenuation);
  ch.g_be = path_gain(scenario.dist_be, scenario.path_loss_exp,
                      scenario.ref_attenuation);
  return ch;
}

double noise_from_snr(double snr_db, const Scenario& scenario) {
  const double g_ab = path_gain(scenario.dist_ab, scenario.path_loss_exp,
                                scenario.ref_attenuation);
  return g_ab * scenario.power_alice / db_to_linear(snr_db);
}

Scenario with_snr(Scenario scenario, double snr_db) {
  scenario.noise_power = noise_from_snr(snr_db, scenario);
  return scenario;
}

cdouble complex_normal(Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

cdouble awgn(double sigma2, Rng& rng) {
  if (sigma2 <= 0.0) return {0.0, 0.0};
  return std::sqrt(sigma2) * complex_normal(rng);
}

}  // namespace dmq
