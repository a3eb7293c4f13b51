// Alice-Bob-Eve link geometry, path loss, LOS channels and noise.
//
// Alice (N_a-element ULA) sends to Bob at angle_ab; Eve sits at angle_ae.
// Bob is full duplex: one receive antenna plus an N_b^t-element transmit
// subarray that radiates artificial noise (AN) toward Eve (angle_be) and leaks
// into its own receiver through the self-interference channel h_bb, scaled by
// rho.

#pragma once

#include "dmq/array_geometry.h"
#include "dmq/types.h"

namespace dmq {

struct Scenario {
  double power_alice = 1.0e4;  // W (70 dBm)
  double power_bob = 1.0e4;    // W (70 dBm)
  double dist_ab = 500.0;      // m
  double dist_ae = 500.0;
  double dist_be = 500.0;
  double angle_ab = deg_to_rad(60.0);  // desired direction theta_d
  double angle_ae = deg_to_rad(120.0); // eavesdropper direction theta_e
  double angle_be = deg_to_rad(45.0);
  double path_loss_exp = 2.0;    // c
  double ref_attenuation = 1.0;  // epsilon at d0 = 1 m
  double self_interference = 0.5;  // rho in [0, 1]
  double noise_power = 0.0;        // sigma^2, W; same at Bob and Eve
  int n_alice = 16;
  int n_bob_tx = 16;
  int n_bob_rx = 1;
  double spacing_ratio = 0.5;  // d / lambda, both arrays

  // The reference parameter set with noise_power at 15 dB receive SNR.
  static Scenario defaults();

  // Throws std::invalid_argument naming the offending field.
  void validate() const;

  ArrayGeometry alice_array() const { return {n_alice, spacing_ratio}; }
  ArrayGeometry bob_tx_array() const { return {n_bob_tx, spacing_ratio}; }
};

struct ChannelSet {
  CVec h_ab;  // N_a, steering vector at angle_ab
  CVec h_ae;  // N_a, steering vector at angle_ae
  CVec h_be;  // N_b^t, steering vector at angle_be
  CVec h_bb;  // N_b^t, i.i.d. CN(0, 1) self-interference channel
  double g_ab = 0.0;
  double g_ae = 0.0;
  double g_be = 0.0;
};

/// epsilon / d^c. Throws std::invalid_argument for distance <= 0.
double path_gain(double distance, double exponent, double epsilon);

/// Builds the LOS vectors and path gains from the scenario and draws h_bb from
/// `rng` (the only random part). Identical rng state gives identical channels.
ChannelSet build_channels(const Scenario& scenario, Rng& rng);

/// sigma^2 such that the per-antenna receive SNR at Bob, g_ab P_a / sigma^2,
/// equals snr_db.
double noise_from_snr(double snr_db, const Scenario& scenario);

/// Returns the scenario with noise_power set from noise_from_snr.
Scenario with_snr(Scenario scenario, double snr_db);

/// Circularly-symmetric complex Gaussian sample with total variance sigma2.
cdouble awgn(double sigma2, Rng& rng);

/// Standard complex Gaussian CN(0, 1).
cdouble complex_normal(Rng& rng);

}  // namespace dmq
