// Alice's analog (phase-only) beamformer and Bob's artificial-noise beamformer.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dmq/array_geometry.h"
#include "dmq/channel_model.h"
#include "dmq/phase_quantizer.h"
#include "dmq/types.h"

namespace dmq {

struct BeamformerPair {
  CVec v_a_ideal;      // phases alpha, entries of modulus 1/sqrt(N_a)
  CVec v_a_quantized;  // phases alpha-hat
  CVec v_b;            // unit-norm AN beamformer, length N_b^t
};

/// Phase-alignment weights toward theta_d: alpha_n = 2 pi psi_{theta_d}(n),
/// wrapped to [0, 2 pi).
std::vector<double> aligned_phases(const ArrayGeometry& geometry, double theta_d);

/// Constant-envelope weights (1/sqrt(N)) exp(j phases[n]); unit norm.
CVec analog_beamformer(std::span<const double> phases);

struct QuantizedBeamformer {
  CVec weights;
  std::vector<double> errors;  // per-antenna QE, |e| <= pi / 2^L
};

/// Quantizes every phase to the nearest codeword and builds the weights.
QuantizedBeamformer quantize_beamformer(std::span<const double> phases,
                                        const PhaseCodebook& codebook);

/// h^H v. Throws std::invalid_argument on length mismatch.
cdouble effective_array_gain(std::span<const cdouble> h, std::span<const cdouble> v);

/// Unit-norm v_b maximizing the secrecy rate for a fixed v_a.
///
/// The rate depends on v_b only through x = |h_bb^H v_b|^2 (self-interference,
/// hurts Bob) and y = |h_be^H v_b|^2 (jamming, hurts Eve), so the optimum lies
/// in span{h_bb, h_be}. With the phases aligned for maximal y, the remaining
/// unknown is the weight u on h_bb's direction, found by a grid bracket and a
/// golden-section search (tolerance 1e-10, at most 200 iterations).
///
/// Requires N_b^t >= 2 and noise_power > 0; throws std::invalid_argument
/// otherwise. If h_bb and h_be are parallel the search runs along h_bb and a
/// direction orthogonal to it (u = 0 gives x = 0).
CVec max_sr_an_beamformer(const ChannelSet& channels, const Scenario& scenario,
                          std::span<const cdouble> v_a);

/// Brute-force reference: best of `samples` random unit vectors (complex
/// Gaussian, normalized) under the same objective. samples >= 1.
CVec an_beamformer_oracle(const ChannelSet& channels, const Scenario& scenario,
                          std::span<const cdouble> v_a, std::uint64_t samples,
                          Rng& rng);

/// Builds the beamformers for one trial: v_a_ideal aligned to the desired
/// direction; v_a_quantized from `codebook` under `model` (uniform: each phase
/// perturbed by a sample_qe draw from `rng`; deterministic: quantize_beamformer),
/// or equal to v_a_ideal when `codebook` is null (no QE); and v_b from
/// max_sr_an_beamformer on the ideal v_a, reused for the quantized case.
BeamformerPair design_beamformers(const Scenario& scenario, const ChannelSet& channels,
                                  const PhaseCodebook* codebook, QeModel model,
                                  Rng& rng);

}  // namespace dmq
