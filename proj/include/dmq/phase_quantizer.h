// L-bit RF phase-shifter model.
//
// The codebook holds 2^L phases 2 pi k / 2^L. A designed phase is mapped to the
// circularly nearest codeword; the quantization error (QE) is the wrapped
// difference codeword - phase and never exceeds pi / 2^L in magnitude.
//
// Two QE models coexist: the deterministic nearest-codeword quantizer below,
// and the statistical model in which errors are i.i.d. uniform on
// [-pi/2^L, pi/2^L] (sample_qe). Closed-form metrics use the uniform model.

#pragma once

#include <cstddef>
#include <vector>

#include "dmq/types.h"

namespace dmq {

// Which QE model drives a simulation: i.i.d. uniform draws, or the actual
// nearest-codeword quantizer applied to the designed phases.
enum class QeModel { kUniform, kDeterministic };

class PhaseCodebook {
 public:
  static constexpr int kMinBits = 1;
  static constexpr int kMaxBits = 30;

  // Throws std::out_of_range unless kMinBits <= bits <= kMaxBits.
  explicit PhaseCodebook(int bits);

  int bits() const { return bits_; }
  std::size_t size() const { return std::size_t{1} << bits_; }
  // Adjacent codeword spacing, 2 pi / 2^L.
  double step() const { return step_; }
  // Largest possible |QE|, pi / 2^L.
  double half_step() const { return 0.5 * step_; }
  double codeword(std::size_t k) const { return static_cast<double>(k) * step_; }
  std::vector<double> codewords() const;

  friend bool operator==(const PhaseCodebook&, const PhaseCodebook&) = default;

 private:
  int bits_;
  double step_;
};

struct Quantized {
  double codeword;  // in [0, 2 pi)
  double error;     // codeword - phase, wrapped to [-pi, pi]
};

/// Nearest codeword on the circle. Exact midpoints go to the larger codeword
/// (modulo 2 pi), i.e. round-half-up on the circle.
Quantized quantize(double phase, const PhaseCodebook& codebook);

/// One draw of the uniform QE model, Uniform[-pi/2^L, pi/2^L].
double sample_qe(const PhaseCodebook& codebook, Rng& rng);

/// E[exp(j dAlpha)] under the uniform model: sinc(pi / 2^L).
double expected_phasor(const PhaseCodebook& codebook);

/// sin(x)/x with sinc(0) = 1.
double sinc(double x);

/// Reduces an angle to [0, 2 pi).
double wrap_two_pi(double phase);
/// Reduces an angle to [-pi, pi].
double wrap_pi(double phase);

}  // namespace dmq
