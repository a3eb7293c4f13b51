#include "dmq/phase_quantizer.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dmq {

PhaseCodebook::PhaseCodebook(int bits) : bits_(bits), step_(0.0) {
  if (bits < kMinBits || bits > kMaxBits) {
    throw std::out_of_range("PhaseCodebook: bits must be in [1, 30], got " +
                            std::to_string(bits));
  }
  step_ = std::ldexp(kTwoPi, -bits);
}

std::vector<double> PhaseCodebook::codewords() const {
  std::vector<double> out(size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = codeword(k);
  return out;
}

double wrap_two_pi(double phase) {
  double r = std::fmod(phase, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative number can round back up to exactly 2 pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double wrap_pi(double phase) { return std::remainder(phase, kTwoPi); }

Quantized quantize(double phase, const PhaseCodebook& codebook) {
  const double r = wrap_two_pi(phase);
  const auto n = static_cast<double>(codebook.size());
  double k = std::floor(r / codebook.step() + 0.5);
  if (k >= n) k -= n;
  const double c = codebook.codeword(static_cast<std::size_t>(k));
  return {c, wrap_pi(c - r)};
}

double sample_qe(const PhaseCodebook& codebook, Rng& rng) {
  const double h = codebook.half_step();
  return std::uniform_real_distribution<double>(-h, h)(rng);
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double expected_phasor(const PhaseCodebook& codebook) {
  return sinc(codebook.half_step());
}

}  // namespace dmq
