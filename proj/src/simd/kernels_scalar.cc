#include "dmq/simd/kernels.h"

#include <cmath>

namespace dmq::simd::scalar {

cdouble phasor_sum(std::span<const double> phases) {
  double re = 0.0;
  double im = 0.0;
  for (double p : phases) {
    re += std::cos(p);
    im += std::sin(p);
  }
  return {re, im};
}

cdouble inner_product(std::span<const cdouble> a, std::span<const cdouble> b) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

std::uint64_t count_qpsk_bit_errors(std::span<const cdouble> rx, cdouble gain,
                                    std::span<const std::uint8_t> sent) {
  const double gr = gain.real();
  const double gi = gain.imag();
  std::uint64_t errors = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    // rx * conj(gain), written out so the AVX2 variant can match it exactly.
    const double zr = rx[i].real() * gr + rx[i].imag() * gi;
    const double zi = rx[i].imag() * gr - rx[i].real() * gi;
    const unsigned detected = (zr < 0.0 ? 2u : 0u) | (zi < 0.0 ? 1u : 0u);
    const unsigned diff = detected ^ sent[i];
    errors += (diff & 1u) + (diff >> 1);
  }
  return errors;
}

}  // namespace dmq::simd::scalar
