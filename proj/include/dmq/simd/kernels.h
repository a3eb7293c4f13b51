// Data-parallel inner loops of the simulator.
//
// Every kernel has a portable scalar reference in namespace `scalar` and, on
// x86-64 builds, an AVX2/FMA variant in namespace `avx2`. The free functions in
// `dmq::simd` forward to whichever variant was selected at startup; the
// selection can be pinned with set_level() or the DMQ_KERNELS environment
// variable ("scalar", "avx2", "auto").
//
// Variants are not bit-identical: summation order differs and the AVX2 sincos
// is a polynomial. Equivalence is checked in tests/unit/simd_kernels_test.cc.
// Within one process the active level is fixed, so results stay reproducible.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>

namespace dmq::simd {

using cdouble = std::complex<double>;

enum class Level { kScalar, kAvx2 };

std::string_view level_name(Level level);

// Highest level the running CPU and this build both support.
Level best_supported_level();
Level active_level();
// Returns false (and leaves the active level unchanged) if `level` is not
// supported here.
bool set_level(Level level);

/// Sum of unit phasors, sum_n exp(j * phases[n]).
/// The AVX2 path reduces arguments with a two-term pi/2 split and is accurate
/// to a few ulp for |phase| < 2^20.
cdouble phasor_sum(std::span<const double> phases);

/// Hermitian inner product a^H b.
/// Requires a.size() == b.size(); callers check.
cdouble inner_product(std::span<const cdouble> a, std::span<const cdouble> b);

/// Counts QPSK bit errors after coherent detection of `rx` against the
/// Gray-mapped symbol indices in `sent` (index = 2*b0 + b1). Decisions are
/// the signs of rx * conj(gain); a zero component decides bit 0.
std::uint64_t count_qpsk_bit_errors(std::span<const cdouble> rx, cdouble gain,
                                    std::span<const std::uint8_t> sent);

namespace scalar {
cdouble phasor_sum(std::span<const double> phases);
cdouble inner_product(std::span<const cdouble> a, std::span<const cdouble> b);
std::uint64_t count_qpsk_bit_errors(std::span<const cdouble> rx, cdouble gain,
                                    std::span<const std::uint8_t> sent);
}  // namespace scalar

#if defined(DMQ_HAVE_AVX2)
namespace avx2 {
cdouble phasor_sum(std::span<const double> phases);
cdouble inner_product(std::span<const cdouble> a, std::span<const cdouble> b);
std::uint64_t count_qpsk_bit_errors(std::span<const cdouble> rx, cdouble gain,
                                    std::span<const std::uint8_t> sent);
}  // namespace avx2
#endif

}  // namespace dmq::simd
