// AVX2/FMA variants. Compiled with -mavx2 -mfma; only reached after the
// dispatcher has confirmed CPU support.

#include <immintrin.h>

#include <bit>
#include <cmath>

#include "dmq/simd/kernels.h"

namespace dmq::simd::avx2 {
namespace {

// pi/2 split so that k * kPio2Hi is exact for |k| < 2^20.
constexpr double kTwoOverPi = 0.63661977236758134308;
constexpr double kPio2Hi = 1.57079632673412561417e+00;
constexpr double kPio2Lo = 6.07710050650619224932e-11;

// Taylor coefficients on |r| <= pi/4; truncation error below 5e-17.
constexpr double kSin[] = {
    -1.0 / 6.0,           1.0 / 120.0,           -1.0 / 5040.0,
    1.0 / 362880.0,       -1.0 / 39916800.0,     1.0 / 6227020800.0,
    -1.0 / 1307674368000.0};
constexpr double kCos[] = {
    -1.0 / 2.0,           1.0 / 24.0,            -1.0 / 720.0,
    1.0 / 40320.0,        -1.0 / 3628800.0,      1.0 / 479001600.0,
    -1.0 / 87178291200.0, 1.0 / 20922789888000.0};

inline __m256d horner(__m256d r2, const double* c, int n) {
  __m256d acc = _mm256_set1_pd(c[n - 1]);
  for (int i = n - 2; i >= 0; --i) {
    acc = _mm256_fmadd_pd(acc, r2, _mm256_set1_pd(c[i]));
  }
  return acc;
}

inline void sincos4(__m256d x, __m256d& s_out, __m256d& c_out) {
  const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kPio2Hi), x);
  r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kPio2Lo), r);
  const __m256d r2 = _mm256_mul_pd(r, r);

  // sin r = r + r^3 * P(r^2), cos r = 1 + r^2 * Q(r^2)
  const __m256d s = _mm256_fmadd_pd(_mm256_mul_pd(r, r2),
                                    horner(r2, kSin, 7), r);
  const __m256d c = _mm256_fmadd_pd(r2, horner(r2, kCos, 8),
                                    _mm256_set1_pd(1.0));

  const __m256i q = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(k));
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  // Odd quadrants swap sin and cos.
  const __m256d swap = _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(_mm256_and_si256(q, one), one));
  __m256d sv = _mm256_blendv_pd(s, c, swap);
  __m256d cv = _mm256_blendv_pd(c, s, swap);
  // sin is negated in quadrants 2,3; cos in quadrants 1,2.
  const __m256i sin_sign = _mm256_slli_epi64(_mm256_and_si256(q, two), 62);
  const __m256i cos_sign =
      _mm256_slli_epi64(_mm256_and_si256(_mm256_add_epi64(q, one), two), 62);
  sv = _mm256_xor_pd(sv, _mm256_castsi256_pd(sin_sign));
  cv = _mm256_xor_pd(cv, _mm256_castsi256_pd(cos_sign));
  s_out = sv;
  c_out = cv;
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

cdouble phasor_sum(std::span<const double> phases) {
  const std::size_t n = phases.size();
  const double* p = phases.data();
  __m256d re0 = _mm256_setzero_pd(), im0 = _mm256_setzero_pd();
  __m256d re1 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d s0, c0, s1, c1;
    sincos4(_mm256_loadu_pd(p + i), s0, c0);
    sincos4(_mm256_loadu_pd(p + i + 4), s1, c1);
    re0 = _mm256_add_pd(re0, c0);
    im0 = _mm256_add_pd(im0, s0);
    re1 = _mm256_add_pd(re1, c1);
    im1 = _mm256_add_pd(im1, s1);
  }
  if (i + 4 <= n) {
    __m256d s0, c0;
    sincos4(_mm256_loadu_pd(p + i), s0, c0);
    re0 = _mm256_add_pd(re0, c0);
    im0 = _mm256_add_pd(im0, s0);
    i += 4;
  }
  if (i < n) {
    alignas(32) double tail[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t rem = n - i;
    for (std::size_t j = 0; j < rem; ++j) tail[j] = p[i + j];
    __m256d s0, c0;
    sincos4(_mm256_load_pd(tail), s0, c0);
    // Zero-padded lanes contribute cos(0) = 1; mask them out.
    alignas(32) std::int64_t keep[4] = {0, 0, 0, 0};
    for (std::size_t j = 0; j < rem; ++j) keep[j] = -1;
    const __m256d mask = _mm256_castsi256_pd(
        _mm256_load_si256(reinterpret_cast<const __m256i*>(keep)));
    re0 = _mm256_add_pd(re0, _mm256_and_pd(c0, mask));
    im0 = _mm256_add_pd(im0, _mm256_and_pd(s0, mask));
  }
  return {hsum(_mm256_add_pd(re0, re1)), hsum(_mm256_add_pd(im0, im1))};
}

cdouble inner_product(std::span<const cdouble> a, std::span<const cdouble> b) {
  const std::size_t n = a.size();
  const double* pa = reinterpret_cast<const double*>(a.data());
  const double* pb = reinterpret_cast<const double*>(b.data());
  // Lanes hold [re, im, re, im]. acc_re collects ar*br and ai*bi; acc_im
  // collects ar*bi and ai*br, combined with alternating signs at the end.
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d vb_swap = _mm256_permute_pd(vb, 0b0101);
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    acc_im = _mm256_fmadd_pd(va, vb_swap, acc_im);
  }
  alignas(32) double re[4];
  alignas(32) double im[4];
  _mm256_store_pd(re, acc_re);
  _mm256_store_pd(im, acc_im);
  double sum_re = (re[0] + re[2]) + (re[1] + re[3]);
  double sum_im = (im[0] + im[2]) - (im[1] + im[3]);
  for (; i < n; ++i) {
    sum_re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    sum_im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {sum_re, sum_im};
}

std::uint64_t count_qpsk_bit_errors(std::span<const cdouble> rx, cdouble gain,
                                    std::span<const std::uint8_t> sent) {
  const std::size_t n = rx.size();
  const double* p = reinterpret_cast<const double*>(rx.data());
  const __m256d gr = _mm256_set1_pd(gain.real());
  const __m256d gi = _mm256_set1_pd(gain.imag());
  const __m256d zero = _mm256_setzero_pd();
  std::uint64_t errors = 0;
  std::size_t i = 0;
  // No FMA here: decisions must match the scalar reference bit for bit.
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(p + 2 * i);
    const __m256d prod = _mm256_mul_pd(v, gr);
    const __m256d cross = _mm256_mul_pd(_mm256_permute_pd(v, 0b0101), gi);
    const __m256d z = _mm256_blend_pd(_mm256_add_pd(prod, cross),
                                      _mm256_sub_pd(prod, cross), 0b1010);
    const unsigned neg =
        static_cast<unsigned>(_mm256_movemask_pd(_mm256_cmp_pd(z, zero, _CMP_LT_OQ)));
    const unsigned s0 = sent[i];
    const unsigned s1 = sent[i + 1];
    const unsigned expected =
        (s0 >> 1) | ((s0 & 1u) << 1) | ((s1 >> 1) << 2) | ((s1 & 1u) << 3);
    errors += static_cast<std::uint64_t>(std::popcount(neg ^ expected));
  }
  if (i < n) {
    errors += scalar::count_qpsk_bit_errors(rx.subspan(i), gain, sent.subspan(i));
  }
  return errors;
}

}  // namespace dmq::simd::avx2
