#include <atomic>
#include <cstdlib>
#include <string>

#include "dmq/simd/kernels.h"

namespace dmq::simd {
namespace {

bool cpu_has_avx2() {
#if defined(DMQ_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Level initial_level() {
  const Level best = best_supported_level();
  if (const char* env = std::getenv("DMQ_KERNELS")) {
    const std::string want(env);
    if (want == "scalar") return Level::kScalar;
    if (want == "avx2" && best == Level::kAvx2) return Level::kAvx2;
  }
  return best;
}

std::atomic<Level>& active() {
  static std::atomic<Level> level{initial_level()};
  return level;
}

}  // namespace

std::string_view level_name(Level level) {
  switch (level) {
    case Level::kScalar:
      return "scalar";
    case Level::kAvx2:
      return "avx2";
  }
  return "unknown";
}

Level best_supported_level() {
  static const Level best = cpu_has_avx2() ? Level::kAvx2 : Level::kScalar;
  return best;
}

Level active_level() { return active().load(std::memory_order_relaxed); }

bool set_level(Level level) {
  if (level == Level::kAvx2 && best_supported_level() != Level::kAvx2) {
    return false;
  }
  active().store(level, std::memory_order_relaxed);
  return true;
}

cdouble phasor_sum(std::span<const double> phases) {
#if defined(DMQ_HAVE_AVX2)
  if (active_level() == Level::kAvx2) return avx2::phasor_sum(phases);
#endif
  return scalar::phasor_sum(phases);
}

cdouble inner_product(std::span<const cdouble> a, std::span<const cdouble> b) {
#if defined(DMQ_HAVE_AVX2)
  if (active_level() == Level::kAvx2) return avx2::inner_product(a, b);
#endif
  return scalar::inner_product(a, b);
}

std::uint64_t count_qpsk_bit_errors(std::span<const cdouble> rx, cdouble gain,
                                    std::span<const std::uint8_t> sent) {
#if defined(DMQ_HAVE_AVX2)
  if (active_level() == Level::kAvx2) {
    return avx2::count_qpsk_bit_errors(rx, gain, sent);
  }
#endif
  return scalar::count_qpsk_bit_errors(rx, gain, sent);
}

}  // namespace dmq::simd
