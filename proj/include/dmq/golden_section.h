#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>

namespace dmq {

struct ScalarOptimum {
  double x;
  double value;
  int iterations;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi]. Stops
/// when the bracket is narrower than `tol` or after `max_iter` shrinks.
template <typename F>
ScalarOptimum golden_section_maximize(F&& f, double lo, double hi,
                                      double tol = 1e-10, int max_iter = 200) {
  constexpr double kInvPhi = 0.61803398874989484820;  // 1 / golden ratio
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  int it = 0;
  while ((b - a) > tol && it < max_iter) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
    ++it;
  }
  // Endpoints are cheap to check and catch monotone objectives exactly.
  ScalarOptimum best{f1 >= f2 ? x1 : x2, f1 >= f2 ? f1 : f2, it};
  for (double edge : {lo, hi}) {
    const double fe = f(edge);
    if (fe > best.value) best = {edge, fe, it};
  }
  return best;
}

}  // namespace dmq
