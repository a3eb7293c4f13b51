// Uniform linear array phase profiles and steering vectors.
//
// Antenna index n runs 1..N in the formulas and 0..N-1 in storage: entry i of
// every vector returned here corresponds to antenna n = i + 1. Angles are in
// radians.

#pragma once

#include <vector>

#include "dmq/types.h"

namespace dmq {

struct ArrayGeometry {
  int num_elements = 1;
  // Element spacing over wavelength, d / lambda.
  double spacing_ratio = 0.5;

  // Throws std::invalid_argument if num_elements < 1 or spacing_ratio <= 0.
  void validate() const;
};

/// Per-antenna phase in cycles,
///   psi(n) = -(n - (N + 1) / 2) * (d / lambda) * cos(theta),  n = 1..N.
/// The profile is antisymmetric about the array centre.
std::vector<double> phase_profile(const ArrayGeometry& geometry, double theta);

/// Steering vector with entries exp(j 2 pi psi(n)). Entries have unit modulus,
/// so h^H h = N; there is no 1/sqrt(N) factor here (it lives in the analog
/// beamformer).
CVec steering_vector(const ArrayGeometry& geometry, double theta);

}  // namespace dmq
