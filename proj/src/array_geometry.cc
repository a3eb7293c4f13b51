#include "dmq/array_geometry.h"

#include <cmath>
#include <stdexcept>

namespace dmq {

void ArrayGeometry::validate() const {
  if (num_elements < 1) {
    throw std::invalid_argument("ArrayGeometry: num_elements must be >= 1");
  }
  if (!(spacing_ratio > 0.0) || !std::isfinite(spacing_ratio)) {
    throw std::invalid_argument("ArrayGeometry: spacing_ratio must be > 0");
  }
}

std::vector<double> phase_profile(const ArrayGeometry& geometry, double theta) {
  geometry.validate();
  const int n_elem = geometry.num_elements;
  const double centre = 0.5 * (n_elem + 1);
  const double slope = geometry.spacing_ratio * std::cos(theta);
  std::vector<double> psi(static_cast<std::size_t>(n_elem));
  for (int n = 1; n <= n_elem; ++n) {
    psi[static_cast<std::size_t>(n - 1)] = -(n - centre) * slope;
  }
  return psi;
}

CVec steering_vector(const ArrayGeometry& geometry, double theta) {
  const std::vector<double> psi = phase_profile(geometry, theta);
  CVec h(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    h[i] = std::polar(1.0, kTwoPi * psi[i]);
  }
  return h;
}

}  // namespace dmq
