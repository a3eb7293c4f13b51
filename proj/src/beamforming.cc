#include "dmq/beamforming.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dmq/golden_section.h"
#include "dmq/metrics.h"
#include "dmq/simd/kernels.h"

namespace dmq {

std::vector<double> aligned_phases(const ArrayGeometry& geometry, double theta_d) {
  std::vector<double> alpha = phase_profile(geometry, theta_d);
  for (double& a : alpha) a = wrap_two_pi(kTwoPi * a);
  return alpha;
}

CVec analog_beamformer(std::span<const double> phases) {
  if (phases.empty()) {
    throw std::invalid_argument("analog_beamformer: need at least one phase");
  }
  const double amp = 1.0 / std::sqrt(static_cast<double>(phases.size()));
  CVec v(phases.size());
  for (std::size_t i = 0; i < phases.size(); ++i) v[i] = std::polar(amp, phases[i]);
  return v;
}

QuantizedBeamformer quantize_beamformer(std::span<const double> phases,
                                        const PhaseCodebook& codebook) {
  std::vector<double> quantized(phases.size());
  QuantizedBeamformer out;
  out.errors.resize(phases.size());
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const Quantized q = quantize(phases[i], codebook);
    quantized[i] = q.codeword;
    out.errors[i] = q.error;
  }
  out.weights = analog_beamformer(quantized);
  return out;
}

cdouble effective_array_gain(std::span<const cdouble> h, std::span<const cdouble> v) {
  if (h.size() != v.size()) {
    throw std::invalid_argument("effective_array_gain: length mismatch");
  }
  return simd::inner_product(h, v);
}

namespace {

double norm2(std::span<const cdouble> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

// Received powers that do not depend on v_b.
struct FixedTerms {
  double bob_signal;  // g_ab P_a |h_ab^H v_a|^2
  double eve_signal;  // g_ae P_a |h_ae^H v_a|^2
  double si_scale;    // rho P_b
  double jam_scale;   // g_be P_b
  double sigma2;
};

FixedTerms fixed_terms(const ChannelSet& ch, const Scenario& sc,
                       std::span<const cdouble> v_a) {
  return {ch.g_ab * sc.power_alice * std::norm(effective_array_gain(ch.h_ab, v_a)),
          ch.g_ae * sc.power_alice * std::norm(effective_array_gain(ch.h_ae, v_a)),
          sc.self_interference * sc.power_bob, ch.g_be * sc.power_bob,
          sc.noise_power};
}

// Objective in terms of x = |h_bb^H v_b|^2 and y = |h_be^H v_b|^2.
double objective(const FixedTerms& f, double x, double y) {
  return secrecy_gap(f.bob_signal, f.eve_signal, f.si_scale * x + f.sigma2,
                     f.jam_scale * y + f.sigma2);
}

// Unit vector orthogonal to unit vector e (N >= 2): Gram-Schmidt on the
// standard basis vector least aligned with e.
CVec orthogonal_unit(const CVec& e) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (std::abs(e[i]) < std::abs(e[k])) k = i;
  }
  CVec w(e.size(), cdouble{0.0, 0.0});
  w[k] = 1.0;
  const cdouble proj = std::conj(e[k]);  // e^H w
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= proj * e[i];
  const double n = std::sqrt(norm2(w));
  for (auto& z : w) z /= n;
  return w;
}

// Grid bracket followed by golden section on [0, hi].
template <typename F>
double maximize_weight(F&& f, double hi) {
  std::vector<double> grid{0.0};
  for (int m = 12; m >= 1; --m) grid.push_back(hi * std::pow(10.0, -m));
  constexpr int kLinear = 32;
  for (int k = 1; k <= kLinear; ++k) grid.push_back(hi * k / kLinear);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::size_t best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double val = f(grid[i]);
    if (val > best_val) {
      best_val = val;
      best = i;
    }
  }
  const double lo_b = grid[best == 0 ? 0 : best - 1];
  const double hi_b = grid[std::min(best + 1, grid.size() - 1)];
  const ScalarOptimum opt = golden_section_maximize(f, lo_b, hi_b, 1e-10, 200);
  return opt.value >= best_val ? opt.x : grid[best];
}

}  // namespace

CVec max_sr_an_beamformer(const ChannelSet& channels, const Scenario& scenario,
                          std::span<const cdouble> v_a) {
  const std::size_t n = channels.h_bb.size();
  if (n < 2 || channels.h_be.size() != n) {
    throw std::invalid_argument(
        "max_sr_an_beamformer: need N_b^t >= 2 and matching h_bb, h_be");
  }
  if (!(scenario.noise_power > 0.0)) {
    throw std::invalid_argument("max_sr_an_beamformer: noise_power must be > 0");
  }
  const FixedTerms terms = fixed_terms(channels, scenario, v_a);
  const CVec& h_bb = channels.h_bb;
  const CVec& h_be = channels.h_be;
  const double be_norm = std::sqrt(norm2(h_be));
  const double bb_norm = std::sqrt(norm2(h_bb));

  // No self-interference channel (or no penalty on it): jam Eve at full power.
  if (bb_norm == 0.0 || terms.si_scale == 0.0) {
    CVec v(h_be);
    for (auto& z : v) z /= be_norm;
    return v;
  }

  // Orthonormal basis of span{h_bb, h_be}: e1 along h_bb, e2 the part of h_be
  // orthogonal to it. b1, b2 are the coordinates of h_be.
  CVec e1(h_bb);
  for (auto& z : e1) z /= bb_norm;
  const cdouble b1 = simd::inner_product(e1, h_be);
  CVec e2(h_be);
  for (std::size_t i = 0; i < n; ++i) e2[i] -= b1 * e1[i];
  double b2 = std::sqrt(norm2(e2));
  double u_max = 0.0;
  if (b2 > 1e-12 * be_norm) {
    for (auto& z : e2) z /= b2;
    // Past u_max = |b1| / |h_be| both x and y fall as u grows.
    u_max = std::abs(b1) / be_norm;
  } else {
    e2 = orthogonal_unit(e1);
    b2 = 0.0;
    u_max = 1.0;
  }
  const double a1 = std::abs(b1);
  const double x_scale = bb_norm * bb_norm;

  // v_b = u e^{j arg b1} e1 + sqrt(1 - u^2) e2 gives
  // x = |h_bb|^2 u^2 and y = (u |b1| + sqrt(1 - u^2) b2)^2.
  auto f = [&](double u) {
    const double c = std::sqrt(std::max(0.0, 1.0 - u * u));
    const double y_amp = u * a1 + c * b2;
    return objective(terms, x_scale * u * u, y_amp * y_amp);
  };
  const double u = u_max > 0.0 ? maximize_weight(f, u_max) : 0.0;

  const cdouble phase1 = a1 > 0.0 ? b1 / a1 : cdouble{1.0, 0.0};
  const double c = std::sqrt(std::max(0.0, 1.0 - u * u));
  CVec v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = u * phase1 * e1[i] + c * e2[i];
  const double vn = std::sqrt(norm2(v));
  for (auto& z : v) z /= vn;
  return v;
}

CVec an_beamformer_oracle(const ChannelSet& channels, const Scenario& scenario,
                          std::span<const cdouble> v_a, std::uint64_t samples,
                          Rng& rng) {
  if (samples < 1) {
    throw std::invalid_argument("an_beamformer_oracle: samples must be >= 1");
  }
  const std::size_t n = channels.h_bb.size();
  const FixedTerms terms = fixed_terms(channels, scenario, v_a);
  std::normal_distribution<double> normal(0.0, 1.0);
  CVec v(n), best(n);
  double best_val = -std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < samples; ++s) {
    double nrm = 0.0;
    for (auto& z : v) {
      const double re = normal(rng);
      const double im = normal(rng);
      z = {re, im};
      nrm += re * re + im * im;
    }
    const double x = std::norm(simd::inner_product(channels.h_bb, v)) / nrm;
    const double y = std::norm(simd::inner_product(channels.h_be, v)) / nrm;
    const double val = objective(terms, x, y);
    if (val > best_val) {
      best_val = val;
      const double scale = 1.0 / std::sqrt(nrm);
      for (std::size_t i = 0; i < n; ++i) best[i] = v[i] * scale;
    }
  }
  return best;
}

BeamformerPair design_beamformers(const Scenario& scenario, const ChannelSet& channels,
                                  const PhaseCodebook* codebook, QeModel model,
                                  Rng& rng) {
  const std::vector<double> alpha =
      aligned_phases(scenario.alice_array(), scenario.angle_ab);
  BeamformerPair bf;
  bf.v_a_ideal = analog_beamformer(alpha);
  if (codebook == nullptr) {
    bf.v_a_quantized = bf.v_a_ideal;
  } else if (model == QeModel::kDeterministic) {
    bf.v_a_quantized = quantize_beamformer(alpha, *codebook).weights;
  } else {
    std::vector<double> perturbed(alpha);
    for (double& a : perturbed) a += sample_qe(*codebook, rng);
    bf.v_a_quantized = analog_beamformer(perturbed);
  }
  bf.v_b = max_sr_an_beamformer(channels, scenario, bf.v_a_ideal);
  return bf;
}

}  // namespace dmq
