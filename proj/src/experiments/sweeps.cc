#include "dmq/experiments/sweeps.h"

#include <fmt/format.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "dmq/metrics.h"
#include "dmq/parallel.h"
#include "dmq/simd/kernels.h"

namespace dmq::experiments {
namespace {

// First element of every seed path, so sweeps never share streams.
enum SeedTag : std::uint64_t {
  kTagBerProbe = 1,
  kTagBerBob = 2,
  kTagSinr = 3,
  kTagSr = 4,
  kTagReference = 5,
};

std::string num(double x) { return fmt::format("{:.10g}", x); }

std::string bits_label(const std::optional<PhaseCodebook>& cb) {
  return cb ? std::to_string(cb->bits()) : "NQE";
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

std::string header(const ExperimentConfig& cfg, std::string_view notes) {
  std::ostringstream os;
  os << "# dmq_sim " << DMQ_VERSION << "\n";
  os << "# sweep: " << sweep_name(cfg.kind) << "\n";
  os << "# master_seed: " << cfg.trial.master_seed << "\n";
  os << "# snr_definition: per-antenna receive SNR at Bob, g_ab*P_a/sigma^2; "
        "sigma^2 is shared by Bob and Eve\n";
  os << "# kernels: " << simd::level_name(simd::active_level()) << "\n";
  std::istringstream note_lines{std::string(notes)};
  for (std::string line; std::getline(note_lines, line);) os << "# " << line << "\n";
  os << "# config:\n";
  // The output path is left out so that the same run written to two places
  // produces identical bytes.
  ExperimentConfig resolved = cfg;
  resolved.output.clear();
  std::istringstream yaml(resolved.to_yaml());
  for (std::string line; std::getline(yaml, line);) os << "#   " << line << "\n";
  return os.str();
}

std::vector<std::optional<PhaseCodebook>> ber_models(const Grids& grids) {
  std::vector<std::optional<PhaseCodebook>> models{std::nullopt};
  for (int b : grids.bits) models.emplace_back(PhaseCodebook(b));
  return models;
}

// ---------------------------------------------------------------- BER sweep

SweepOutput run_ber(const ExperimentConfig& cfg, unsigned workers) {
  Scenario sc = cfg.scenario;
  sc.n_alice = cfg.grids.n_alice.front();
  sc = with_snr(sc, cfg.grids.snr_db.front());
  const auto models = ber_models(cfg.grids);
  std::vector<double> angles_deg;
  const auto n_angles = static_cast<std::size_t>(std::floor(180.0 / cfg.grids.angle_step_deg + 1e-9)) + 1;
  for (std::size_t i = 0; i < n_angles; ++i) angles_deg.push_back(i * cfg.grids.angle_step_deg);

  const std::size_t n_probe = models.size() * n_angles;
  const std::size_t n_points = n_probe + models.size();
  auto seed_of = [&](std::size_t i) {
    if (i < n_probe) {
      return derive_seed(cfg.trial.master_seed, {kTagBerProbe, i / n_angles, i % n_angles});
    }
    return derive_seed(cfg.trial.master_seed, {kTagBerBob, i - n_probe});
  };
  const auto estimates = parallel_map(n_points, workers, [&](std::size_t i) {
    const bool probe = i < n_probe;
    const std::size_t m = probe ? i / n_angles : i - n_probe;
    const double theta = probe ? deg_to_rad(angles_deg[i % n_angles]) : sc.angle_ab;
    const PhaseCodebook* cb = models[m] ? &*models[m] : nullptr;
    return estimate_ber(theta, sc, cb, probe ? ReceiverModel::kProbe : ReceiverModel::kBob,
                        cfg.trial, seed_of(i));
  });

  // Analytic overlay on one reference realization: with Gaussian AN and noise
  // the per-bit QPSK error rate is Q(sqrt(SINR)). QE via the nearest-codeword
  // quantizer.
  Rng ref_rng(derive_seed(cfg.trial.master_seed, {kTagReference}));
  const ChannelSet ref_ch = build_channels(sc, ref_rng);
  std::vector<BeamformerPair> ref_bf;
  for (const auto& m : models) {
    ref_bf.push_back(design_beamformers(sc, ref_ch, m ? &*m : nullptr,
                                        QeModel::kDeterministic, ref_rng));
  }
  auto analytic = [&](std::size_t m, bool probe, double theta) {
    const BeamformerPair& bf = ref_bf[m];
    double signal, an;
    if (probe) {
      const CVec h = steering_vector(sc.alice_array(), theta);
      signal = ref_ch.g_ae * sc.power_alice * std::norm(effective_array_gain(h, bf.v_a_quantized));
      an = ref_ch.g_be * sc.power_bob * std::norm(effective_array_gain(ref_ch.h_be, bf.v_b));
    } else {
      signal = ref_ch.g_ab * sc.power_alice *
               std::norm(effective_array_gain(ref_ch.h_ab, bf.v_a_quantized));
      an = sc.self_interference * sc.power_bob *
           std::norm(effective_array_gain(ref_ch.h_bb, bf.v_b));
    }
    return q_function(std::sqrt(signal / (an + sc.noise_power)));
  };

  SweepOutput out;
  std::ostringstream csv, side;
  const std::string notes =
      "receiver_model probe: Alice via h(angle), AN via Bob's nominal channel to Eve\n"
      "receiver_model bob: Bob's receiver at angle_ab including self-interference\n"
      "ber: mean over trials of per-trial bit error fraction; stderr over trials";
  csv << header(cfg, notes) << "angle_deg,receiver_model,L_or_NQE,ber,stderr\n";
  side << header(cfg, "ber_analytic: Q(sqrt(SINR)) on one reference channel realization,"
                      " nearest-codeword quantizer")
       << "angle_deg,receiver_model,L_or_NQE,ber_analytic,stderr\n";
  for (std::size_t i = 0; i < n_points; ++i) {
    const bool probe = i < n_probe;
    const std::size_t m = probe ? i / n_angles : i - n_probe;
    const double angle_deg = probe ? angles_deg[i % n_angles] : rad_to_deg(sc.angle_ab);
    const Estimate& e = estimates[i];
    const std::string model = probe ? "probe" : "bob";
    csv << num(angle_deg) << ',' << model << ',' << bits_label(models[m]) << ','
        << num(e.value) << ',' << num(e.std_error) << '\n';
    side << num(angle_deg) << ',' << model << ',' << bits_label(models[m]) << ','
         << num(analytic(m, probe, deg_to_rad(angle_deg))) << ",0\n";
    out.result.rows.push_back({{{"angle_deg", angle_deg},
                                {"bits", models[m] ? double(models[m]->bits()) : 0.0}},
                               "ber_" + model,
                               e.value,
                               e.std_error,
                               e.trials,
                               seed_of(i)});
  }
  out.csv = csv.str();
  out.closed_form_csv = side.str();
  return out;
}

// ---------------------------------------------------------------- SINR sweeps

SweepOutput run_sinr(const ExperimentConfig& cfg, unsigned workers) {
  const auto& bits = cfg.grids.bits;
  const auto& n_alice = cfg.grids.n_alice;
  const bool by_l = cfg.kind == SweepKind::kSinrVsL;
  // Rows are grouped by curve: one curve per N_a (vs L) or per L (vs N_a).
  const std::size_t outer = by_l ? n_alice.size() : bits.size();
  const std::size_t inner = by_l ? bits.size() : n_alice.size();
  auto indices = [&](std::size_t i) {
    const std::size_t o = i / inner, k = i % inner;
    return by_l ? std::pair{k, o} : std::pair{o, k};  // (bits idx, n_alice idx)
  };
  auto seed_of = [&](std::size_t i) {
    const auto [l, na] = indices(i);
    return derive_seed(cfg.trial.master_seed, {kTagSinr, l, na});
  };
  SinrLossOptions opts;
  opts.model = cfg.trial.qe_model;
  opts.spacing_ratio = cfg.scenario.spacing_ratio;
  const auto estimates = parallel_map(outer * inner, workers, [&](std::size_t i) {
    const auto [l, na] = indices(i);
    Rng rng(seed_of(i));
    return monte_carlo_sinr_loss(n_alice[na], PhaseCodebook(bits[l]), cfg.trial.trials, rng,
                                 opts);
  });

  SweepOutput out;
  std::ostringstream csv, side;
  const std::string notes =
      std::string("loss_db_simulated: -10log10(mean |sum exp(j dAlpha)|^2 / N_a^2), qe_model ") +
      (cfg.trial.qe_model == QeModel::kUniform ? "uniform"
                                               : "deterministic (theta_d uniform per trial)") +
      "\nstderr: delta-method standard error of loss_db_simulated";
  csv << header(cfg, notes) << "L,N_a,loss_db_simulated,loss_db_closed_form,stderr\n";
  side << header(cfg, "loss_db_closed_form: 10log10(1/sinc^2(pi/2^L))")
       << "L,loss_db_closed_form,stderr\n";
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const auto [l, na] = indices(i);
    const PhaseCodebook cb(bits[l]);
    const double closed = sinr_loss_closed_form(cb);
    const Estimate& e = estimates[i];
    csv << bits[l] << ',' << n_alice[na] << ',' << num(e.value) << ',' << num(closed) << ','
        << num(e.std_error) << '\n';
    out.result.rows.push_back({{{"L", double(bits[l])}, {"N_a", double(n_alice[na])}},
                               "sinr_loss_db",
                               e.value,
                               e.std_error,
                               e.trials,
                               seed_of(i)});
  }
  for (int b : bits) {
    side << b << ',' << num(sinr_loss_closed_form(PhaseCodebook(b))) << ",0\n";
  }
  out.csv = csv.str();
  out.closed_form_csv = side.str();
  return out;
}

// ---------------------------------------------------------------- SR sweeps

struct SrPoint {
  std::vector<Estimate> nqe, qe, loss;  // indexed by bits
};

SweepOutput run_sr(const ExperimentConfig& cfg, unsigned workers) {
  const auto& bits = cfg.grids.bits;
  const auto& n_alice = cfg.grids.n_alice;
  const auto& snr = cfg.grids.snr_db;
  const std::size_t n_points = n_alice.size() * snr.size();
  auto scenario_for = [&](std::size_t i) {
    Scenario sc = cfg.scenario;
    sc.n_alice = n_alice[i / snr.size()];
    return with_snr(sc, snr[i % snr.size()]);
  };
  auto seed_of = [&](std::size_t i) {
    return derive_seed(cfg.trial.master_seed, {kTagSr, i / snr.size(), i % snr.size()});
  };

  const auto points = parallel_map(n_points, workers, [&](std::size_t i) {
    const Scenario sc = scenario_for(i);
    const std::uint64_t point_seed = seed_of(i);
    const std::vector<double> alpha = aligned_phases(sc.alice_array(), sc.angle_ab);
    const CVec v_a = analog_beamformer(alpha);
    std::vector<PhaseCodebook> codebooks;
    for (int b : bits) codebooks.emplace_back(b);
    std::vector<CVec> fixed_quantized;
    if (cfg.trial.qe_model == QeModel::kDeterministic) {
      for (const auto& cb : codebooks) {
        fixed_quantized.push_back(quantize_beamformer(alpha, cb).weights);
      }
    }

    const std::uint64_t trials = cfg.trial.trials;
    std::vector<std::vector<double>> nqe(bits.size(), std::vector<double>(trials));
    auto qe = nqe, loss = nqe;
    std::vector<double> perturbed(alpha.size());
    for (std::uint64_t t = 0; t < trials; ++t) {
      Rng rng(derive_seed(point_seed, {t, 0}));
      const ChannelSet ch = build_channels(sc, rng);
      BeamformerPair bf;
      bf.v_a_ideal = v_a;
      bf.v_b = max_sr_an_beamformer(ch, sc, v_a);
      const double sr_nqe = secrecy_rate(ch, sc, bf, QeMode::kNqe, codebooks.front());
      for (std::size_t l = 0; l < bits.size(); ++l) {
        if (cfg.trial.qe_model == QeModel::kDeterministic) {
          bf.v_a_quantized = fixed_quantized[l];
        } else {
          Rng qe_rng(derive_seed(point_seed, {t, l + 1}));
          for (std::size_t n = 0; n < alpha.size(); ++n) {
            perturbed[n] = alpha[n] + sample_qe(codebooks[l], qe_rng);
          }
          bf.v_a_quantized = analog_beamformer(perturbed);
        }
        const double sr_qe =
            secrecy_rate(ch, sc, bf, QeMode::kQe, codebooks[l], cfg.qe_flavor);
        nqe[l][t] = sr_nqe;
        qe[l][t] = sr_qe;
        loss[l][t] = sr_nqe - sr_qe;
      }
    }
    auto summarize = [](const std::vector<double>& v) {
      Estimate e;
      e.trials = v.size();
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= static_cast<double>(v.size());
      e.value = mean;
      if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        e.std_error = std::sqrt(ss / static_cast<double>(v.size() - 1) /
                                static_cast<double>(v.size()));
      }
      return e;
    };
    SrPoint p;
    for (std::size_t l = 0; l < bits.size(); ++l) {
      p.nqe.push_back(summarize(nqe[l]));
      p.qe.push_back(summarize(qe[l]));
      p.loss.push_back(summarize(loss[l]));
    }
    return p;
  });

  SweepOutput out;
  std::ostringstream csv, side;
  const std::string notes =
      std::string("sr_qe: Bob's gain ") +
      (cfg.qe_flavor == QeFlavor::kClosedForm ? "N_a*sinc^2(pi/2^L) (closed_form)"
                                              : "|h_ab^H v_a(alpha-hat)|^2 (sampled)") +
      ", Eve's gain from the realized quantized beamformer\n"
      "sr_nqe, sr_qe: means over trials (fresh h_bb and QE per trial); v_b is Max-SR for "
      "the ideal v_a\nstderr: standard error of sr_nqe - sr_qe";
  csv << header(cfg, notes) << "L,N_a,snr_db,sr_nqe,sr_qe,stderr\n";
  side << header(cfg, "closed-form secrecy rates on one reference h_bb realization; Bob's QE "
                      "gain N_a*sinc^2(pi/2^L), Eve's via the nearest-codeword quantizer")
       << "L,N_a,snr_db,sr_nqe,sr_qe_closed_form,stderr\n";
  for (std::size_t i = 0; i < n_points; ++i) {
    const Scenario sc = scenario_for(i);
    const double snr_db = snr[i % snr.size()];
    Rng ref_rng(derive_seed(cfg.trial.master_seed, {kTagReference, i / snr.size(), i % snr.size()}));
    const ChannelSet ref_ch = build_channels(sc, ref_rng);
    const std::vector<double> alpha = aligned_phases(sc.alice_array(), sc.angle_ab);
    for (std::size_t l = 0; l < bits.size(); ++l) {
      const Estimate& nqe = points[i].nqe[l];
      const Estimate& qe = points[i].qe[l];
      const Estimate& loss = points[i].loss[l];
      csv << bits[l] << ',' << sc.n_alice << ',' << num(snr_db) << ',' << num(nqe.value) << ','
          << num(qe.value) << ',' << num(loss.std_error) << '\n';
      const std::vector<std::pair<std::string, double>> axes{
          {"L", double(bits[l])}, {"N_a", double(sc.n_alice)}, {"snr_db", snr_db}};
      out.result.rows.push_back({axes, "sr_nqe", nqe.value, nqe.std_error, nqe.trials, seed_of(i)});
      out.result.rows.push_back({axes, "sr_qe", qe.value, qe.std_error, qe.trials, seed_of(i)});
      out.result.rows.push_back(
          {axes, "sr_loss", loss.value, loss.std_error, loss.trials, seed_of(i)});

      const PhaseCodebook cb(bits[l]);
      BeamformerPair bf;
      bf.v_a_ideal = analog_beamformer(alpha);
      bf.v_a_quantized = quantize_beamformer(alpha, cb).weights;
      bf.v_b = max_sr_an_beamformer(ref_ch, sc, bf.v_a_ideal);
      side << bits[l] << ',' << sc.n_alice << ',' << num(snr_db) << ','
           << num(secrecy_rate(ref_ch, sc, bf, QeMode::kNqe, cb)) << ','
           << num(secrecy_rate(ref_ch, sc, bf, QeMode::kQe, cb, QeFlavor::kClosedForm))
           << ",0\n";
    }
  }
  out.csv = csv.str();
  out.closed_form_csv = side.str();
  return out;
}

}  // namespace

SweepOutput run_sweep(const ExperimentConfig& config, unsigned workers) {
  config.scenario.validate();
  config.trial.validate();
  switch (config.kind) {
    case SweepKind::kBerSweep:
      return run_ber(config, workers);
    case SweepKind::kSinrVsL:
    case SweepKind::kSinrVsNa:
      return run_sinr(config, workers);
    case SweepKind::kSrVsL:
    case SweepKind::kSrVsLNa:
      return run_sr(config, workers);
  }
  return {};
}

std::string sidecar_path(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  const std::string stem = p.stem().string();
  const std::string ext = p.has_extension() ? p.extension().string() : ".csv";
  return (p.parent_path() / (stem + ".closed_form" + ext)).string();
}

void write_outputs(const SweepOutput& output, const std::string& csv_path) {
  auto write = [](const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << text;
    f.flush();
    if (!f) throw IoError("write failed for '" + path + "'");
  };
  write(csv_path, output.csv);
  write(sidecar_path(csv_path), output.closed_form_csv);
}

}  // namespace dmq::experiments
