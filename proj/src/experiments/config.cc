#include "dmq/experiments/config.h"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace dmq::experiments {
namespace {

constexpr SweepKind kAllKinds[] = {SweepKind::kBerSweep, SweepKind::kSinrVsL,
                                   SweepKind::kSinrVsNa, SweepKind::kSrVsL,
                                   SweepKind::kSrVsLNa};

int line_of(const YAML::Node& node) {
  const YAML::Mark mark = node.Mark();
  return mark.line >= 0 ? mark.line + 1 : -1;
}

[[noreturn]] void fail(const std::string& key, const std::string& msg,
                       const YAML::Node& node) {
  throw ConfigError(key, msg, line_of(node));
}

template <typename T>
T scalar_as(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) fail(key, "expected a scalar value", node);
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(key, "cannot convert '" + node.Scalar() + "'", node);
  }
}

template <typename T>
std::vector<T> list_as(const YAML::Node& node, const std::string& key) {
  if (!node.IsSequence()) fail(key, "expected a list", node);
  std::vector<T> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(scalar_as<T>(node[i], key + "[" + std::to_string(i) + "]"));
  }
  if (out.empty()) fail(key, "list must not be empty", node);
  return out;
}

// Visits the keys of a mapping section, rejecting anything not in `handlers`.
void visit_section(const YAML::Node& root, const std::string& section,
                   const std::map<std::string, std::function<void(const YAML::Node&,
                                                                   const std::string&)>>&
                       handlers) {
  const YAML::Node node = root[section];
  if (!node || node.IsNull()) return;
  if (!node.IsMap()) fail(section, "expected a mapping", node);
  for (const auto& kv : node) {
    const std::string name = kv.first.as<std::string>();
    const std::string key = section + "." + name;
    const auto it = handlers.find(name);
    if (it == handlers.end()) fail(key, "unknown key", kv.first);
    it->second(kv.second, key);
  }
}

void check(bool ok, const std::string& key, const std::string& msg,
           const YAML::Node& node) {
  if (!ok) fail(key, msg, node);
}

struct Defaults {
  std::vector<int> bits;
  std::vector<int> n_alice;
  std::vector<double> snr_db;
  std::uint64_t trials;
};

Defaults defaults_for(SweepKind kind, int n_alice) {
  switch (kind) {
    case SweepKind::kBerSweep:
      return {{1, 2, 3}, {n_alice}, {10.0}, 20};
    case SweepKind::kSinrVsL:
      return {{1, 2, 3, 4, 5, 6, 7, 8}, {4, 16, 64, 256}, {15.0}, 100000};
    case SweepKind::kSinrVsNa:
      return {{3, 4, 5}, {2, 3, 4, 8, 16, 32, 64, 128, 256}, {15.0}, 100000};
    case SweepKind::kSrVsL:
      return {{1, 2, 3, 4, 5, 6, 7, 8}, {n_alice}, {0.0, 15.0, 30.0}, 10000};
    case SweepKind::kSrVsLNa:
      return {{1, 2, 3, 4, 5, 6, 7, 8}, {4, 16, 64, 256}, {0.0, 15.0, 30.0}, 10000};
  }
  return {};
}

}  // namespace

ConfigError::ConfigError(std::string key, const std::string& message, int line)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         key + ": " + message),
      key_(std::move(key)),
      line_(line) {}

std::string_view sweep_name(SweepKind kind) {
  switch (kind) {
    case SweepKind::kBerSweep: return "ber_sweep";
    case SweepKind::kSinrVsL: return "sinr_vs_l";
    case SweepKind::kSinrVsNa: return "sinr_vs_na";
    case SweepKind::kSrVsL: return "sr_vs_l";
    case SweepKind::kSrVsLNa: return "sr_vs_l_na";
  }
  return "";
}

std::string_view sweep_command(SweepKind kind) {
  switch (kind) {
    case SweepKind::kBerSweep: return "ber-sweep";
    case SweepKind::kSinrVsL: return "sinr-vs-l";
    case SweepKind::kSinrVsNa: return "sinr-vs-na";
    case SweepKind::kSrVsL: return "sr-vs-l";
    case SweepKind::kSrVsLNa: return "sr-vs-l-na";
  }
  return "";
}

std::optional<SweepKind> parse_sweep_name(std::string_view name) {
  for (SweepKind k : kAllKinds) {
    if (name == sweep_name(k) || name == sweep_command(k)) return k;
  }
  return std::nullopt;
}

ExperimentConfig validate_config(std::string_view text, std::optional<SweepKind> kind) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError("<document>", e.msg, e.mark.line >= 0 ? e.mark.line + 1 : -1);
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  if (!root.IsMap()) fail("<document>", "top level must be a mapping", root);

  static const std::set<std::string> kSections{"scenario", "sweep", "grids", "trial",
                                               "output"};
  for (const auto& kv : root) {
    const std::string name = kv.first.as<std::string>();
    if (!kSections.count(name)) fail(name, "unknown key", kv.first);
  }

  ExperimentConfig cfg;
  Scenario& sc = cfg.scenario;
  std::optional<double> noise_power;
  std::optional<std::vector<int>> bits, n_alice_grid;
  std::optional<std::vector<double>> snr_grid;
  std::optional<std::uint64_t> trials;
  std::optional<SweepKind> doc_kind;
  YAML::Node noise_node, snr_node, figure_node;

  auto positive = [](double& field) {
    return [&field](const YAML::Node& n, const std::string& key) {
      field = scalar_as<double>(n, key);
      check(std::isfinite(field) && field > 0.0, key, "must be > 0", n);
    };
  };
  auto angle = [](double& field) {
    return [&field](const YAML::Node& n, const std::string& key) {
      const double deg = scalar_as<double>(n, key);
      check(deg >= 0.0 && deg < 360.0, key, "must be in [0, 360) degrees", n);
      field = deg_to_rad(deg);
    };
  };
  auto dbm = [](double& field) {
    return [&field](const YAML::Node& n, const std::string& key) {
      const double v = scalar_as<double>(n, key);
      check(std::isfinite(v), key, "must be finite", n);
      field = dbm_to_watts(v);
    };
  };
  auto count = [](int& field, int lo) {
    return [&field, lo](const YAML::Node& n, const std::string& key) {
      field = scalar_as<int>(n, key);
      check(field >= lo, key, "must be >= " + std::to_string(lo), n);
    };
  };

  visit_section(root, "scenario",
                {{"power_alice", dbm(sc.power_alice)},
                 {"power_bob", dbm(sc.power_bob)},
                 {"dist_ab", positive(sc.dist_ab)},
                 {"dist_ae", positive(sc.dist_ae)},
                 {"dist_be", positive(sc.dist_be)},
                 {"angle_ab", angle(sc.angle_ab)},
                 {"angle_ae", angle(sc.angle_ae)},
                 {"angle_be", angle(sc.angle_be)},
                 {"path_loss_exp",
                  [&](const YAML::Node& n, const std::string& key) {
                    sc.path_loss_exp = scalar_as<double>(n, key);
                    check(std::isfinite(sc.path_loss_exp) && sc.path_loss_exp >= 0.0, key,
                          "must be >= 0", n);
                  }},
                 {"ref_attenuation", positive(sc.ref_attenuation)},
                 {"self_interference",
                  [&](const YAML::Node& n, const std::string& key) {
                    sc.self_interference = scalar_as<double>(n, key);
                    check(sc.self_interference >= 0.0 && sc.self_interference <= 1.0, key,
                          "must be in [0, 1]", n);
                  }},
                 {"noise_power",
                  [&](const YAML::Node& n, const std::string& key) {
                    noise_power = scalar_as<double>(n, key);
                    check(std::isfinite(*noise_power) && *noise_power > 0.0, key,
                          "must be > 0", n);
                    noise_node = n;
                  }},
                 {"n_alice", count(sc.n_alice, 1)},
                 {"n_bob_tx", count(sc.n_bob_tx, 2)},
                 {"n_bob_rx",
                  [&](const YAML::Node& n, const std::string& key) {
                    sc.n_bob_rx = scalar_as<int>(n, key);
                    check(sc.n_bob_rx == 1, key, "Bob has a single receive antenna", n);
                  }},
                 {"spacing_ratio", positive(sc.spacing_ratio)}});

  visit_section(root, "sweep",
                {{"figure",
                  [&](const YAML::Node& n, const std::string& key) {
                    const auto name = scalar_as<std::string>(n, key);
                    doc_kind = parse_sweep_name(name);
                    check(doc_kind.has_value(), key,
                          "must be one of ber_sweep, sinr_vs_l, sinr_vs_na, sr_vs_l, "
                          "sr_vs_l_na",
                          n);
                    figure_node = n;
                  }},
                 {"qe_flavor", [&](const YAML::Node& n, const std::string& key) {
                    const auto name = scalar_as<std::string>(n, key);
                    if (name == "closed_form") {
                      cfg.qe_flavor = QeFlavor::kClosedForm;
                    } else if (name == "sampled") {
                      cfg.qe_flavor = QeFlavor::kSampled;
                    } else {
                      fail(key, "must be closed_form or sampled", n);
                    }
                  }}});

  visit_section(
      root, "grids",
      {{"bits",
        [&](const YAML::Node& n, const std::string& key) {
          bits = list_as<int>(n, key);
          for (int b : *bits) {
            check(b >= PhaseCodebook::kMinBits && b <= PhaseCodebook::kMaxBits, key,
                  "entries must be in [1, 30]", n);
          }
        }},
       {"n_alice",
        [&](const YAML::Node& n, const std::string& key) {
          n_alice_grid = list_as<int>(n, key);
          for (int v : *n_alice_grid) check(v >= 1, key, "entries must be >= 1", n);
        }},
       {"snr_db",
        [&](const YAML::Node& n, const std::string& key) {
          snr_grid = list_as<double>(n, key);
          for (double v : *snr_grid) check(std::isfinite(v), key, "entries must be finite", n);
          snr_node = n;
        }},
       {"angle_step", [&](const YAML::Node& n, const std::string& key) {
          cfg.grids.angle_step_deg = scalar_as<double>(n, key);
          check(cfg.grids.angle_step_deg > 0.0 && cfg.grids.angle_step_deg <= 180.0, key,
                "must be in (0, 180] degrees", n);
        }}});

  visit_section(root, "trial",
                {{"symbols_per_point",
                  [&](const YAML::Node& n, const std::string& key) {
                    cfg.trial.symbols_per_point = scalar_as<std::uint64_t>(n, key);
                    check(cfg.trial.symbols_per_point >= 1, key, "must be >= 1", n);
                  }},
                 {"trials",
                  [&](const YAML::Node& n, const std::string& key) {
                    trials = scalar_as<std::uint64_t>(n, key);
                    check(*trials >= 1, key, "must be >= 1", n);
                  }},
                 {"master_seed",
                  [&](const YAML::Node& n, const std::string& key) {
                    cfg.trial.master_seed = scalar_as<std::uint64_t>(n, key);
                  }},
                 {"qe_model", [&](const YAML::Node& n, const std::string& key) {
                    const auto name = scalar_as<std::string>(n, key);
                    if (name == "uniform") {
                      cfg.trial.qe_model = QeModel::kUniform;
                    } else if (name == "deterministic") {
                      cfg.trial.qe_model = QeModel::kDeterministic;
                    } else {
                      fail(key, "must be uniform or deterministic", n);
                    }
                  }}});

  if (const YAML::Node out = root["output"]; out && !out.IsNull()) {
    cfg.output = scalar_as<std::string>(out, "output");
  }

  if (kind && doc_kind && *kind != *doc_kind) {
    fail("sweep.figure",
         "names " + std::string(sweep_name(*doc_kind)) + " but the command runs " +
             std::string(sweep_name(*kind)),
         figure_node);
  }
  cfg.kind = kind ? *kind : doc_kind.value_or(SweepKind::kSinrVsL);

  const Defaults d = defaults_for(cfg.kind, sc.n_alice);
  cfg.grids.bits = bits.value_or(d.bits);
  cfg.grids.n_alice = n_alice_grid.value_or(d.n_alice);
  cfg.trial.trials = trials.value_or(d.trials);
  if (noise_power) {
    if (snr_grid) fail("grids.snr_db", "conflicts with scenario.noise_power", snr_node);
    sc.noise_power = *noise_power;
    const double g_ab = path_gain(sc.dist_ab, sc.path_loss_exp, sc.ref_attenuation);
    cfg.grids.snr_db = {linear_to_db(g_ab * sc.power_alice / *noise_power)};
  } else {
    cfg.grids.snr_db = snr_grid.value_or(d.snr_db);
    sc.noise_power = noise_from_snr(cfg.grids.snr_db.front(), sc);
  }
  if (cfg.kind == SweepKind::kBerSweep) {
    if (cfg.grids.n_alice.size() != 1) {
      fail("grids.n_alice", "ber_sweep takes a single array size", YAML::Node());
    }
    if (cfg.grids.snr_db.size() != 1) {
      fail("grids.snr_db", "ber_sweep takes a single SNR", snr_node);
    }
    sc.n_alice = cfg.grids.n_alice.front();
  }
  return cfg;
}

std::string ExperimentConfig::to_yaml() const {
  YAML::Emitter out;
  out.SetDoublePrecision(12);
  out << YAML::BeginMap;
  out << YAML::Key << "scenario" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "power_alice" << YAML::Value << 10.0 * std::log10(scenario.power_alice) + 30.0;
  out << YAML::Key << "power_bob" << YAML::Value << 10.0 * std::log10(scenario.power_bob) + 30.0;
  out << YAML::Key << "dist_ab" << YAML::Value << scenario.dist_ab;
  out << YAML::Key << "dist_ae" << YAML::Value << scenario.dist_ae;
  out << YAML::Key << "dist_be" << YAML::Value << scenario.dist_be;
  out << YAML::Key << "angle_ab" << YAML::Value << rad_to_deg(scenario.angle_ab);
  out << YAML::Key << "angle_ae" << YAML::Value << rad_to_deg(scenario.angle_ae);
  out << YAML::Key << "angle_be" << YAML::Value << rad_to_deg(scenario.angle_be);
  out << YAML::Key << "path_loss_exp" << YAML::Value << scenario.path_loss_exp;
  out << YAML::Key << "ref_attenuation" << YAML::Value << scenario.ref_attenuation;
  out << YAML::Key << "self_interference" << YAML::Value << scenario.self_interference;
  out << YAML::Key << "n_alice" << YAML::Value << scenario.n_alice;
  out << YAML::Key << "n_bob_tx" << YAML::Value << scenario.n_bob_tx;
  out << YAML::Key << "n_bob_rx" << YAML::Value << scenario.n_bob_rx;
  out << YAML::Key << "spacing_ratio" << YAML::Value << scenario.spacing_ratio;
  out << YAML::EndMap;
  out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "figure" << YAML::Value << std::string(sweep_name(kind));
  out << YAML::Key << "qe_flavor" << YAML::Value
      << (qe_flavor == QeFlavor::kClosedForm ? "closed_form" : "sampled");
  out << YAML::EndMap;
  out << YAML::Key << "grids" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "bits" << YAML::Value << YAML::Flow << grids.bits;
  out << YAML::Key << "n_alice" << YAML::Value << YAML::Flow << grids.n_alice;
  out << YAML::Key << "snr_db" << YAML::Value << YAML::Flow << grids.snr_db;
  out << YAML::Key << "angle_step" << YAML::Value << grids.angle_step_deg;
  out << YAML::EndMap;
  out << YAML::Key << "trial" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "symbols_per_point" << YAML::Value << trial.symbols_per_point;
  out << YAML::Key << "trials" << YAML::Value << trial.trials;
  out << YAML::Key << "master_seed" << YAML::Value << trial.master_seed;
  out << YAML::Key << "qe_model" << YAML::Value
      << (trial.qe_model == QeModel::kUniform ? "uniform" : "deterministic");
  out << YAML::EndMap;
  if (!output.empty()) out << YAML::Key << "output" << YAML::Value << output;
  out << YAML::EndMap;
  return out.c_str();
}

}  // namespace dmq::experiments
