#include "commands.hpp"

#include "hkc/oracle.hpp"
#include "hkc/version.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>

namespace hkc::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

CommandResult finish(const RunConfig& cfg, std::vector<OutputFile> outputs,
                     Clock::time_point start, nlohmann::json extra = {}) {
  RunManifest m;
  m.command = cfg.command;
  m.parameters = cfg.to_json();
  if (extra.is_object()) m.parameters.update(extra);
  m.duration_seconds = seconds_since(start);
  m.outputs = outputs;
  CommandResult r;
  r.outputs = std::move(outputs);
  r.manifest = write_manifest(cfg.out, m);
  return r;
}

std::vector<std::string> numbered(const std::string& prefix, int count) {
  std::vector<std::string> names;
  for (int i = 1; i <= count; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

struct ModeRow {
  std::string label;
  std::string kind;
  int index;
  double energy;
  NambuState state;
};

const std::map<std::string, std::string>& setting_help() {
  static const std::map<std::string, std::string> help = {
      {"layout", "nn, lr, hybrid-nn-lr or hybrid-lr-nn"},
      {"L", "number of sites (default 100; verify: 8)"},
      {"l1", "sites in the left segment (default L/2)"},
      {"j", "hopping J"},
      {"delta", "pairing Δ"},
      {"mu", "chemical potential, or a start:stop:count grid for sweep"},
      {"alpha", "long-range exponent (default 0.5; quench: 0.7)"},
      {"jh", "interface coupling (default 0; quench: 0.5)"},
      {"mu-grid", "chemical potential grid start:stop:count"},
      {"tmax", "last time sample"},
      {"dt", "time step"},
      {"theta", "particle-hole rotation angle"},
      {"tol-zero", "|E| below which a mode counts as zero"},
      {"tol", "oracle tolerance for verify"},
      {"phase", "zero-mode superposition: real or imaginary"},
      {"out", "output directory (default $HKC_OUTPUT_DIR, else .)"},
      {"workers", "worker threads, 0 = available parallelism"},
  };
  return help;
}

}  // namespace

CommandResult cmd_sweep(const RunConfig& cfg) {
  const auto start = Clock::now();
  const ChainSpec spec = cfg.chain();
  validate_spec(spec);
  const auto grid = parse_grid(cfg.mu_grid);
  const auto rows = spectrum_sweep(spec, grid, cfg.workers);

  std::vector<std::string> header{"mu"};
  for (auto& h : numbered("e_", 2 * spec.length)) header.push_back(h);
  CsvWriter csv(header);
  for (const auto& row : rows) {
    csv.cell(row.mu);
    for (double e : row.energies) csv.cell(e);
    csv.end_row();
  }
  return finish(cfg, {write_output(cfg.out, "sweep.csv", csv.str())}, start);
}

CommandResult cmd_modes(const RunConfig& cfg) {
  const auto start = Clock::now();
  const ChainSpec spec = cfg.chain();
  validate_spec(spec);
  const EigenSystem eig = eigensystem(build_bdg(spec));
  const ModeSet modes = classify_modes(eig, cfg.tol_zero);
  if (modes.zero_modes.empty()) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "no zero modes: min |E| = %.6e is not below tol_zero = %.6e",
                  min_abs_energy(eig.energies), cfg.tol_zero);
    throw NoZeroModes(buf);
  }

  std::vector<ModeRow> rows;
  for (int k : modes.zero_modes) {
    rows.push_back({"mode_" + std::to_string(k), "zero", k, eig.energies[k], eig.state(k)});
  }
  for (int k : modes.subgap_modes) {
    rows.push_back({"mode_" + std::to_string(k), "subgap", k, eig.energies[k], eig.state(k)});
  }
  if (const auto pair = lowest_zero_pair(eig, cfg.tol_zero)) {
    const MajoranaPair mp = majorana_combinations(eig, *pair, cfg.tol_zero);
    rows.push_back({"majorana_left", "majorana", pair->first, 0.0, mp.left});
    rows.push_back({"majorana_right", "majorana", pair->second, 0.0, mp.right});
  }

  const int n = spec.length;
  CsvWriter table({"label", "kind", "index", "energy", "re_R", "im_R", "abs_R"});
  std::vector<std::string> site_header{"site"}, majorana_header{"majorana"};
  std::vector<SiteDistribution> dists;
  for (const auto& r : rows) {
    const Polarization p = majorana_polarization(r.state);
    table.cell(r.label).cell(r.kind).cell(static_cast<long long>(r.index)).cell(r.energy);
    table.cell(p.total.real()).cell(p.total.imag()).cell(std::abs(p.total));
    table.end_row();
    site_header.push_back(r.label);
    majorana_header.push_back(r.label);
    dists.push_back(site_probability(r.state));
  }
  CsvWriter sites(site_header);
  for (int j = 0; j < n; ++j) {
    sites.cell(static_cast<long long>(j + 1));
    for (const auto& d : dists) sites.cell(d.per_site[j]);
    sites.end_row();
  }
  CsvWriter majoranas(majorana_header);
  for (int j = 0; j < 2 * n; ++j) {
    majoranas.cell(static_cast<long long>(j + 1));
    for (const auto& d : dists) majoranas.cell(d.per_majorana[j]);
    majoranas.end_row();
  }

  std::vector<OutputFile> outputs;
  outputs.push_back(write_output(cfg.out, "modes.csv", table.str()));
  outputs.push_back(write_output(cfg.out, "site_profiles.csv", sites.str()));
  outputs.push_back(write_output(cfg.out, "majorana_profiles.csv", majoranas.str()));
  return finish(cfg, std::move(outputs), start);
}

CommandResult cmd_quench(const RunConfig& cfg) {
  const auto start = Clock::now();
  const TimeGrid grid = TimeGrid::make(cfg.tmax, cfg.dt);
  const QuenchSetup setup = prepare_quench(cfg.quench());
  const QuenchTrace trace = run_quench(setup, grid, cfg.theta, cfg.workers);

  CsvWriter series({"t", "F", "ReR", "ImR", "IPR"});
  for (std::size_t r = 0; r < trace.times.size(); ++r) {
    series.cell(trace.times[r]).cell(trace.fidelity[r]);
    series.cell(trace.rotation[r].real()).cell(trace.rotation[r].imag()).cell(trace.ipr[r]);
    series.end_row();
  }
  CsvWriter heatmap(numbered("site_", trace.field.sites));
  for (Eigen::Index r = 0; r < trace.field.probability.rows(); ++r) {
    for (Eigen::Index j = 0; j < trace.field.probability.cols(); ++j) {
      heatmap.cell(trace.field.probability(r, j));
    }
    heatmap.end_row();
  }

  std::vector<OutputFile> outputs;
  outputs.push_back(write_output(cfg.out, "quench_series.csv", series.str()));
  outputs.push_back(write_output(cfg.out, "quench_heatmap.csv", heatmap.str()));
  return finish(cfg, std::move(outputs), start, {{"protocol",
      {{"initial", to_string(setup.initial_spec.layout)},
       {"evolution", to_string(setup.evolution_spec.layout)},
       {"target", to_string(setup.target_spec.layout)}}}});
}

std::vector<ChainSpec> verify_suite() {
  std::vector<ChainSpec> specs;
  for (int length : {6, 8}) {
    ChainSpec s;
    s.length = length;
    s.split = length / 2;
    s.chemical_potential = 0.3;
    s.layout = Layout::PureNN;
    specs.push_back(s);
    s.layout = Layout::PureLR;
    s.lr_exponent = 0.5;
    specs.push_back(s);
    s.layout = Layout::HybridNNLR;
    for (double jh : {0.0, 0.7}) {
      s.interface_coupling = jh;
      specs.push_back(s);
    }
  }
  return specs;
}

CommandResult cmd_verify(const RunConfig& cfg) {
  const auto start = Clock::now();
  std::vector<ChainSpec> specs;
  if (cfg.suite) {
    specs = verify_suite();
  } else {
    specs.push_back(cfg.chain());
  }
  for (const auto& s : specs) {
    validate_spec(s);
    if (s.length > kMaxVerifySites) {
      throw TooLarge("L: verify supports at most " + std::to_string(kMaxVerifySites) + " sites");
    }
  }

  nlohmann::json report;
  report["tolerance"] = cfg.tol;
  report["runs"] = nlohmann::json::array();
  bool all = true;
  for (const auto& s : specs) {
    const OracleReport r = compare_bdg_with_fock(s, cfg.tol);
    all = all && r.passed;
    report["runs"].push_back({{"layout", to_string(s.layout)},
                              {"L", s.length},
                              {"l1", s.split},
                              {"mu", s.chemical_potential},
                              {"alpha", s.lr_exponent},
                              {"jh", s.interface_coupling},
                              {"levels", r.levels},
                              {"max_deviation", r.max_deviation},
                              {"worst_level", r.worst_level},
                              {"passed", r.passed}});
  }
  report["passed"] = all;
  CommandResult res =
      finish(cfg, {write_output(cfg.out, "verify.json", report.dump(2) + "\n")}, start);
  res.passed = all;
  return res;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hybrid Kitaev chain spectra, zero modes and quench dynamics", "hkc"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::map<std::string, std::map<std::string, std::string>> raw;
  std::map<std::string, std::string> config_path;
  std::map<std::string, bool> suite;
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"sweep", "BdG spectrum as a function of the chemical potential"},
      {"modes", "zero and subgap modes with site and Majorana profiles"},
      {"quench", "Majorana transfer after switching the segment layout"},
      {"verify", "compare the BdG spectrum with exact diagonalization"},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    auto& values = raw[s.name];
    for (const auto& key : setting_keys()) {
      const std::string flag = key == "L" ? "-L" : "--" + key;
      sub->add_option(flag, values[key], setting_help().at(key));
    }
    sub->add_option("--config", config_path[s.name], "key=value settings file");
    if (std::string(s.name) == "verify") {
      sub->add_flag("--suite", suite["verify"], "run the built-in oracle suite");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  RunConfig cfg;
  cfg.command = command;
  cfg.suite = suite[command];
  try {
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) cfg.out = env;
    if (!config_path[command].empty()) {
      for (const auto& [key, value] : read_config_file(config_path[command])) {
        apply_setting(cfg, key, value);
      }
    }
    for (const auto& key : setting_keys()) {
      const std::string flag = key == "L" ? "-L" : "--" + key;
      if (sub->get_option(flag)->count() > 0) apply_setting(cfg, key, raw[command][key]);
    }
    if (cfg.out.empty()) cfg.out = ".";

    CommandResult result;
    if (command == "sweep") result = cmd_sweep(cfg);
    else if (command == "modes") result = cmd_modes(cfg);
    else if (command == "quench") result = cmd_quench(cfg);
    else result = cmd_verify(cfg);

    for (const auto& f : result.outputs) out << (cfg.out / f.name).string() << '\n';
    out << result.manifest.string() << '\n';
    if (!result.passed) {
      err << "hkc: oracle mismatch beyond tolerance, see " << (cfg.out / "verify.json").string()
          << '\n';
      return kExitPhysics;
    }
    return kExitOk;
  } catch (const InvalidSpec& e) {
    err << "hkc: invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const PhysicsError& e) {
    err << "hkc: " << e.what() << '\n';
    return kExitPhysics;
  } catch (const IoError& e) {
    err << "hkc: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "hkc: " << e.what() << '\n';
    return kExitIo;
  }
}

int run_cli(int argc, const char* const* argv) { return run_cli(argc, argv, std::cout, std::cerr); }

}  // namespace hkc::cli
