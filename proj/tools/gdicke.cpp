// gdicke: spectra, sweeps, critical points, exponent fits, energy densities and
// oracle comparisons for the spatially extended Dicke model.
//
// Exit codes: 0 success, 2 usage error, 3 numeric failure, 4 bracket error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gdicke/bogoliubov.hpp"
#include "gdicke/criticality.hpp"
#include "gdicke/dicke.hpp"
#include "gdicke/errors.hpp"
#include "gdicke/io.hpp"
#include "gdicke/oracle.hpp"

namespace {

using namespace gdicke;

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitBracket = 4;

struct RunConfig {
  double omega = 1.0;
  double omega0 = 1.0;
  double n_atoms = 1e6;
  std::string branch;  // empty: command default
  double lambda_min = 0.0;
  double lambda_max = 1.0;
  int steps = 201;
  std::string output = "-";
  std::string format = "csv";
  double tol_zero = 0.0;  // 0: 1e-6 * max(omega, omega0)
  double tol_im = 0.0;
  double bisect_tol = 1e-8;
  unsigned threads = 0;  // 0: GDICKE_THREADS or 1
  std::string config_path;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flags registered on every subcommand; the setters apply --config values for
// options that were not given explicitly.
struct SharedOptions {
  std::map<std::string, std::pair<CLI::Option*, std::function<void(const nlohmann::json&)>>> by_key;

  template <class T>
  void add(CLI::App* app, const std::string& key, const std::string& flag, T& field,
           const std::string& help) {
    CLI::Option* opt = app->add_option(flag, field, help)->capture_default_str();
    by_key[key] = {opt, [&field](const nlohmann::json& v) { field = v.get<T>(); }};
  }
};

void register_shared(CLI::App* app, RunConfig& cfg, SharedOptions& shared) {
  shared.add(app, "omega", "--omega", cfg.omega, "Field frequency");
  shared.add(app, "omega0", "--omega0", cfg.omega0, "Atomic level splitting");
  shared.add(app, "n_atoms", "--n-atoms", cfg.n_atoms, "Number of atoms N");
  shared.add(app, "branch", "--branch", cfg.branch, "normal, sr1, sr2, sr3 or sr4");
  shared.add(app, "lambda_min", "--lambda-min", cfg.lambda_min, "Smallest coupling");
  shared.add(app, "lambda_max", "--lambda-max", cfg.lambda_max, "Largest coupling");
  shared.add(app, "steps", "--steps", cfg.steps, "Number of grid points");
  shared.add(app, "output", "-o,--output", cfg.output, "Output file ('-' for stdout)");
  shared.add(app, "format", "--format", cfg.format, "csv or json");
  shared.add(app, "tol_zero", "--tol-zero", cfg.tol_zero, "Zero-frequency tolerance (0: default)");
  shared.add(app, "tol_im", "--tol-im", cfg.tol_im, "Imaginary-part tolerance (0: default)");
  shared.add(app, "bisect_tol", "--bisect-tol", cfg.bisect_tol, "Bisection width");
  shared.add(app, "threads", "--threads", cfg.threads, "Sweep threads (0: GDICKE_THREADS or 1)");
  app->add_option("--config", cfg.config_path, "JSON file with defaults for these flags");
}

void apply_config(const RunConfig& cfg, SharedOptions& shared) {
  if (cfg.config_path.empty()) return;
  std::ifstream in(cfg.config_path);
  if (!in) throw UsageError("cannot open config file " + cfg.config_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("invalid config JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    auto it = shared.by_key.find(key);
    if (it == shared.by_key.end()) throw UsageError("unknown config key '" + key + "'");
    auto& [opt, setter] = it->second;
    if (opt->count() > 0) continue;  // explicit flags win
    try {
      setter(value);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("bad value for config key '" + key + "': " + e.what());
    }
  }
}

void check_config(const RunConfig& cfg, bool needs_grid) {
  if (!(cfg.omega > 0) || !(cfg.omega0 > 0) || !(cfg.n_atoms > 0)) {
    throw UsageError("omega, omega0 and n-atoms must be positive");
  }
  if (needs_grid) {
    if (!(cfg.lambda_min < cfg.lambda_max)) throw UsageError("need lambda-min < lambda-max");
    if (cfg.lambda_min < 0) throw UsageError("lambda-min must be non-negative");
    if (cfg.steps < 2) throw UsageError("steps must be >= 2");
  }
  if (cfg.tol_zero < 0 || cfg.tol_im < 0 || !(cfg.bisect_tol > 0)) {
    throw UsageError("tolerances must be positive");
  }
  if (cfg.format != "csv" && cfg.format != "json") throw UsageError("format must be csv or json");
}

Branch branch_or(const RunConfig& cfg, Branch fallback) {
  if (cfg.branch.empty()) return fallback;
  auto b = parse_branch(cfg.branch);
  if (!b) throw UsageError("unknown branch '" + cfg.branch + "'");
  return *b;
}

SpectrumTolerances tolerances(const RunConfig& cfg) {
  auto tol = default_tolerances(cfg.omega, cfg.omega0);
  if (cfg.tol_zero > 0) tol.zero = cfg.tol_zero;
  if (cfg.tol_im > 0) tol.imag = cfg.tol_im;
  return tol;
}

unsigned thread_count(const RunConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("GDICKE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return 1;
}

ModelParams base_params(const RunConfig& cfg) { return {cfg.omega, cfg.omega0, 0.0, cfg.n_atoms}; }

template <class Writer>
void with_output(const RunConfig& cfg, Writer&& write) {
  if (cfg.output == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw UsageError("cannot open output file " + cfg.output);
  write(out);
}

OutputFormat output_format(const RunConfig& cfg) {
  return cfg.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
}

int cmd_sweep(const RunConfig& cfg) {
  check_config(cfg, true);
  const auto grid = linear_grid(cfg.lambda_min, cfg.lambda_max, cfg.steps);
  SweepOptions opts{tolerances(cfg), thread_count(cfg)};
  const auto records = sweep(base_params(cfg), branch_or(cfg, Branch::Normal), grid, opts);
  with_output(cfg, [&](std::ostream& out) { write_records(out, records, output_format(cfg)); });
  return 0;
}

int cmd_energy(const RunConfig& cfg) {
  check_config(cfg, true);
  const auto grid = linear_grid(cfg.lambda_min, cfg.lambda_max, cfg.steps);
  SweepOptions opts{tolerances(cfg), thread_count(cfg)};
  std::vector<Branch> branches;
  if (cfg.branch.empty()) {
    branches.assign(kAllBranches.begin(), kAllBranches.end());
  } else {
    branches.push_back(branch_or(cfg, Branch::Normal));
  }
  std::vector<std::vector<SweepRecord>> per_branch;
  for (auto b : branches) per_branch.push_back(sweep(base_params(cfg), b, grid, opts));
  std::vector<SweepRecord> records;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (const auto& rows : per_branch) records.push_back(rows[i]);
  }
  with_output(cfg, [&](std::ostream& out) { write_records(out, records, output_format(cfg)); });
  return 0;
}

int cmd_critical(const RunConfig& cfg, bool onset, std::optional<double> lo,
                 std::optional<double> hi) {
  check_config(cfg, false);
  BisectionOptions opts;
  opts.tolerances = tolerances(cfg);
  auto bracket = onset ? default_onset_bracket(cfg.omega, cfg.omega0)
                       : default_bracket(cfg.omega, cfg.omega0);
  if (lo) bracket.first = *lo;
  if (hi) bracket.second = *hi;
  if (!(bracket.first < bracket.second)) throw UsageError("bracket must satisfy lo < hi");
  double lambda_c;
  if (onset) {
    lambda_c = find_complex_onset(cfg.omega, cfg.omega0, bracket, cfg.bisect_tol, opts);
  } else {
    lambda_c = find_critical(branch_or(cfg, Branch::Normal), cfg.omega, cfg.omega0, bracket,
                             cfg.bisect_tol, opts)
                   .lambda_c;
  }
  std::printf("%.7f\n", lambda_c);
  return 0;
}

int cmd_fit(const RunConfig& cfg, const std::string& target_name, std::optional<double> near,
            std::optional<double> far, int points) {
  check_config(cfg, false);
  const auto target = parse_fit_target(target_name);
  if (!target) throw UsageError("unknown fit target '" + target_name + "'");
  auto window = default_window(*target);
  if (near) window.near = *near;
  if (far) window.far = *far;
  const auto fit = fit_exponent(*target, cfg.omega, cfg.omega0, window, points);
  std::printf("target=%s exponent=%s log_prefactor=%s max_abs_residual=%s n_points=%d\n",
              std::string(to_string(*target)).c_str(), format_number(fit.exponent).c_str(),
              format_number(fit.log_prefactor).c_str(),
              format_number(fit.max_abs_residual).c_str(), fit.n_points);
  return 0;
}

int cmd_oracle(const RunConfig& cfg, int cutoff) {
  check_config(cfg, true);
  if (cutoff < 1) throw UsageError("cutoff must be >= 1");
  const auto branch = branch_or(cfg, Branch::Normal);
  const auto grid = linear_grid(cfg.lambda_min, cfg.lambda_max, cfg.steps);
  const auto tol = tolerances(cfg);
  with_output(cfg, [&](std::ostream& out) {
    out << "lambda,branch,quantity,engine,oracle,abs_diff\n";
    for (double lambda : grid) {
      ModelParams p = base_params(cfg);
      p.lambda = lambda;
      const std::string head = format_number(lambda) + "," + std::string(to_string(branch));
      QuadraticBosonForm form;
      try {
        form = effective_form(p, branch);
      } catch (const DisplacementUndefined&) {
        out << head << ",undefined,,,\n";
        continue;
      }
      const auto spectrum = bogoliubov_spectrum(form, tol);
      if (spectrum.classification != Stability::AllPositive) {
        out << head << ",unstable,,,\n";
        continue;
      }
      // The offset c0 is extensive; compare levels relative to it.
      QuadraticBosonForm shifted = form;
      shifted.c0 = 0.0;
      FockSpec spec{std::vector<int>(3, cutoff), {}, kDefaultDimensionCap};
      const auto levels = fock_ed(shifted, spec, 12);
      auto row = [&](const std::string& name, double engine, double oracle) {
        out << head << ',' << name << ',' << format_number(engine) << ',' << format_number(oracle)
            << ',' << format_number(std::abs(engine - oracle)) << '\n';
      };
      row("ground", ground_energy(shifted, spectrum), levels.front());
      for (std::size_t i = 0; i < spectrum.frequencies.size(); ++i) {
        const double w = spectrum.frequencies[i].real();
        double best = levels[1] - levels[0];
        for (std::size_t k = 1; k < levels.size(); ++k) {
          const double gap = levels[k] - levels[0];
          if (std::abs(gap - w) < std::abs(best - w)) best = gap;
        }
        row("w" + std::to_string(i + 1), w, best);
      }
    }
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasiparticle spectra and criticality of the spatially extended Dicke model"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::map<CLI::App*, SharedOptions> shared;

  auto* sweep_cmd = app.add_subcommand("sweep", "Eigenfrequencies of one branch over a coupling grid");
  register_shared(sweep_cmd, cfg, shared[sweep_cmd]);

  auto* energy_cmd = app.add_subcommand("energy", "Ground-state energy densities (all branches unless --branch)");
  register_shared(energy_cmd, cfg, shared[energy_cmd]);

  bool onset = false;
  std::optional<double> bracket_lo, bracket_hi;
  auto* critical_cmd = app.add_subcommand("critical", "Bisect a branch threshold or the complex onset");
  register_shared(critical_cmd, cfg, shared[critical_cmd]);
  critical_cmd->add_flag("--onset", onset, "Locate the onset of complex normal-phase frequencies");
  critical_cmd->add_option("--bracket-lo", bracket_lo, "Lower bracket end (default lambda_c/2)");
  critical_cmd->add_option("--bracket-hi", bracket_hi, "Upper bracket end (default 2 lambda_c)");

  std::string target = "gap";
  std::optional<double> window_near, window_far;
  int points = 41;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a critical exponent near lambda_c");
  register_shared(fit_cmd, cfg, shared[fit_cmd]);
  fit_cmd->add_option("--target", target, "gap, length or order-parameter")->capture_default_str();
  fit_cmd->add_option("--window-near", window_near, "Closest distance from lambda_c");
  fit_cmd->add_option("--window-far", window_far, "Farthest distance from lambda_c");
  fit_cmd->add_option("--points", points, "Number of samples")->capture_default_str();

  int cutoff = 14;
  auto* oracle_cmd = app.add_subcommand("oracle", "Compare the Bogoliubov engine with truncated-Fock diagonalization");
  register_shared(oracle_cmd, cfg, shared[oracle_cmd]);
  oracle_cmd->add_option("--cutoff", cutoff, "Per-mode occupation cutoff")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    for (auto& [cmd, options] : shared) {
      if (cmd->parsed()) apply_config(cfg, options);
    }
    if (sweep_cmd->parsed()) return cmd_sweep(cfg);
    if (energy_cmd->parsed()) return cmd_energy(cfg);
    if (critical_cmd->parsed()) return cmd_critical(cfg, onset, bracket_lo, bracket_hi);
    if (fit_cmd->parsed()) return cmd_fit(cfg, target, window_near, window_far, points);
    if (oracle_cmd->parsed()) return cmd_oracle(cfg, cutoff);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BracketError& e) {
    std::cerr << "bracket error: " << e.what() << '\n';
    return kExitBracket;
  } catch (const Error& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}
