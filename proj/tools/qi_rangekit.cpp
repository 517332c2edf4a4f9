// qi-rangekit: command-line front end for the illumination range model.
//
// Exit codes: 0 success, 2 input or configuration error, 3 no physical solution.

#include <fmt/core.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qirange/qirange.hpp"

namespace {

using namespace qirange;

constexpr int kExitInput = 2;
constexpr int kExitNoSolution = 3;

ScenarioConfig resolve_config(const std::string& flag_path) {
  if (!flag_path.empty()) return load_config_file(flag_path);
  if (const char* env = std::getenv("QI_RANGEKIT_CONFIG"); env != nullptr && *env != '\0') {
    return load_config_file(env);
  }
  return ScenarioConfig{};
}

Illumination parse_mode(const std::string& s) {
  if (s == "ci") return Illumination::classical;
  if (s == "qi") return Illumination::quantum;
  throw DomainError("mode must be 'ci' or 'qi', got '" + s + "'");
}

void print_matrix(const QuadratureCovariance& c) {
  for (int r = 0; r < 4; ++r) {
    fmt::print("  [{:>12.6f} {:>12.6f} {:>12.6f} {:>12.6f}]\n", c(r, 0), c(r, 1), c(r, 2), c(r, 3));
  }
}

int cmd_power(double n_s, double freq, double bw, const PhysicalConstants& k) {
  const Power p = transmit_power(MeanPhotonNumber{n_s}, Frequency{freq}, Bandwidth{bw}, k);
  fmt::print("P_t = {:.6g} W = {:.6g} dBm\n", p.watts, p.dbm());
  return 0;
}

int cmd_covariance(double n_s, const std::string& mode_name, bool oracle, std::optional<std::size_t> cutoff) {
  const Illumination mode = parse_mode(mode_name);
  const MeanPhotonNumber n{n_s};
  const QuadratureCovariance closed = mode == Illumination::quantum ? tmsv_covariance(n) : coherent_covariance(n);
  const CovarianceBlocks b = closed.blocks();
  fmt::print("{} covariance, N_s = {:.6g}: S = {:.6g}, C = {:.6g}\n",
             mode == Illumination::quantum ? "TMSV" : "coherent-pair", n_s, b.s, b.c);
  print_matrix(closed);
  if (oracle) {
    FockCutoff fc;
    if (cutoff) {
      fc.n_max = *cutoff;
    } else {
      fc = mode == Illumination::quantum ? minimal_tmsv_cutoff(n) : minimal_coherent_cutoff(n);
    }
    const QuadratureCovariance o =
        mode == Illumination::quantum ? tmsv_covariance_oracle(n, fc) : coherent_covariance_oracle(n, fc);
    fmt::print("Fock-truncation oracle (n_max = {}):\n", fc.n_max);
    print_matrix(o);
    fmt::print("max |closed form - oracle| = {:.3e}\n", closed.max_abs_deviation(o));
  }
  return 0;
}

int cmd_ratio(double n_s) {
  const MeanPhotonNumber n{n_s};
  const double r = correlation_ratio(n);
  fmt::print("C_c/C_q = {:.6g} (C_c = {:.6g}, C_q = {:.6g}, C_q/C_c = {:.6g})\n", r, coherent_blocks(n).c,
             tmsv_blocks(n).c, 1.0 / r);
  return 0;
}

int cmd_atten(const ScenarioConfig& cfg, const std::string& table_flag, double freq, std::optional<double> range) {
  std::string path = table_flag;
  if (path.empty() && cfg.attenuation_table_path) path = *cfg.attenuation_table_path;
  if (path.empty()) throw DomainError("no attenuation table: pass --table or set attenuation_table_path");
  const AttenuationTable table = load_table_file(path);
  const AbsorptionCoefficient g = gamma_at(table, Frequency{freq});
  fmt::print("gamma({:.6g} Hz) = {:.6g} dB/km  [{} rows, span {:.6g}-{:.6g} GHz]\n", freq, g.db_per_km,
             table.rows().size(), table.min_ghz(), table.max_ghz());
  if (range) fmt::print("F({:.6g} m) = {:.6g}\n", *range, form_factor(g, *range).value);
  return 0;
}

int cmd_range(const Scenario& scenario, double n_s, double freq, const std::string& mode_name) {
  const MeanPhotonNumber n{n_s};
  const Frequency f{freq};
  const RangeProblem base = scenario.problem(n, f, Illumination::classical);
  base.validate();
  const Temperature t = scenario.t_eff();
  fmt::print("f = {:.6g} Hz, N_s = {:.6g}, B = {:.6g} Hz, M = {}\n", freq, n_s, base.b.hertz,
             base.integration.count(base.b));
  fmt::print("P_B = {:.6g} dBm, T_eff = {:.6g} K (derived), N_B = {:.6g}\n", scenario.noise_power.dbm(), t.kelvin,
             base.n_b.value);
  fmt::print("G = {:.6g}, gamma = {:.6g} dB/km, (4pi)^{} convention\n", base.radar.gain(f, base.constants),
             base.gamma.db_per_km, base.four_pi_exponent);
  fmt::print("SNR_min = {:.6g} dB (configured)", base.detection.snr_min_db);
  try {
    fmt::print("; Albersheim estimate for p_d = {:.6g}, p_fa = {:.6g}, single pulse: {:.4f} dB\n", base.detection.p_d,
               base.detection.p_fa, albersheim_snr_min(base.detection.p_d, base.detection.p_fa, 1.0));
  } catch (const DomainError&) {
    fmt::print("; Albersheim estimate unavailable outside its validity range\n");
  }

  std::vector<Illumination> modes{Illumination::classical, Illumination::quantum};
  if (!mode_name.empty()) modes = {parse_mode(mode_name)};
  for (const Illumination mode : modes) {
    const RangeProblem p = scenario.problem(n, f, mode);
    const RangeSolution s = r_max(p);
    const LinkBudget lb = evaluate_link(p.link_point(), s.r_max);
    fmt::print(
        "{}: r_max = {:.6g} m (free-space {:.6g} m), residual = {:.3e} dB, F = {:.6g}, eta = {:.6g}, "
        "SNR_eff = {:.6g} dB, iterations = {}, converged = {}\n",
        to_string(mode), s.r_max, r_max_free(p), s.residual_db, lb.f_form.value, lb.eta, linear_to_db(lb.snr_eff),
        s.iterations, s.converged ? "true" : "false");
  }
  return 0;
}

int cmd_sweep(const ScenarioConfig& cfg, int figure, double lo, double hi, std::size_t points,
              const std::string& output) {
  const std::vector<double> grid = log_grid(lo, hi, points);
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (output != "-") {
    file.open(output);
    if (!file) throw DomainError("cannot open output '" + output + "'");
    out = &file;
  }
  std::size_t rows = 0;
  if (figure == 1) {
    rows = write_ratio_csv(*out, sweep_ratio(grid));
  } else {
    const RangeSweep sweep = sweep_range(cfg.to_scenario(), grid, cfg.frequencies(),
                                         {Illumination::classical, Illumination::quantum});
    rows = write_range_csv(*out, sweep);
  }
  out->flush();
  std::ostream& summary = output == "-" ? std::cerr : std::cout;
  fmt::print(summary, "wrote {} rows (figure {}) to {}\n", rows, figure, output == "-" ? "stdout" : output);
  return 0;
}

int cmd_mc(double n_s, double eta, double n_b, std::size_t trials, std::uint64_t seed) {
  const GainEstimate g =
      detector_gain_experiment(MeanPhotonNumber{n_s}, eta, NoiseOccupancy{n_b}, trials, Seed{seed});
  fmt::print("correlation detector, I_R*I_I - Q_R*Q_I, {} trials, seed {}\n", g.trials, seed);
  fmt::print("qi: mean shift = {:.6e}, absent variance = {:.6e}, deflection/mode = {:.6e}\n", g.quantum.mean_shift,
             g.quantum.absent_variance, g.quantum.deflection);
  fmt::print("ci: mean shift = {:.6e}, absent variance = {:.6e}, deflection/mode = {:.6e}\n",
             g.classical.mean_shift, g.classical.absent_variance, g.classical.deflection);
  fmt::print("deflection-SNR ratio qi/ci = {:.6g} +/- {:.3g} (1 + 1/N_s = {:.6g})\n", g.ratio, g.standard_error,
             quantum_snr_gain(MeanPhotonNumber{n_s}));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum vs classical illumination range model"};
  app.require_subcommand(0, 1);
  std::string config_path;
  bool dump_config = false;
  app.add_option("--config", config_path, "Scenario JSON (falls back to $QI_RANGEKIT_CONFIG)");
  app.add_flag("--dump-config", dump_config, "Print the effective scenario as JSON and exit");

  double n_s = 0, freq = 0, bw = 0;
  auto* power = app.add_subcommand("power", "Transmit power for N_s photons per mode");
  power->add_option("--ns", n_s, "Mean photons per mode")->required();
  power->add_option("--freq", freq, "Carrier frequency [Hz]")->required();
  power->add_option("--bw", bw, "Bandwidth [Hz]")->required();

  std::string mode;
  bool oracle = false;
  std::optional<std::size_t> cutoff;
  auto* covariance = app.add_subcommand("covariance", "Signal/idler quadrature covariance matrix");
  covariance->add_option("--ns", n_s, "Mean photons per mode")->required();
  covariance->add_option("--mode", mode, "qi (TMSV) or ci (coherent pair)")->required();
  covariance->add_flag("--oracle", oracle, "Also evaluate the truncated Fock-space oracle");
  covariance->add_option("--cutoff", cutoff, "Oracle Fock cutoff n_max (default: smallest satisfying the tail rule)");

  auto* ratio = app.add_subcommand("ratio", "Classical/quantum correlation ratio C_c/C_q");
  ratio->add_option("--ns", n_s, "Mean photons per mode")->required();

  std::string table_path;
  std::optional<double> range_m;
  auto* atten = app.add_subcommand("atten", "Atmospheric absorption and form factor from a table");
  atten->add_option("--freq", freq, "Frequency [Hz]")->required();
  atten->add_option("--range", range_m, "Evaluate the one-way form factor at this range [m]");
  atten->add_option("--table", table_path, "Attenuation CSV (default: config attenuation_table_path)");

  bool literal_4pi4 = false;
  auto* range = app.add_subcommand("range", "Maximum detection range");
  range->add_option("--ns", n_s, "Mean photons per mode")->required();
  range->add_option("--freq", freq, "Carrier frequency [Hz]")->required();
  range->add_option("--mode", mode, "ci or qi (default: both)");
  range->add_flag("--paper-literal-4pi4", literal_4pi4, "Use a (4pi)^4 range-equation denominator instead of (4pi)^2");

  int figure = 3;
  double ns_min = 1e-3, ns_max = 10;
  std::size_t points = 41;
  std::string output = "-";
  auto* sweep = app.add_subcommand("sweep", "Write figure data as CSV");
  sweep->add_option("--figure", figure, "1: correlation ratio, 3: maximum range")
      ->required()
      ->check(CLI::IsMember({1, 3}));
  sweep->add_option("--ns-min", ns_min, "Smallest N_s")->capture_default_str();
  sweep->add_option("--ns-max", ns_max, "Largest N_s")->capture_default_str();
  sweep->add_option("--points", points, "Log-spaced grid points")->capture_default_str();
  sweep->add_option("--output", output, "Output path, '-' for stdout")->capture_default_str();
  sweep->add_flag("--paper-literal-4pi4", literal_4pi4, "Use a (4pi)^4 range-equation denominator instead of (4pi)^2");

  double eta = 0, n_b = 0;
  std::size_t trials = 1000000;
  std::uint64_t seed = 1;
  auto* mc = app.add_subcommand("mc", "Monte Carlo detector-gain experiment");
  mc->add_option("--ns", n_s, "Mean photons per mode")->required();
  mc->add_option("--eta", eta, "Channel transmissivity")->required();
  mc->add_option("--nb", n_b, "Thermal photons per mode")->required();
  mc->add_option("--trials", trials, "Trials")->capture_default_str();
  mc->add_option("--seed", seed, "RNG seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    std::cerr << sub->help();
    return kExitInput;
  }

  try {
    ScenarioConfig cfg = resolve_config(config_path);
    if (literal_4pi4) cfg.four_pi_exponent = 4;
    if (dump_config) {
      std::cout << to_json(cfg).dump(2) << '\n';
      return 0;
    }
    const PhysicalConstants k = cfg.physical_constants();
    if (*power) return cmd_power(n_s, freq, bw, k);
    if (*covariance) return cmd_covariance(n_s, mode, oracle, cutoff);
    if (*ratio) return cmd_ratio(n_s);
    if (*atten) return cmd_atten(cfg, table_path, freq, range_m);
    if (*range) return cmd_range(cfg.to_scenario(), n_s, freq, mode);
    if (*sweep) return cmd_sweep(cfg, figure, ns_min, ns_max, points, output);
    if (*mc) return cmd_mc(n_s, eta, n_b, trials, seed);
    std::cout << app.help();
    return 0;
  } catch (const NoDetectionError& e) {
    std::cerr << "no solution: " << e.what() << '\n';
    return kExitNoSolution;
  } catch (const UnphysicalGeometryError& e) {
    std::cerr << "no solution: " << e.what() << '\n';
    return kExitNoSolution;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
