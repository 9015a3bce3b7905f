// stirap-sim: population transfer in a three-level Lambda system under
// STIRAP / SA-STIRAP driving, dissipation and OU dephasing noise.
//
//   stirap-sim run            --config exp.cfg [--out DIR] [--seed N] [--no-plots]
//   stirap-sim sweep          --config exp.cfg [--workers N] ...
//   stirap-sim noise-validate --config exp.cfg
//   stirap-sim spectrum       --config exp.cfg
//   stirap-sim area           --config exp.cfg
//
// Exit codes: 0 success, 2 configuration error, 3 numerical divergence, 4 I/O failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "stirap/commands.hpp"
#include "stirap/csv.hpp"
#include "stirap/errors.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitIo = 4;

struct Flags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;
  bool no_plots = false;
};

void add_common(CLI::App* sub, Flags& flags) {
  sub->add_option("--config", flags.config, "experiment file (key = value lines)")->required();
  sub->add_option("--out", flags.out, "output directory (default: $STIRAP_OUT_DIR or ./stirap-out)");
  sub->add_option("--seed", flags.seed, "master seed, overrides the config");
  sub->add_option("--workers", flags.workers, "worker threads for ensembles (default: all cores)");
  sub->add_flag("--no-plots", flags.no_plots, "skip SVG quicklook plots");
}

stirap::ExperimentSpec load_spec(const Flags& flags) {
  std::ifstream in(flags.config, std::ios::binary);
  if (!in) throw stirap::IoError("cannot read config " + flags.config);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::vector<std::string> warnings;
  stirap::ExperimentSpec spec = stirap::parse_spec(buffer.str(), &warnings);
  for (const auto& w : warnings) std::clog << flags.config << ": warning: " << w << '\n';
  if (flags.seed) spec.seed = *flags.seed;
  return spec;
}

void report(const stirap::OutputBundle& bundle) {
  for (const auto& f : bundle.data_files) std::cout << "wrote " << f.string() << '\n';
  for (const auto& f : bundle.plot_files) std::cout << "wrote " << f.string() << '\n';
  std::cout << "manifest " << bundle.manifest.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-level STIRAP / SA-STIRAP simulator with dissipation and OU dephasing"};
  app.set_version_flag("--version", std::string(stirap::kToolVersion));
  app.require_subcommand(1);

  Flags flags;
  auto* run = app.add_subcommand("run", "single trajectory with full population time series");
  auto* sweep = app.add_subcommand("sweep", "fidelity versus omega0 over the parameter grid");
  auto* noise = app.add_subcommand("noise-validate", "histogram and autocorrelation of the OU noise");
  auto* spectrum = app.add_subcommand("spectrum", "noise spectra and counterdiabatic Fourier transforms");
  auto* area = app.add_subcommand("area", "pulse areas over the simulation window");
  for (auto* sub : {run, sweep, noise, spectrum, area}) add_common(sub, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    const stirap::ExperimentSpec spec = load_spec(flags);
    if (area->parsed()) {
      std::cout << stirap::format_area_report(stirap::cmd_area(spec));
      return 0;
    }
    const std::optional<std::filesystem::path> out_flag =
        flags.out.empty() ? std::nullopt : std::optional<std::filesystem::path>(flags.out);
    const stirap::RuntimeOptions opts{stirap::resolve_out_dir(spec, out_flag), flags.workers,
                                      !flags.no_plots};
    if (run->parsed()) {
      report(stirap::cmd_run(spec, opts));
    } else if (sweep->parsed()) {
      report(stirap::cmd_sweep(spec, opts));
    } else if (noise->parsed()) {
      report(stirap::cmd_noise_validate(spec, opts));
    } else if (spectrum->parsed()) {
      report(stirap::cmd_spectrum(spec, opts));
    }
  } catch (const stirap::ParseError& e) {
    std::cerr << flags.config << ": " << e.what() << '\n';
    return kExitParse;
  } catch (const stirap::DomainError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitParse;
  } catch (const stirap::StepRuleViolation& e) {
    std::cerr << "step rule: " << e.what() << '\n';
    return kExitParse;
  } catch (const stirap::IntegrationDiverged& e) {
    std::cerr << "integration diverged: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const stirap::EnsembleError& e) {
    std::cerr << "ensemble failed: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const stirap::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
