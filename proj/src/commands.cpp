#include "stirap/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>

#include "stirap/csv.hpp"
#include "stirap/errors.hpp"
#include "stirap/plot.hpp"

namespace stirap {

namespace fs = std::filesystem;

namespace {

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

std::string tau_c_label(const std::optional<double>& tau_c) {
  return tau_c ? "tc" + short_number(*tau_c) : std::string("off");
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  }
}

fs::path write_manifest(const fs::path& dir, std::string_view command, const ExperimentSpec& spec) {
  const fs::path path = dir / "manifest.txt";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "# stirap-sim " << kToolVersion << '\n';
  out << "# command = " << command << '\n';
  out << render_spec(spec);
  if (!out) throw IoError("failed writing " + path.string());
  return path;
}

void check_step_rule(const ExperimentSpec& spec, double dt, double tau_c) {
  if (satisfies_step_rule(dt, tau_c)) return;
  const std::string msg = "time step " + format_number(dt) + " exceeds tau_c/10 = " +
                          format_number(tau_c / 10.0);
  if (spec.step_rule == StepRulePolicy::Error) throw StepRuleViolation(msg);
  if (spec.step_rule == StepRulePolicy::Warn) std::clog << "warning: " << msg << '\n';
}

void describe_protocol(CsvWriter& csv, const ExperimentSpec& spec) {
  csv.comment("tool", "stirap-sim " + std::string(kToolVersion));
  csv.comment("family", to_string(spec.family));
  if (spec.family == PulseFamily::Gaussian) csv.comment("tau_over_T", format_number(spec.tau_over_T));
  csv.comment("sigma", format_number(spec.sigma));
  csv.comment("seed", std::to_string(spec.seed));
  csv.comment("time_unit", spec.time_unit);
}

}  // namespace

fs::path resolve_out_dir(const ExperimentSpec& spec, const std::optional<fs::path>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (!spec.out_dir.empty()) return spec.out_dir;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return "stirap-out";
}

SimGrid grid_for(const ExperimentSpec& spec, const RunConfig& run) {
  const SimGrid grid = spec.dt ? SimGrid::over(simulation_window(run.protocol), *spec.dt)
                               : default_grid(run);
  if (run.noise_enabled) check_step_rule(spec, grid.dt, run.noise.tau_c);
  return grid;
}

OutputBundle cmd_run(const ExperimentSpec& spec, const RuntimeOptions& opts) {
  RunConfig run = spec.run_config();
  run.seed = derive_seed(spec.seed, 0);
  run.record_trajectory = true;
  const SimGrid grid = grid_for(spec, run);
  const RunResult result = simulate_run(run, grid);

  OutputBundle bundle;
  bundle.out_dir = opts.out_dir;
  prepare_dir(opts.out_dir);

  const fs::path csv_path = opts.out_dir / "trajectory.csv";
  CsvWriter csv(csv_path);
  describe_protocol(csv, spec);
  csv.comment("omega0", format_number(spec.omega0));
  csv.comment("cd", spec.cd ? "on" : "off");
  csv.comment("gamma", format_number(spec.gamma));
  csv.comment("tau_c", spec.tau_c ? format_number(*spec.tau_c) : "off");
  csv.comment("dt", format_number(grid.dt));
  csv.comment("n_steps", std::to_string(grid.n_steps));
  csv.comment("fidelity", format_number(result.fidelity));
  csv.comment("total_population", format_number(result.total_population));
  csv.header({"t", "p1", "p2", "p3", "P"});
  const Trajectory& traj = *result.trajectory;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    csv.row({traj.times[k], traj.p1[k], traj.p2[k], traj.p3[k], traj.total[k]});
  }
  csv.close();
  bundle.data_files.push_back(csv_path);

  if (opts.plots && spec.plots) {
    PlotSpec plot;
    plot.title = std::string(spec.cd ? "SA-STIRAP" : "STIRAP") + " " + std::string(to_string(spec.family)) +
                 ", omega0 = " + format_number(spec.omega0) + "/" + spec.time_unit;
    plot.x_label = "t [" + spec.time_unit + "]";
    plot.y_label = "population";
    plot.y_min = 0.0;
    plot.y_max = 1.0;
    plot.series = {{"p1", traj.times, traj.p1, {}, {}},
                   {"p2", traj.times, traj.p2, {}, {}},
                   {"p3", traj.times, traj.p3, {}, {}},
                   {"P", traj.times, traj.total, {}, {}}};
    const fs::path svg = opts.out_dir / "trajectory.svg";
    write_svg_plot(svg, plot);
    bundle.plot_files.push_back(svg);
  }
  bundle.manifest = write_manifest(opts.out_dir, "run", spec);
  return bundle;
}

OutputBundle cmd_sweep(const ExperimentSpec& spec, const RuntimeOptions& opts) {
  OutputBundle bundle;
  bundle.out_dir = opts.out_dir;
  prepare_dir(opts.out_dir);

  std::vector<double> delays = spec.delays;
  if (spec.family == PulseFamily::SinCos) delays.assign(1, spec.tau_over_T);
  const std::vector<std::optional<double>> columns =
      spec.tau_cs.empty() ? std::vector<std::optional<double>>{std::nullopt} : spec.tau_cs;

  for (const bool cd : spec.cd_modes) {
    for (const double tau : delays) {
      for (const double gamma : spec.gammas) {
        EnsembleConfig base;
        base.n_runs = spec.n_runs;
        base.master_seed = spec.seed;
        base.workers = opts.workers;
        base.run = spec.run_config();
        base.run.protocol.cd_enabled = cd;
        if (spec.dt) {
          base.grid = SimGrid::over(simulation_window(base.run.protocol), *spec.dt);
          for (const auto& tc : columns) {
            if (tc) check_step_rule(spec, base.grid->dt, *tc);
          }
        }

        const std::string mode = cd ? "sa-stirap" : "stirap";
        std::string stem = "sweep_" + std::string(to_string(spec.family)) + "_" + mode;
        if (spec.family == PulseFamily::Gaussian) stem += "_tau" + short_number(tau);
        stem += "_gamma" + short_number(gamma);
        std::clog << "sweep: " << stem << '\n';

        const double gammas[] = {gamma};
        const double taus[] = {tau};
        const SweepPanel panel = sweep_matrix(base, spec.omega0_values, gammas, columns, taus).front();

        const fs::path csv_path = opts.out_dir / (stem + ".csv");
        CsvWriter csv(csv_path);
        describe_protocol(csv, spec);
        csv.comment("cd", cd ? "on" : "off");
        csv.comment("gamma", format_number(gamma));
        if (spec.family == PulseFamily::Gaussian) csv.comment("delay_tau_over_T", format_number(tau));
        csv.comment("n_runs", std::to_string(spec.n_runs));
        csv.comment("dt", spec.dt ? format_number(*spec.dt) : "auto");
        std::string blocks;
        std::vector<std::string> header{"omega0"};
        for (const auto& tc : columns) {
          const std::string label = tau_c_label(tc);
          blocks += (blocks.empty() ? "" : ",") + (tc ? format_number(*tc) : std::string("off"));
          for (const char* col : {"mean_F", "ci_low", "ci_high", "mean_P"}) {
            header.push_back(std::string(col) + "_" + label);
          }
        }
        csv.comment("tau_c_blocks", blocks);
        csv.header(header);
        for (std::size_t i = 0; i < spec.omega0_values.size(); ++i) {
          std::vector<double> row{spec.omega0_values[i]};
          for (const auto& column : panel.columns) {
            const EnsembleResult& r = column.points[i];
            row.insert(row.end(), {r.mean_fidelity, r.ci_low, r.ci_high, r.mean_total_population});
          }
          csv.row(row);
        }
        csv.close();
        bundle.data_files.push_back(csv_path);

        if (opts.plots && spec.plots) {
          PlotSpec plot;
          plot.title = stem;
          plot.x_label = "omega0 [1/" + spec.time_unit + "]";
          plot.y_label = "fidelity";
          plot.y_min = 0.0;
          plot.y_max = 1.0;
          for (std::size_t c = 0; c < columns.size(); ++c) {
            PlotSeries s;
            s.label = columns[c] ? "tau_c=" + short_number(*columns[c]) : "no noise";
            s.x = spec.omega0_values;
            for (const auto& r : panel.columns[c].points) {
              s.y.push_back(r.mean_fidelity);
              if (columns[c]) {
                s.band_low.push_back(r.ci_low);
                s.band_high.push_back(r.ci_high);
              }
            }
            plot.series.push_back(std::move(s));
          }
          const fs::path svg = opts.out_dir / (stem + ".svg");
          write_svg_plot(svg, plot);
          bundle.plot_files.push_back(svg);
        }
      }
    }
  }
  bundle.manifest = write_manifest(opts.out_dir, "sweep", spec);
  return bundle;
}

OutputBundle cmd_noise_validate(const ExperimentSpec& spec, const RuntimeOptions& opts) {
  if (!spec.tau_c) throw ParseError(0, "noise-validate needs a correlation time (tau_c)");
  const OUParams params{spec.sigma, *spec.tau_c};
  params.validate();
  const double dt = spec.dt ? *spec.dt : params.tau_c / 10.0;
  check_step_rule(spec, dt, params.tau_c);
  const auto max_lag = static_cast<std::size_t>(std::llround(spec.max_lag_over_tau_c * params.tau_c / dt));

  const double half_range = params.sigma > 0.0 ? 5.0 * params.sigma : 1.0;
  std::vector<double> density(spec.hist_bins, 0.0);
  std::vector<double> autocorr(max_lag + 1, 0.0);
  std::vector<double> bin_centers;
  double mean = 0.0;
  double variance = 0.0;
  double ks = std::numeric_limits<double>::quiet_NaN();

  for (std::size_t it = 0; it < spec.iterations; ++it) {
    const std::vector<double> series =
        generate_series(params, spec.n_samples - 1, dt, derive_seed(spec.seed, it), StepRulePolicy::Ignore);
    const Histogram h = density_histogram(series, spec.hist_bins, -half_range, half_range);
    const SeriesStats stats = sample_stats(series, dt, max_lag);
    bin_centers = h.bin_centers;
    for (std::size_t b = 0; b < density.size(); ++b) density[b] += h.density[b];
    for (std::size_t k = 0; k < stats.autocorrelation.size(); ++k) autocorr[k] += stats.autocorrelation[k];
    mean += stats.mean;
    variance += stats.variance;
    if (it == 0 && params.sigma > 0.0) ks = ks_statistic_normal(series, params.sigma);
  }
  const double iters = static_cast<double>(spec.iterations);
  for (double& d : density) d /= iters;
  for (double& r : autocorr) r /= iters;
  mean /= iters;
  variance /= iters;

  OutputBundle bundle;
  bundle.out_dir = opts.out_dir;
  prepare_dir(opts.out_dir);

  const fs::path hist_path = opts.out_dir / "noise_histogram.csv";
  {
    CsvWriter csv(hist_path);
    describe_protocol(csv, spec);
    csv.comment("tau_c", format_number(params.tau_c));
    csv.comment("dt", format_number(dt));
    csv.comment("n_samples", std::to_string(spec.n_samples));
    csv.comment("iterations", std::to_string(spec.iterations));
    csv.comment("mean", format_number(mean));
    csv.comment("variance", format_number(variance));
    csv.comment("ks_statistic", format_number(ks));
    // Successive samples are AR(1) with coefficient E, so the KS reference uses
    // the effective size n (1 - E) / (1 + E).
    const double e = ou_decay_factor(dt, params.tau_c);
    const double n_eff = static_cast<double>(spec.n_samples) * (1.0 - e) / (1.0 + e);
    csv.comment("ks_effective_n", format_number(n_eff));
    csv.comment("ks_critical_1pct", format_number(ks_critical_value(n_eff)));
    csv.header({"bin_center", "density"});
    for (std::size_t b = 0; b < density.size(); ++b) csv.row({bin_centers[b], density[b]});
    csv.close();
  }
  bundle.data_files.push_back(hist_path);

  const fs::path acf_path = opts.out_dir / "noise_autocorrelation.csv";
  std::vector<double> lags, analytic;
  {
    CsvWriter csv(acf_path);
    describe_protocol(csv, spec);
    csv.comment("tau_c", format_number(params.tau_c));
    csv.comment("dt", format_number(dt));
    csv.header({"lag", "empirical_R", "analytic_R"});
    for (std::size_t k = 0; k < autocorr.size(); ++k) {
      const double lag = static_cast<double>(k) * dt;
      lags.push_back(lag);
      analytic.push_back(analytic_autocorrelation(lag, params));
      csv.row({lag, autocorr[k], analytic.back()});
    }
    csv.close();
  }
  bundle.data_files.push_back(acf_path);

  if (opts.plots && spec.plots) {
    std::vector<double> normal;
    for (double x : bin_centers) {
      normal.push_back(params.sigma > 0.0 ? std::exp(-x * x / (2.0 * params.sigma * params.sigma)) /
                                                (std::sqrt(2.0 * std::numbers::pi) * params.sigma)
                                          : 0.0);
    }
    PlotSpec hist{"noise histogram", "epsilon [1/" + spec.time_unit + "]", "density", 0.0, std::nullopt,
                  {{"simulated", bin_centers, density, {}, {}}, {"N(0, sigma^2)", bin_centers, normal, {}, {}}}};
    PlotSpec acf{"noise autocorrelation", "lag [" + spec.time_unit + "]", "R(lag)", std::nullopt, std::nullopt,
                 {{"simulated", lags, autocorr, {}, {}}, {"sigma^2 exp(-lag/tau_c)", lags, analytic, {}, {}}}};
    for (const auto& [name, plot] : {std::pair{"noise_histogram.svg", &hist}, std::pair{"noise_autocorrelation.svg", &acf}}) {
      write_svg_plot(opts.out_dir / name, *plot);
      bundle.plot_files.push_back(opts.out_dir / name);
    }
  }
  bundle.manifest = write_manifest(opts.out_dir, "noise-validate", spec);
  return bundle;
}

OutputBundle cmd_spectrum(const ExperimentSpec& spec, const RuntimeOptions& opts) {
  OutputBundle bundle;
  bundle.out_dir = opts.out_dir;
  prepare_dir(opts.out_dir);

  std::vector<double> omegas(spec.omega_points);
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    omegas[i] = spec.omega_max * static_cast<double>(i) / static_cast<double>(omegas.size() - 1);
  }
  std::vector<std::string> header{"omega"};
  std::vector<PlotSeries> series;
  for (double tc : spec.spectrum_tau_cs) {
    header.push_back("S_tc" + short_number(tc));
    PlotSeries s{"S, tau_c=" + short_number(tc), omegas, {}, {}, {}};
    for (double w : omegas) s.y.push_back(analytic_spectrum(w, {spec.sigma, tc}));
    series.push_back(std::move(s));
  }
  for (double tau : spec.delays) {
    header.push_back("Fd_tau" + short_number(tau));
    PlotSeries s{"F_d, tau=" + short_number(tau), omegas, {}, {}, {}};
    for (double w : omegas) s.y.push_back(cd_fourier_analytic(w, tau, 1.0));
    series.push_back(std::move(s));
  }

  const fs::path csv_path = opts.out_dir / "spectrum.csv";
  CsvWriter csv(csv_path);
  csv.comment("tool", "stirap-sim " + std::string(kToolVersion));
  csv.comment("sigma", format_number(spec.sigma));
  csv.comment("time_unit", spec.time_unit);
  csv.header(header);
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    std::vector<double> row{omegas[i]};
    for (const auto& s : series) row.push_back(s.y[i]);
    csv.row(row);
  }
  csv.close();
  bundle.data_files.push_back(csv_path);

  if (opts.plots && spec.plots) {
    PlotSpec plot{"noise spectra and counterdiabatic transforms", "omega [1/" + spec.time_unit + "]",
                  "S(omega), F_d(omega)", 0.0, std::nullopt, series};
    write_svg_plot(opts.out_dir / "spectrum.svg", plot);
    bundle.plot_files.push_back(opts.out_dir / "spectrum.svg");
  }
  bundle.manifest = write_manifest(opts.out_dir, "spectrum", spec);
  return bundle;
}

AreaReport cmd_area(const ExperimentSpec& spec) {
  const RunConfig run = spec.run_config();
  run.protocol.validate();
  AreaReport report;
  report.family = spec.family;
  report.window = simulation_window(run.protocol);
  const auto& protocol = run.protocol;
  report.pump = pulse_area([&](double t) { return sample_pulses(t, protocol).omega_p; }, report.window);
  report.stokes = pulse_area([&](double t) { return sample_pulses(t, protocol).omega_s; }, report.window);
  report.counterdiabatic =
      pulse_area([&](double t) { return sample_pulses(t, protocol).omega_d; }, report.window);
  return report;
}

std::string format_area_report(const AreaReport& r) {
  std::string out;
  out += "family = " + std::string(to_string(r.family)) + "\n";
  out += "window = [" + format_number(r.window.start) + ", " + format_number(r.window.end) + "]\n";
  out += "pump_area = " + format_number(r.pump) + "\n";
  out += "stokes_area = " + format_number(r.stokes) + "\n";
  out += "cd_area = " + format_number(r.counterdiabatic) + "\n";
  return out;
}

}  // namespace stirap
