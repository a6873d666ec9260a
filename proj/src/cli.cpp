#include "greenopt/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "greenopt/analytic2d.hpp"
#include "greenopt/io.hpp"
#include "greenopt/levelset.hpp"
#include "greenopt/merit.hpp"
#include "greenopt/optimize.hpp"
#include "greenopt/presets.hpp"

namespace greenopt {
namespace fs = std::filesystem;
namespace {

RunConfig resolve(const CliOptions& opts) {
  RunConfig cfg = load_config_file(opts.config);
  if (opts.out) cfg.output_dir = opts.out->string();
  if (opts.snapshot_every) {
    if (*opts.snapshot_every < 0) throw ConfigError("--snapshot-every must be >= 0", "snapshot_every");
    cfg.snapshot_every = *opts.snapshot_every;
  }
  return cfg;
}

// Runs `body`, mapping the error hierarchy onto exit codes.
template <typename Fn>
int guarded(std::ostream& err, Fn body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return exit_usage;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << '\n';
    return exit_solver_failure;
  } catch (const NoEligibleCellsError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_solver_failure;
  }
}

std::string fp(double v) { return format_double(v); }

}  // namespace

ValidationReport validation_sweep(const RunConfig& cfg) {
  const ValidationSettings& vs = cfg.validation;
  if (vs.separations.empty()) {
    throw ConfigError("validation.separations is empty", "validation.separations");
  }
  const Vec2 axis = (cfg.acceptor.position - cfg.donor.position).normalized();
  const double dx = cfg.grid.dx();
  ValidationReport rep;
  rep.reference_separation =
      vs.reference_separation > 0.0 ? vs.reference_separation : 0.5 * cfg.wavelength;

  const GreensField field = solve_green_column(PermittivityGrid::vacuum(cfg.grid), cfg.donor,
                                               cfg.solver);
  auto acceptor_at = [&](double rho) {
    DipoleSpec a = cfg.acceptor;
    a.position = cfg.donor.position + rho * axis;
    return a;
  };
  auto numeric = [&](double rho) { return ret_rate(field, acceptor_at(rho)); };
  auto analytic = [&](double rho) { return ret_rate_vacuum(acceptor_at(rho), cfg.donor); };

  rep.calibration = analytic(rep.reference_separation) / numeric(rep.reference_separation);
  rep.pass = true;
  for (double rho : vs.separations) {
    ValidationRow row;
    row.separation = rho;
    row.numeric = rep.calibration * numeric(rho);
    row.analytic = analytic(rho);
    row.relative_error = std::abs(row.numeric - row.analytic) / row.analytic;
    row.excluded = rho < 4.0 * dx;
    if (!row.excluded && !(row.relative_error <= vs.tolerance)) {
      if (rep.pass) rep.first_failure = rho;
      rep.pass = false;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

int cmd_validate(const CliOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = resolve(opts);
    const ValidationReport rep = validation_sweep(cfg);
    const fs::path dir = cfg.output_dir;
    fs::create_directories(dir);
    {
      std::ofstream csv(dir / "validation.csv");
      csv << "separation,numeric_rate,analytic_rate,relative_error,excluded\n";
      for (const ValidationRow& r : rep.rows) {
        csv << fp(r.separation) << ',' << fp(r.numeric) << ',' << fp(r.analytic) << ','
            << fp(r.relative_error) << ',' << (r.excluded ? 1 : 0) << '\n';
      }
    }
    double worst = 0.0;
    for (const ValidationRow& r : rep.rows) {
      if (!r.excluded) worst = std::max(worst, r.relative_error);
    }
    nlohmann::json res = {{"reference_separation", rep.reference_separation},
                          {"calibration", rep.calibration},
                          {"max_relative_error", worst},
                          {"pass", rep.pass}};
    write_metadata(dir / "metadata.json", cfg, "validate", res.dump());
    out << "validate: " << rep.rows.size() << " separations, max relative error " << worst
        << " (tolerance " << cfg.validation.tolerance << ")\n";
    if (!rep.pass) {
      err << "validate: relative error exceeds tolerance at separation " << *rep.first_failure
          << " um\n";
      return int{exit_criteria_failed};
    }
    return int{exit_ok};
  });
}

int cmd_baseline(const CliOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = resolve(opts);
    PresetSpec preset;
    if (opts.preset) {
      preset = default_preset(preset_kind_from_string(*opts.preset), cfg.donor, cfg.acceptor,
                              cfg.wavelength);
    } else if (cfg.initial_design) {
      preset = *cfg.initial_design;
      if (preset.keep_clear.empty()) preset.keep_clear = atom_positions(cfg);
    } else {
      throw ConfigError("baseline needs --preset or design.initial", "preset");
    }
    const CellBox interior = interior_box(cfg.grid, cfg.solver);
    const PermittivityGrid eps = generate(preset, cfg.grid, std::pair{interior.lo, interior.hi});
    const double fp_value = purcell_factor(eps, cfg.donor, cfg.acceptor, cfg.solver);

    const fs::path dir = cfg.output_dir;
    const std::string name = to_string(preset.kind);
    write_design(dir / ("baseline_" + name), eps);
    {
      std::ofstream res(dir / ("baseline_" + name + ".txt"));
      res << "preset,purcell\n" << name << ',' << fp(fp_value) << '\n';
    }
    RunConfig meta = cfg;
    meta.initial_design = preset;
    write_metadata(dir / "metadata.json", meta, "baseline",
                   nlohmann::json{{"preset", name}, {"purcell", fp_value}}.dump());
    out << "baseline " << name << ": F_p = " << fp_value << '\n';
    return int{exit_ok};
  });
}

int cmd_optimize(const CliOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = resolve(opts);
    const fs::path dir = cfg.output_dir;
    fs::create_directories(dir);

    if (cfg.scheme == DesignScheme::levelset) {
      std::ofstream csv(dir / "levelset.csv");
      csv << "step,dt,predicted,gamma_before,gamma,purcell,backtracks,accepted,material_cells\n";
      const LevelSetResult r = run_levelset(cfg, [&](const LevelSetStep& s, const PermittivityGrid& eps) {
        csv << s.step << ',' << fp(s.dt) << ',' << fp(s.predicted) << ',' << fp(s.gamma_before)
            << ',' << fp(s.gamma) << ',' << fp(s.purcell) << ',' << s.backtracks << ','
            << (s.accepted ? 1 : 0) << ',' << s.material_cells << '\n';
        csv.flush();
        if (cfg.snapshot_every > 0 && s.step % cfg.snapshot_every == 0) {
          std::ostringstream stem;
          stem << "design_" << std::setw(4) << std::setfill('0') << s.step;
          write_design(dir / stem.str(), eps);
        }
      });
      write_design(dir / "design_final", r.eps);
      const double final_fp = r.steps.empty() ? r.initial_gamma / r.gamma0 : r.steps.back().purcell;
      write_metadata(dir / "metadata.json", cfg, "optimize",
                     nlohmann::json{{"scheme", "levelset"},
                                    {"initial_purcell", r.initial_gamma / r.gamma0},
                                    {"final_purcell", final_fp}}
                         .dump());
      out << "final F_p = " << final_fp << '\n';
      return int{exit_ok};
    }

    OptimizationState start = initial_state(cfg);
    write_design(dir / "design_0000", start.eps);
    const AdditiveResult r = run_additive(std::move(start), cfg, [&](const OptimizationState& s) {
      if (cfg.snapshot_every > 0 && s.iteration % cfg.snapshot_every == 0) {
        std::ostringstream stem;
        stem << "design_" << std::setw(4) << std::setfill('0') << s.iteration;
        write_design(dir / stem.str(), s.eps);
        write_history_csv(dir / "history.csv", s.history);
      }
    });
    write_history_csv(dir / "history.csv", r.state.history);
    write_design(dir / "design_final", r.state.eps);
    write_metadata(dir / "metadata.json", cfg, "optimize",
                   nlohmann::json{{"scheme", "additive"},
                                  {"iterations", r.state.iteration},
                                  {"stop_reason", to_string(r.reason)},
                                  {"stop_message", r.message},
                                  {"gamma0", r.state.gamma0},
                                  {"final_purcell", r.state.purcell()}}
                       .dump());
    out << "stopped after " << r.state.iteration << " iterations (" << to_string(r.reason)
        << ")\nfinal F_p = " << r.state.purcell() << '\n';
    if (r.reason == StopReason::solver_failure) {
      err << "solver failure: " << r.message << '\n';
      return int{exit_solver_failure};
    }
    return int{exit_ok};
  });
}

int cmd_deltamap(const CliOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = resolve(opts);
    const OptimizationState s = initial_state(cfg);
    const DeltaFMap map = current_delta_map(s, cfg);
    const fs::path dir = cfg.output_dir;
    write_delta_map(dir / "deltamap", map);
    write_design(dir / "design", s.eps);
    write_field_magnitude(dir / "field_donor", *s.field_donor);
    const CellIndex best = *map.argmax();
    write_metadata(dir / "metadata.json", cfg, "deltamap",
                   nlohmann::json{{"argmax", {best.i, best.j}},
                                  {"max_delta_f", *map.value(best)},
                                  {"eligible_cells", map.eligible_count()},
                                  {"purcell", s.purcell()}}
                       .dump());
    out << "argmax cell (" << best.i << ", " << best.j << "), delta_f = " << *map.value(best)
        << ", eligible cells " << map.eligible_count() << '\n';
    return int{exit_ok};
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inverse design of dielectric environments for dipole-dipole energy transfer"};
  app.require_subcommand(1);
  CliOptions opts;
  std::string config;
  std::string out_dir;
  std::string preset;
  int snapshot_every = -1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "JSON run configuration")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
  };
  CLI::App* validate = app.add_subcommand("validate", "vacuum solver against the closed form");
  CLI::App* baseline = app.add_subcommand("baseline", "Purcell factor of a hand-designed preset");
  CLI::App* optimize = app.add_subcommand("optimize", "run the configured design loop");
  CLI::App* deltamap = app.add_subcommand("deltamap", "dump the sensitivity map of the start design");
  for (CLI::App* sub : {validate, baseline, optimize, deltamap}) add_common(sub);
  baseline->add_option("--preset", preset,
                       "ring_resonator | circle | parabola | half_wave_cavity | vacuum_validation");
  optimize->add_option("--snapshot-every", snapshot_every, "design snapshot cadence (0 = off)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? int{exit_ok} : int{exit_usage};
  }
  opts.config = config;
  if (!out_dir.empty()) opts.out = out_dir;
  if (!preset.empty()) opts.preset = preset;
  if (snapshot_every >= 0) opts.snapshot_every = snapshot_every;

  if (validate->parsed()) return cmd_validate(opts, out, err);
  if (baseline->parsed()) return cmd_baseline(opts, out, err);
  if (optimize->parsed()) return cmd_optimize(opts, out, err);
  return cmd_deltamap(opts, out, err);
}

}  // namespace greenopt
