#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "greenopt/grid.hpp"
#include "greenopt/presets.hpp"
#include "greenopt/solver_params.hpp"

namespace greenopt {

enum class DesignScheme { additive, levelset };

std::string to_string(DesignScheme s);

struct LevelSetSettings {
  Vec2 seed_center = Vec2::Zero();
  double seed_radius = 0.5;
  int steps = 10;
  int reinit_every = 5;
  double band_cells = 2.0;
  double cfl = 0.5;
  int max_backtracks = 4;
  bool operator==(const LevelSetSettings&) const = default;
};

struct ValidationSettings {
  /// Donor-acceptor separations (um) swept by `validate`.
  std::vector<double> separations;
  /// Calibration separation; 0 selects half a wavelength.
  double reference_separation = 0.0;
  double tolerance = 0.05;
  bool operator==(const ValidationSettings&) const = default;
};

struct RunConfig {
  Grid2D grid;
  double wavelength = 0.0;  // um
  DipoleSpec donor;
  DipoleSpec acceptor;

  int block_size = 2;
  double exclusion_radius = 1.0;
  double alpha_n = 1.0;
  double eps_inclusion = 12.0;
  int max_iterations = 250;
  int snapshot_every = 25;
  DesignScheme scheme = DesignScheme::additive;
  std::optional<PresetSpec> initial_design;

  LevelSetSettings levelset;
  ValidationSettings validation;
  SolverParams solver;
  std::string output_dir = "out";

  double omega() const { return omega_from_wavelength(wavelength); }

  /// Throws ConfigError naming the offending field.
  void validate() const;

  bool operator==(const RunConfig&) const = default;
};

/// Parses a JSON config document. Throws ConfigError on malformed text or
/// invalid/missing fields.
RunConfig load_config(std::string_view text);
RunConfig load_config_file(const std::filesystem::path& path);

/// JSON text that `load_config` parses back to an equal RunConfig.
std::string serialize(const RunConfig& cfg);

}  // namespace greenopt
