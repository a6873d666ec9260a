#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "greenopt/config.hpp"
#include "greenopt/merit.hpp"
#include "greenopt/optimize.hpp"

namespace greenopt {

/// ny rows of nx comma-separated values, row j = 0 first. Cells with a false
/// `mask` entry are written as the literal `masked`.
void write_grid_csv(const std::filesystem::path& path, const Grid2D& grid,
                    std::span<const double> values, const CellMask* mask = nullptr);

/// Plain-text grayscale image (P2), top row = largest j. Values are mapped
/// linearly from [min, max] to [0, 255]; masked cells are written as 0.
void write_pgm(const std::filesystem::path& path, const Grid2D& grid,
               std::span<const double> values, const CellMask* mask = nullptr);

void write_design(const std::filesystem::path& stem, const PermittivityGrid& eps);
void write_delta_map(const std::filesystem::path& stem, const DeltaFMap& map);

/// |E| of a solved field, for inspection.
void write_field_magnitude(const std::filesystem::path& stem, const GreensField& field);

/// iteration,cell_i,cell_j,delta_f,gamma,purcell with round-trip precision.
void write_history_csv(const std::filesystem::path& path, std::span<const HistoryEntry> history);
std::string history_csv(std::span<const HistoryEntry> history);

/// Resolved config plus free-form run facts, as JSON. `extra_json` must be a
/// JSON object (or empty).
void write_metadata(const std::filesystem::path& path, const RunConfig& cfg,
                    const std::string& command, const std::string& extra_json = {});

/// Shortest text that parses back to the same double.
std::string format_double(double v);

}  // namespace greenopt
