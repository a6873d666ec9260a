#include "greenopt/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace greenopt {
namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

std::filesystem::path with_suffix(const std::filesystem::path& stem, const char* suffix) {
  return stem.string() + suffix;
}

void check_size(const Grid2D& grid, std::size_t n) {
  if (n != grid.cell_count()) throw DomainError("output: value count does not match the grid");
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_grid_csv(const std::filesystem::path& path, const Grid2D& grid,
                    std::span<const double> values, const CellMask* mask) {
  check_size(grid, values.size());
  std::ofstream out = open_for_write(path);
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      if (i > 0) out << ',';
      const CellIndex c{i, j};
      if (mask && !(*mask)(c)) {
        out << "masked";
      } else {
        out << format_double(values[grid.linear(c)]);
      }
    }
    out << '\n';
  }
}

void write_pgm(const std::filesystem::path& path, const Grid2D& grid,
               std::span<const double> values, const CellMask* mask) {
  check_size(grid, values.size());
  double lo = INFINITY;
  double hi = -INFINITY;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (mask && !(*mask)[k]) continue;
    if (!std::isfinite(values[k])) continue;
    lo = std::min(lo, values[k]);
    hi = std::max(hi, values[k]);
  }
  const double span = hi > lo ? hi - lo : 1.0;
  std::ofstream out = open_for_write(path);
  out << "P2\n" << grid.nx() << ' ' << grid.ny() << "\n255\n";
  for (int j = grid.ny() - 1; j >= 0; --j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const CellIndex c{i, j};
      const double v = values[grid.linear(c)];
      int level = 0;
      if ((!mask || (*mask)(c)) && std::isfinite(v) && std::isfinite(lo)) {
        level = static_cast<int>(std::lround(255.0 * (v - lo) / span));
      }
      out << level << (i + 1 < grid.nx() ? ' ' : '\n');
    }
  }
}

void write_design(const std::filesystem::path& stem, const PermittivityGrid& eps) {
  write_grid_csv(with_suffix(stem, ".csv"), eps.grid(), eps.values());
  write_pgm(with_suffix(stem, ".pgm"), eps.grid(), eps.values());
}

void write_delta_map(const std::filesystem::path& stem, const DeltaFMap& map) {
  write_grid_csv(with_suffix(stem, ".csv"), map.grid, map.values, &map.mask);
  write_pgm(with_suffix(stem, ".pgm"), map.grid, map.values, &map.mask);
}

void write_field_magnitude(const std::filesystem::path& stem, const GreensField& field) {
  std::vector<double> mag(field.e_field.size());
  for (std::size_t k = 0; k < mag.size(); ++k) mag[k] = field.e_field[k].norm();
  write_grid_csv(with_suffix(stem, ".csv"), field.grid, mag);
  write_pgm(with_suffix(stem, ".pgm"), field.grid, mag);
}

std::string history_csv(std::span<const HistoryEntry> history) {
  std::ostringstream out;
  out << "iteration,cell_i,cell_j,delta_f,gamma,purcell\n";
  for (const HistoryEntry& h : history) {
    out << h.iteration << ',' << h.cell.i << ',' << h.cell.j << ',' << format_double(h.delta_f)
        << ',' << format_double(h.gamma) << ',' << format_double(h.purcell) << '\n';
  }
  return out.str();
}

void write_history_csv(const std::filesystem::path& path, std::span<const HistoryEntry> history) {
  std::ofstream out = open_for_write(path);
  out << history_csv(history);
}

void write_metadata(const std::filesystem::path& path, const RunConfig& cfg,
                    const std::string& command, const std::string& extra_json) {
  nlohmann::json doc;
  doc["command"] = command;
  doc["config"] = nlohmann::json::parse(serialize(cfg));
  const Vec2 lo = cfg.grid.lower();
  const Vec2 hi = cfg.grid.upper();
  doc["domain"] = {{"lower", {lo.x(), lo.y()}},
                   {"upper", {hi.x(), hi.y()}},
                   {"size", {hi.x() - lo.x(), hi.y() - lo.y()}}};
#ifdef GREENOPT_HAVE_UMFPACK
  doc["linear_solver"] = "umfpack";
#else
  doc["linear_solver"] = "eigen_sparse_lu";
#endif
  if (!extra_json.empty()) doc["results"] = nlohmann::json::parse(extra_json);
  std::ofstream out = open_for_write(path);
  out << doc.dump(2) << '\n';
}

}  // namespace greenopt
