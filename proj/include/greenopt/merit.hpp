#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "greenopt/grid.hpp"
#include "greenopt/solver.hpp"

namespace greenopt {

/// Per-cell eligibility flags over a grid.
class CellMask {
 public:
  CellMask() = default;
  explicit CellMask(const Grid2D& grid, bool value = false)
      : grid_(grid), flags_(grid.cell_count(), value ? 1 : 0) {}

  const Grid2D& grid() const noexcept { return grid_; }
  bool operator()(CellIndex c) const noexcept { return flags_[grid_.linear(c)] != 0; }
  bool operator[](std::size_t k) const noexcept { return flags_[k] != 0; }
  void set(CellIndex c, bool v) { flags_[grid_.linear(c)] = v ? 1 : 0; }
  std::size_t count() const noexcept;

  bool operator==(const CellMask&) const = default;

 private:
  Grid2D grid_;
  std::vector<std::uint8_t> flags_;
};

/// Predicted merit change per unit permittivity increase per unit area for a
/// small inclusion at each cell. Ineligible cells hold no value.
struct DeltaFMap {
  Grid2D grid;
  std::vector<double> values;  // meaningful only where mask is set
  CellMask mask;

  std::optional<double> value(CellIndex c) const {
    if (!mask(c)) return std::nullopt;
    return values[grid.linear(c)];
  }
  std::size_t eligible_count() const { return mask.count(); }

  /// Largest eligible value; ties go to the lowest row-major index.
  std::optional<CellIndex> argmax() const;
};

/// d_A . G(r_A, r_D) . d_D recovered from the donor field.
/// Throws DomainError on frequency mismatch.
Complex transfer_amplitude(const GreensField& field_D, const DipoleSpec& acceptor);

/// Transfer rate 2 pi w^4 |d_A . G . d_D|^2 (unit dipoles, internal units).
double ret_rate(const GreensField& field_D, const DipoleSpec& acceptor);

/// Gamma on `eps` over Gamma on the vacuum grid with the same discretisation.
double purcell_factor(const PermittivityGrid& eps, const DipoleSpec& donor,
                      const DipoleSpec& acceptor, const SolverParams& params);

/// Transfer-rate sensitivity map,
///   dF(s) = 4 pi w^6 Re{ conj(d_A.G(r_A,r_D).d_D) [d_A.G^T(s,r_A)].[G(s,r_D).d_D] },
/// with the field product integrated over the Yee edges of cell s so that
/// dF(s) eps_delta dx^2 is the exact first-order change of `ret_rate`.
/// Throws DomainError on frequency mismatch, NoEligibleCellsError for an
/// all-false mask.
DeltaFMap ret_delta_map(const GreensField& field_D, const GreensField& field_A,
                        const DipoleSpec& donor, const DipoleSpec& acceptor, const CellMask& mask);

/// Spontaneous decay rate 2 w^2 d.Im G(r, r).d of `atom`, with the vacuum
/// self-term taken analytically and the environment's contribution from the
/// difference between `field` and a vacuum run `vacuum_field` of the same
/// source.
double decay_rate(const GreensField& field, const GreensField& vacuum_field,
                  const DipoleSpec& atom);

/// Decay-rate sensitivity map dF(s) = 2 w^4 Im{ [d.G^T(s,r)].[G(s,r).d] }.
DeltaFMap decay_delta_map(const GreensField& field, const DipoleSpec& atom, const CellMask& mask);

/// Cells covered by a block of `block_size` x `block_size` cells anchored at
/// `anchor`; the anchor sits at the centre, or just below and left of it for
/// even sizes.
std::vector<CellIndex> block_cells(CellIndex anchor, int block_size);

/// Anchors where a new block may be placed: the whole block lies inside the
/// interior box, covers only vacuum cells, and keeps every cell at least
/// `exclusion_radius` from each atom.
CellMask placement_mask(const PermittivityGrid& eps, const CellBox& interior,
                        std::span<const Vec2> atoms, double exclusion_radius, int block_size);

/// Cells (not anchors) that may hold material: inside the interior and at
/// least `exclusion_radius` from each atom.
CellMask material_mask(const Grid2D& grid, const CellBox& interior, std::span<const Vec2> atoms,
                       double exclusion_radius);

}  // namespace greenopt
