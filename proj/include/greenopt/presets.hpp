#pragma once

#include <optional>
#include <string>
#include <vector>

#include "greenopt/grid.hpp"

namespace greenopt {

enum class PresetKind { ring_resonator, circle, parabola, half_wave_cavity, vacuum_validation };

std::string to_string(PresetKind kind);
PresetKind preset_kind_from_string(const std::string& name);

/// Hand-designed baseline geometry. Positions are in um, angles in radians.
/// The geometry frame has its x axis along `axis_angle`.
///
///  ring_resonator     annulus of mean radius `radius` and width `thickness`
///                     centred on `center`
///  circle             solid disk of radius `radius` centred on `center`
///  parabola           mirror y'^2 = 4 f (x' + f) about the focus `center`,
///                     opening along +x', `thickness` thick, |y'| <= `aperture`
///  half_wave_cavity   two slabs of `thickness` parallel to the axis with an
///                     inner gap `cavity_length`, each `aperture` long
///
/// Mirrors of the parabola and the cavity repeat `periods` times outward with
/// a pitch of twice `thickness`.
///  vacuum_validation  eps = 1 everywhere
struct PresetSpec {
  PresetKind kind = PresetKind::vacuum_validation;
  Vec2 center = Vec2::Zero();
  double axis_angle = 0.0;
  double radius = 1.0;
  double thickness = 0.25;
  double focal_length = 1.0;
  double aperture = 3.0;
  double cavity_length = 1.0;
  int periods = 1;
  double permittivity = 12.0;
  /// Points that must stay in vacuum (the atoms).
  std::vector<Vec2> keep_clear;

  bool operator==(const PresetSpec&) const = default;
};

/// Rasterises the preset by cell-centre membership. Throws DomainError when
/// material falls outside `allowed` (the non-absorbing interior) or covers
/// a keep-clear point.
PermittivityGrid generate(const PresetSpec& preset, const Grid2D& grid,
                          std::optional<std::pair<CellIndex, CellIndex>> allowed = std::nullopt);

/// True when cell centre `p` lies inside the preset's material.
bool preset_contains(const PresetSpec& preset, const Vec2& p);

/// Default parameters for `kind`, placed relative to the two atoms at
/// wavelength `wavelength` (um). These are the tuned baselines.
PresetSpec default_preset(PresetKind kind, const DipoleSpec& donor, const DipoleSpec& acceptor,
                          double wavelength);

}  // namespace greenopt
