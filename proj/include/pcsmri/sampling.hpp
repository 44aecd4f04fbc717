#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcsmri/tensor.hpp"

namespace pcsmri {

enum class MaskKind
{
  random,
  equispaced
};

std::string to_string(MaskKind kind);
MaskKind parse_mask_kind(std::string_view name);

/// 1D Cartesian undersampling pattern. Phase encoding runs along the grid
/// columns: column c is either acquired for every row or not at all, so the
/// 2D mask is the 0/1 diagonal of U^H U replicated down each column.
struct SamplingMask
{
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<std::uint8_t> line_selected; // length width
  std::size_t acs_width = 0;
  double acceleration = 1.0;
  MaskKind kind = MaskKind::random;
  std::uint64_t seed = 0;

  Shape shape() const { return {height, width}; }
  std::size_t selected_count() const;
  bool selected(std::size_t column) const { return line_selected[column] != 0; }
  /// First column of the centered ACS band; the band is [begin, begin + acs_width).
  std::size_t acs_begin() const { return acs_band_begin(width, acs_width); }
  RealImage to_grid() const;

  static std::size_t acs_band_begin(std::size_t width, std::size_t acs_width)
  {
    return width / 2 - acs_width / 2;
  }
};

/// round(width / R) lines; ACS lines count toward the budget, the rest are drawn
/// uniformly without replacement from the non-ACS columns.
SamplingMask make_random_mask(std::size_t height, std::size_t width, double acceleration,
                              std::size_t acs_width, std::uint64_t seed);

/// Columns offset, offset + R, offset + 2R, ... with offset uniform in [0, R),
/// then the ACS band overlaid. The realized ratio can exceed 1/R by up to
/// acs_width / width. R is rounded to an integer stride.
/// `forced_offset` bypasses the random draw.
SamplingMask make_equispaced_mask(std::size_t height, std::size_t width, double acceleration,
                                  std::size_t acs_width, std::uint64_t seed,
                                  std::optional<std::size_t> forced_offset = std::nullopt);

/// Zero every bin in an unselected column; selected bins are copied unchanged.
KSpaceGrid apply_mask(const KSpaceGrid &ksp, const SamplingMask &mask);

// Organ protocol presets: brain = equispaced R=4, knee = random R=6,
// cardiac = random R=8, all with a 24-line ACS band. The cardiac pattern is a
// random Cartesian stand-in.
struct Protocol
{
  std::string organ;
  MaskKind kind;
  double acceleration;
  std::size_t acs_width;
};

Protocol protocol_preset(std::string_view organ);
std::vector<std::string> protocol_names();

SamplingMask make_mask(const Protocol &protocol, std::size_t height, std::size_t width,
                       std::uint64_t seed);

} // namespace pcsmri
