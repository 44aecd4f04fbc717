#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pcsmri/acquisition.hpp"
#include "pcsmri/sampling.hpp"

namespace pcsmri {

enum class PhantomKind
{
  shepp_logan,
  resolution_bars,
  smooth_blobs
};

std::string to_string(PhantomKind kind);
PhantomKind parse_phantom_kind(std::string_view name);

// Resolution-bar layout: groups of three vertical bars of width w separated
// by gaps of width w, for w = 1, 2, 3, ... The first group starts at column
// kBarMargin, each following group kBarGroupGap columns after the previous
// one ends (a group spans 5w columns). Bars span rows [H/4, 3H/4). Groups
// that would cross the right margin are dropped.
inline constexpr std::size_t kBarMargin = 4;
inline constexpr std::size_t kBarGroupGap = 4;

/// Bar-group widths and their start columns for a given image width.
std::vector<std::pair<std::size_t, std::size_t>> resolution_bar_groups(std::size_t width);

/// Real nonnegative image in [0, 1] with peak exactly 1, zero phase unless
/// `phase_ramp` adds a smooth linear phase. Throws ConfigError for dims < 16.
ComplexImage make_phantom(std::size_t height, std::size_t width, PhantomKind kind, std::uint64_t seed,
                          bool phase_ramp = false);

/// Smooth complex coil profiles: a constant floor plus a Gaussian bump
/// centered on a ring of equiangular positions, times a slowly varying phase.
/// Unnormalized; RSS > 0 everywhere.
std::vector<ComplexImage> make_coil_profiles(std::size_t height, std::size_t width, std::size_t coils,
                                             std::uint64_t seed);

struct CaseSpec
{
  std::string name = "case";
  std::size_t height = 128;
  std::size_t width = 128;
  PhantomKind phantom = PhantomKind::shepp_logan;
  bool phase_ramp = false;
  std::size_t coils = 4;
  Protocol protocol{"custom", MaskKind::random, 4.0, 24};
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

// Grid width the organ protocols are specified for.
inline constexpr double kProtocolWidth = 320.0;

/// Preset for "brain", "knee" or "cardiac": the organ's sampling protocol
/// at desk-scale size. Below 320 columns the ACS band shrinks in proportion
/// (10 lines at 128), so that it still fits the R=6 and R=8 line budgets.
/// Phantoms: brain = Shepp-Logan, knee = smooth blobs, cardiac = Shepp-Logan
/// with a phase ramp.
CaseSpec case_preset(std::string_view organ, std::size_t size = 128, std::uint64_t seed = 0);

struct SimulatedCase
{
  ComplexImage x_gt;
  SensitivitySet sens;
  MultiCoilKSpace y;
  SamplingMask mask;
};

/// Deterministic in `spec.seed`; phantom, coils, mask and noise each get their
/// own stream derived from it.
SimulatedCase simulate_case(const CaseSpec &spec);

} // namespace pcsmri
