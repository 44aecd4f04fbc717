#include "pcsmri/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pcsmri/rng.hpp"

namespace pcsmri {

namespace {

void check_common(std::size_t height, std::size_t width, double acceleration, std::size_t acs_width)
{
  if (height == 0 || width == 0)
    throw ConfigError("mask: zero dimension");
  if (!(acceleration >= 1.0) || !std::isfinite(acceleration))
    throw ConfigError("mask: acceleration must be a finite value >= 1");
  if (acs_width > width)
    throw ConfigError("mask: acs_width exceeds width");
}

SamplingMask blank(std::size_t height, std::size_t width, double acceleration, std::size_t acs_width,
                   MaskKind kind, std::uint64_t seed)
{
  SamplingMask m;
  m.height = height;
  m.width = width;
  m.line_selected.assign(width, 0);
  m.acs_width = acs_width;
  m.acceleration = acceleration;
  m.kind = kind;
  m.seed = seed;
  const std::size_t begin = m.acs_begin();
  std::fill_n(m.line_selected.begin() + static_cast<std::ptrdiff_t>(begin), acs_width, 1);
  return m;
}

} // namespace

std::string to_string(MaskKind kind)
{
  return kind == MaskKind::random ? "random" : "equispaced";
}

MaskKind parse_mask_kind(std::string_view name)
{
  if (name == "random")
    return MaskKind::random;
  if (name == "equispaced")
    return MaskKind::equispaced;
  throw ConfigError("unknown mask kind '" + std::string(name) + "'");
}

std::size_t SamplingMask::selected_count() const
{
  return static_cast<std::size_t>(std::count(line_selected.begin(), line_selected.end(), 1));
}

RealImage SamplingMask::to_grid() const
{
  RealImage g(height, width);
  for (std::size_t r = 0; r < height; ++r)
    for (std::size_t c = 0; c < width; ++c)
      g(r, c) = line_selected[c] ? 1.0 : 0.0;
  return g;
}

SamplingMask make_random_mask(std::size_t height, std::size_t width, double acceleration,
                              std::size_t acs_width, std::uint64_t seed)
{
  check_common(height, width, acceleration, acs_width);
  const auto budget = static_cast<std::size_t>(std::llround(static_cast<double>(width) / acceleration));
  if (budget < acs_width)
    throw ConfigError("mask: line budget round(width/R) = " + std::to_string(budget) +
                      " is smaller than acs_width " + std::to_string(acs_width));

  SamplingMask m = blank(height, width, acceleration, acs_width, MaskKind::random, seed);
  std::vector<std::size_t> candidates;
  candidates.reserve(width - acs_width);
  for (std::size_t c = 0; c < width; ++c)
    if (!m.line_selected[c])
      candidates.push_back(c);

  // Partial Fisher-Yates: the first (budget - acs) entries are a uniform draw
  // without replacement.
  Rng rng(seed);
  const std::size_t extra = budget - acs_width;
  for (std::size_t i = 0; i < extra; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, candidates.size() - 1);
    std::swap(candidates[i], candidates[pick(rng)]);
    m.line_selected[candidates[i]] = 1;
  }
  return m;
}

SamplingMask make_equispaced_mask(std::size_t height, std::size_t width, double acceleration,
                                  std::size_t acs_width, std::uint64_t seed,
                                  std::optional<std::size_t> forced_offset)
{
  check_common(height, width, acceleration, acs_width);
  const auto stride = static_cast<std::size_t>(std::llround(acceleration));
  SamplingMask m = blank(height, width, acceleration, acs_width, MaskKind::equispaced, seed);

  std::size_t offset = 0;
  if (forced_offset) {
    if (*forced_offset >= stride)
      throw ConfigError("mask: offset must lie in [0, R)");
    offset = *forced_offset;
  } else {
    Rng rng(seed);
    offset = std::uniform_int_distribution<std::size_t>(0, stride - 1)(rng);
  }
  for (std::size_t c = offset; c < width; c += stride)
    m.line_selected[c] = 1;
  return m;
}

KSpaceGrid apply_mask(const KSpaceGrid &ksp, const SamplingMask &mask)
{
  require_same_shape(ksp.shape(), mask.shape(), "apply_mask");
  KSpaceGrid out(ksp.shape());
  for (std::size_t r = 0; r < ksp.height(); ++r)
    for (std::size_t c = 0; c < ksp.width(); ++c)
      if (mask.line_selected[c])
        out(r, c) = ksp(r, c);
  return out;
}

Protocol protocol_preset(std::string_view organ)
{
  if (organ == "brain")
    return {"brain", MaskKind::equispaced, 4.0, 24};
  if (organ == "knee")
    return {"knee", MaskKind::random, 6.0, 24};
  if (organ == "cardiac")
    return {"cardiac", MaskKind::random, 8.0, 24};
  throw ConfigError("unknown protocol preset '" + std::string(organ) + "'");
}

std::vector<std::string> protocol_names()
{
  return {"brain", "cardiac", "knee"};
}

SamplingMask make_mask(const Protocol &protocol, std::size_t height, std::size_t width, std::uint64_t seed)
{
  return protocol.kind == MaskKind::random
           ? make_random_mask(height, width, protocol.acceleration, protocol.acs_width, seed)
           : make_equispaced_mask(height, width, protocol.acceleration, protocol.acs_width, seed);
}

} // namespace pcsmri
