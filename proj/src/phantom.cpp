#include "pcsmri/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pcsmri/rng.hpp"

namespace pcsmri {

namespace {

struct Ellipse
{
  double intensity, a, b, x0, y0, phi_deg;
};

// Modified (higher-contrast) Shepp-Logan head.
constexpr Ellipse kSheppLogan[] = {
  {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},        {-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
  {-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0}, {-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0},
  {0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0},    {0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0},
  {0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0},    {0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0},
  {0.1, 0.0230, 0.0230, 0.0, -0.606, 0.0},  {0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0},
};

// Normalized coordinates in [-1, 1], y pointing up.
double norm_x(std::size_t c, std::size_t w) { return (static_cast<double>(c) - 0.5 * (w - 1.0)) / (0.5 * w); }
double norm_y(std::size_t r, std::size_t h) { return (0.5 * (h - 1.0) - static_cast<double>(r)) / (0.5 * h); }

RealImage shepp_logan(std::size_t h, std::size_t w)
{
  RealImage img(h, w);
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c) {
      const double x = norm_x(c, w), y = norm_y(r, h);
      double v = 0.0;
      for (const auto &e : kSheppLogan) {
        const double phi = e.phi_deg * std::numbers::pi / 180.0;
        const double xr = (x - e.x0) * std::cos(phi) + (y - e.y0) * std::sin(phi);
        const double yr = -(x - e.x0) * std::sin(phi) + (y - e.y0) * std::cos(phi);
        if ((xr * xr) / (e.a * e.a) + (yr * yr) / (e.b * e.b) <= 1.0)
          v += e.intensity;
      }
      img(r, c) = std::clamp(v, 0.0, 1.0);
    }
  return img;
}

RealImage resolution_bars(std::size_t h, std::size_t w)
{
  RealImage img(h, w);
  for (const auto &[bar, start] : resolution_bar_groups(w))
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t c = start + 2 * k * bar; c < start + (2 * k + 1) * bar; ++c)
        for (std::size_t r = h / 4; r < 3 * h / 4; ++r)
          img(r, c) = 1.0;
  return img;
}

RealImage smooth_blobs(std::size_t h, std::size_t w, std::uint64_t seed)
{
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double dim = static_cast<double>(std::min(h, w));
  RealImage img(h, w);
  for (int k = 0; k < 6; ++k) {
    const double cy = (0.25 + 0.5 * unit(rng)) * h;
    const double cx = (0.25 + 0.5 * unit(rng)) * w;
    const double sigma = (0.05 + 0.10 * unit(rng)) * dim;
    const double amp = 0.3 + 0.7 * unit(rng);
    for (std::size_t r = 0; r < h; ++r)
      for (std::size_t c = 0; c < w; ++c) {
        const double d2 = (r - cy) * (r - cy) + (c - cx) * (c - cx);
        img(r, c) += amp * std::exp(-d2 / (2.0 * sigma * sigma));
      }
  }
  return img;
}

} // namespace

std::string to_string(PhantomKind kind)
{
  switch (kind) {
  case PhantomKind::shepp_logan:
    return "shepp_logan";
  case PhantomKind::resolution_bars:
    return "resolution_bars";
  case PhantomKind::smooth_blobs:
    return "smooth_blobs";
  }
  return "unknown";
}

PhantomKind parse_phantom_kind(std::string_view name)
{
  for (auto k : {PhantomKind::shepp_logan, PhantomKind::resolution_bars, PhantomKind::smooth_blobs})
    if (name == to_string(k))
      return k;
  throw ConfigError("unknown phantom kind '" + std::string(name) + "'");
}

std::vector<std::pair<std::size_t, std::size_t>> resolution_bar_groups(std::size_t width)
{
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  std::size_t start = kBarMargin;
  for (std::size_t bar = 1;; ++bar) {
    if (start + 5 * bar + kBarMargin > width)
      break;
    groups.emplace_back(bar, start);
    start += 5 * bar + kBarGroupGap;
  }
  return groups;
}

ComplexImage make_phantom(std::size_t height, std::size_t width, PhantomKind kind, std::uint64_t seed,
                          bool phase_ramp)
{
  if (height < 16 || width < 16)
    throw ConfigError("phantom dimensions must be >= 16, got " + to_string(Shape{height, width}));

  RealImage mag;
  switch (kind) {
  case PhantomKind::shepp_logan:
    mag = shepp_logan(height, width);
    break;
  case PhantomKind::resolution_bars:
    mag = resolution_bars(height, width);
    break;
  case PhantomKind::smooth_blobs:
    mag = smooth_blobs(height, width, seed);
    break;
  }
  const double peak = *std::max_element(mag.data().begin(), mag.data().end());
  if (peak > 0.0 && peak != 1.0)
    for (auto &v : mag.data())
      v /= peak;

  ComplexImage img = to_complex(mag);
  if (phase_ramp)
    for (std::size_t r = 0; r < height; ++r)
      for (std::size_t c = 0; c < width; ++c) {
        const double phase = std::numbers::pi * (0.5 * norm_x(c, width) + 0.25 * norm_y(r, height));
        img(r, c) *= std::polar(1.0, phase);
      }
  return img;
}

std::vector<ComplexImage> make_coil_profiles(std::size_t height, std::size_t width, std::size_t coils,
                                             std::uint64_t seed)
{
  if (coils == 0)
    throw ConfigError("need at least one coil");
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const double dim = static_cast<double>(std::min(height, width));
  const double sigma = 0.35 * dim;
  const double ring = 0.35 * dim;
  const double floor = coils == 1 ? 1.0 : 0.15;
  const double bump = coils == 1 ? 0.25 : 1.0;
  const double cy0 = 0.5 * (height - 1.0), cx0 = 0.5 * (width - 1.0);

  std::vector<ComplexImage> profiles;
  profiles.reserve(coils);
  for (std::size_t l = 0; l < coils; ++l) {
    const double angle = 2.0 * std::numbers::pi * (l + 0.1 * (unit(rng) - 0.5)) / coils;
    const double phase0 = 2.0 * std::numbers::pi * unit(rng);
    const double cy = cy0 + ring * std::sin(angle), cx = cx0 + ring * std::cos(angle);
    ComplexImage p(height, width);
    for (std::size_t r = 0; r < height; ++r)
      for (std::size_t c = 0; c < width; ++c) {
        const double dy = r - cy, dx = c - cx;
        const double mag = floor + bump * std::exp(-(dy * dy + dx * dx) / (2.0 * sigma * sigma));
        // slow linear phase pointing away from the coil
        const double phase = phase0 + 0.5 * std::numbers::pi *
                                        ((c - cx0) * std::cos(angle) + (r - cy0) * std::sin(angle)) / dim;
        p(r, c) = std::polar(mag, phase);
      }
    profiles.push_back(std::move(p));
  }
  return profiles;
}

CaseSpec case_preset(std::string_view organ, std::size_t size, std::uint64_t seed)
{
  CaseSpec spec;
  spec.name = std::string(organ);
  spec.height = spec.width = size;
  spec.protocol = protocol_preset(organ);
  const auto scaled = static_cast<std::size_t>(
      std::llround(static_cast<double>(spec.protocol.acs_width) * static_cast<double>(size) / kProtocolWidth));
  spec.protocol.acs_width = std::min(spec.protocol.acs_width, std::max<std::size_t>(scaled, 2));
  spec.coils = 4;
  spec.noise_sigma = 0.01;
  spec.seed = seed;
  if (organ == "knee") {
    spec.phantom = PhantomKind::smooth_blobs;
  } else {
    spec.phantom = PhantomKind::shepp_logan;
    spec.phase_ramp = organ == "cardiac";
  }
  return spec;
}

SimulatedCase simulate_case(const CaseSpec &spec)
{
  SimulatedCase out;
  out.x_gt = make_phantom(spec.height, spec.width, spec.phantom, derive_seed(spec.seed, 0), spec.phase_ramp);
  out.sens = SensitivitySet::normalize(make_coil_profiles(spec.height, spec.width, spec.coils, derive_seed(spec.seed, 1)));
  out.mask = make_mask(spec.protocol, spec.height, spec.width, derive_seed(spec.seed, 2));
  out.y = forward(out.x_gt, out.sens, out.mask, spec.noise_sigma, derive_seed(spec.seed, 3));
  return out;
}

} // namespace pcsmri
