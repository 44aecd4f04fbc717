#include "pcsmri/acquisition.hpp"

#include <algorithm>
#include <cmath>

#include "pcsmri/fft.hpp"
#include "pcsmri/kernels.hpp"
#include "pcsmri/rng.hpp"

namespace pcsmri {

MultiCoilKSpace::MultiCoilKSpace(std::size_t coils, Shape shape) : coils_(coils, KSpaceGrid(shape))
{
  if (coils == 0)
    throw ShapeError("multi-coil k-space needs at least one coil");
}

MultiCoilKSpace::MultiCoilKSpace(std::vector<KSpaceGrid> coils) : coils_(std::move(coils))
{
  if (coils_.empty())
    throw ShapeError("multi-coil k-space needs at least one coil");
  for (const auto &g : coils_)
    require_same_shape(g.shape(), coils_.front().shape(), "multi-coil k-space");
}

// ---- SensitivitySet ----------------------------------------------------------

SensitivitySet::SensitivitySet(std::vector<ComplexImage> maps, Support support)
  : maps_(std::move(maps)), support_(std::move(support)), power_(maps_.front().shape())
{
  for (const auto &s : maps_)
    kernels::accumulate_power(power_.data(), s.data());
}

SensitivitySet SensitivitySet::normalize(const std::vector<ComplexImage> &profiles, double threshold)
{
  if (profiles.empty())
    throw ShapeError("sensitivity set needs at least one coil");
  for (const auto &p : profiles)
    require_same_shape(p.shape(), profiles.front().shape(), "sensitivity profiles");

  const RealImage rss = rss_combine(profiles);
  const double peak = *std::max_element(rss.data().begin(), rss.data().end());
  if (!(peak > 0.0) || !std::isfinite(peak))
    throw EstimationError("sensitivity profiles are identically zero");

  const double cut = threshold * peak;
  Support support(rss.size(), 0);
  for (std::size_t i = 0; i < rss.size(); ++i)
    support[i] = rss[i] > cut ? 1 : 0;

  std::vector<ComplexImage> maps;
  maps.reserve(profiles.size());
  for (const auto &p : profiles) {
    ComplexImage s(p.shape());
    for (std::size_t i = 0; i < p.size(); ++i)
      if (support[i])
        s[i] = p[i] / rss[i];
    maps.push_back(std::move(s));
  }
  return SensitivitySet(std::move(maps), std::move(support));
}

SensitivitySet SensitivitySet::from_maps(std::vector<ComplexImage> maps, double tolerance)
{
  if (maps.empty())
    throw ShapeError("sensitivity set needs at least one coil");
  for (const auto &s : maps)
    require_same_shape(s.shape(), maps.front().shape(), "sensitivity maps");

  const std::size_t n = maps.front().size();
  Support support(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    double p = 0.0;
    for (const auto &s : maps)
      p += std::norm(s[i]);
    if (p == 0.0)
      continue;
    if (std::abs(p - 1.0) > tolerance)
      throw EstimationError("sensitivity maps are not normalized: sum |S|^2 = " + std::to_string(p) +
                            " at pixel " + std::to_string(i));
    support[i] = 1;
  }
  return SensitivitySet(std::move(maps), std::move(support));
}

// ---- operators -----------------------------------------------------------------

MultiCoilKSpace forward(const ComplexImage &x, const SensitivitySet &sens, const SamplingMask &mask,
                        double noise_sigma, std::uint64_t seed)
{
  require_same_shape(x.shape(), sens.shape(), "forward (image vs sensitivities)");
  require_same_shape(x.shape(), mask.shape(), "forward (image vs mask)");
  if (!(noise_sigma >= 0.0))
    throw ConfigError("forward: noise sigma must be >= 0");

  const auto coils = static_cast<std::ptrdiff_t>(sens.coils());
  std::vector<KSpaceGrid> out(sens.coils());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t l = 0; l < coils; ++l) {
    KSpaceGrid k = apply_mask(fft2c(mul(sens[l], x)), mask);
    if (noise_sigma > 0.0) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(l)));
      std::normal_distribution<double> noise(0.0, noise_sigma);
      for (std::size_t r = 0; r < k.height(); ++r)
        for (std::size_t c = 0; c < k.width(); ++c)
          if (mask.line_selected[c]) {
            const double re = noise(rng);
            const double im = noise(rng);
            k(r, c) += cplx(re, im);
          }
    }
    out[l] = std::move(k);
  }
  return MultiCoilKSpace(std::move(out));
}

ComplexImage adjoint(const MultiCoilKSpace &y, const SensitivitySet &sens, const SamplingMask &mask)
{
  require_same_shape(y.shape(), mask.shape(), "adjoint (k-space vs mask)");
  std::vector<KSpaceGrid> masked;
  masked.reserve(y.coils());
  for (const auto &k : y)
    masked.push_back(apply_mask(k, mask));
  return zero_filled(MultiCoilKSpace(std::move(masked)), sens);
}

std::vector<ComplexImage> coil_images(const MultiCoilKSpace &y)
{
  const auto coils = static_cast<std::ptrdiff_t>(y.coils());
  std::vector<ComplexImage> imgs(y.coils());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t l = 0; l < coils; ++l)
    imgs[l] = ifft2c(y[l]);
  return imgs;
}

ComplexImage zero_filled(const MultiCoilKSpace &y, const SensitivitySet &sens)
{
  require_same_shape(y.shape(), sens.shape(), "zero_filled");
  if (y.coils() != sens.coils())
    throw ShapeError("zero_filled: " + std::to_string(y.coils()) + " k-space coils vs " +
                     std::to_string(sens.coils()) + " sensitivity maps");
  const auto imgs = coil_images(y);
  ComplexImage x(y.shape());
  // Serial over coils keeps the summation order fixed.
  for (std::size_t l = 0; l < imgs.size(); ++l)
    kernels::accumulate_adjoint(x.data(), sens[l].data(), imgs[l].data());
  return x;
}

RealImage rss_combine(const std::vector<ComplexImage> &imgs)
{
  if (imgs.empty())
    throw ShapeError("rss_combine: no coil images");
  RealImage out(imgs.front().shape());
  for (const auto &img : imgs) {
    require_same_shape(img.shape(), out.shape(), "rss_combine");
    kernels::accumulate_power(out.data(), img.data());
  }
  for (auto &v : out.data())
    v = std::sqrt(v);
  return out;
}

} // namespace pcsmri
