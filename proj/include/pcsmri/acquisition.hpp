#pragma once

#include <cstdint>
#include <vector>

#include "pcsmri/sampling.hpp"
#include "pcsmri/tensor.hpp"

namespace pcsmri {

/// Per-coil k-space data sharing one shape. Measured data is stored
/// zero-filled on the full grid, i.e. as U^H y_l.
class MultiCoilKSpace
{
public:
  MultiCoilKSpace() = default;
  MultiCoilKSpace(std::size_t coils, Shape shape);
  explicit MultiCoilKSpace(std::vector<KSpaceGrid> coils);

  std::size_t coils() const { return coils_.size(); }
  Shape shape() const { return coils_.empty() ? Shape{} : coils_.front().shape(); }
  KSpaceGrid &operator[](std::size_t l) { return coils_[l]; }
  const KSpaceGrid &operator[](std::size_t l) const { return coils_[l]; }
  const std::vector<KSpaceGrid> &grids() const { return coils_; }

  auto begin() const { return coils_.begin(); }
  auto end() const { return coils_.end(); }

private:
  std::vector<KSpaceGrid> coils_;
};

/// Normalized coil sensitivities {S_l}. On the support sum_l |S_l|^2 = 1;
/// off the support every map is exactly zero.
class SensitivitySet
{
public:
  static constexpr double kSupportThreshold = 1e-3;

  SensitivitySet() = default;

  /// Divide raw profiles by their root-sum-of-squares. Pixels whose RSS is
  /// below `threshold` times the peak RSS are outside the support.
  static SensitivitySet normalize(const std::vector<ComplexImage> &profiles,
                                  double threshold = kSupportThreshold);

  /// Adopt already-normalized maps (e.g. loaded from disk). The support is
  /// the set of pixels where any map is nonzero; throws EstimationError if
  /// the normalization is off by more than `tolerance` there.
  static SensitivitySet from_maps(std::vector<ComplexImage> maps, double tolerance = 1e-6);

  std::size_t coils() const { return maps_.size(); }
  Shape shape() const { return maps_.empty() ? Shape{} : maps_.front().shape(); }
  const ComplexImage &operator[](std::size_t l) const { return maps_[l]; }
  const std::vector<ComplexImage> &maps() const { return maps_; }
  const Support &support() const { return support_; }
  /// sum_l |S_l|^2 per pixel.
  const RealImage &power() const { return power_; }

private:
  SensitivitySet(std::vector<ComplexImage> maps, Support support);

  std::vector<ComplexImage> maps_;
  Support support_;
  RealImage power_;
};

/// y_l = U F (S_l x) + n_l. Noise is i.i.d. complex Gaussian with standard
/// deviation `noise_sigma` per real component, added only on sampled bins.
MultiCoilKSpace forward(const ComplexImage &x, const SensitivitySet &sens, const SamplingMask &mask,
                        double noise_sigma = 0.0, std::uint64_t seed = 0);

/// sum_l S_l^H F^H U^H U y_l, the adjoint of forward() at sigma = 0.
ComplexImage adjoint(const MultiCoilKSpace &y, const SensitivitySet &sens, const SamplingMask &mask);

/// x^(0) = sum_l S_l^H F^H y_l for zero-filled y.
ComplexImage zero_filled(const MultiCoilKSpace &y, const SensitivitySet &sens);

/// Per-coil images F^H y_l.
std::vector<ComplexImage> coil_images(const MultiCoilKSpace &y);

/// sqrt(sum_l |img_l|^2) per pixel.
RealImage rss_combine(const std::vector<ComplexImage> &imgs);

} // namespace pcsmri
