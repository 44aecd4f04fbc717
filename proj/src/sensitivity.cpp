#include "pcsmri/sensitivity.hpp"

#include <cmath>
#include <numbers>

#include "pcsmri/fft.hpp"

namespace pcsmri {

namespace {

struct Block
{
  std::size_t row0, col0, size;
};

Block central_block(Shape s, std::size_t acs_size)
{
  return {s.height / 2 - acs_size / 2, s.width / 2 - acs_size / 2, acs_size};
}

// Hann taper symmetric about the DC bin, so the smoothing kernel is real and
// adds no phase to the low-resolution images. For even n the first bin of the
// block has no mirror partner and gets weight 0.
double hann(std::size_t i, std::size_t n)
{
  const double k = static_cast<double>(i) - static_cast<double>(n / 2);
  const double span = 2.0 * static_cast<double>((n + 1) / 2);
  const double c = std::cos(std::numbers::pi * k / span);
  return c * c;
}

} // namespace

MultiCoilKSpace extract_acs(const MultiCoilKSpace &y, const SamplingMask &mask, std::size_t acs_size)
{
  const Shape s = y.shape();
  require_same_shape(s, mask.shape(), "extract_acs");
  if (acs_size == 0 || acs_size > std::min(s.height, s.width))
    throw ProtocolError("ACS size " + std::to_string(acs_size) + " does not fit a " + to_string(s) + " grid");
  const Block b = central_block(s, acs_size);
  for (std::size_t c = b.col0; c < b.col0 + b.size; ++c)
    if (!mask.selected(c))
      throw ProtocolError("ACS block is not fully sampled: column " + std::to_string(c) + " is missing");

  std::vector<KSpaceGrid> out;
  out.reserve(y.coils());
  for (const auto &k : y) {
    KSpaceGrid acs(s);
    for (std::size_t r = b.row0; r < b.row0 + b.size; ++r)
      for (std::size_t c = b.col0; c < b.col0 + b.size; ++c)
        acs(r, c) = k(r, c);
    out.push_back(std::move(acs));
  }
  return MultiCoilKSpace(std::move(out));
}

SensitivitySet estimate_maps(const MultiCoilKSpace &y, const SamplingMask &mask, std::size_t acs_size,
                             bool apodize)
{
  MultiCoilKSpace acs = extract_acs(y, mask, acs_size);
  const Block b = central_block(y.shape(), acs_size);

  bool any = false;
  std::vector<ComplexImage> low_res;
  low_res.reserve(acs.coils());
  for (std::size_t l = 0; l < acs.coils(); ++l) {
    KSpaceGrid k = acs[l];
    for (std::size_t r = 0; r < b.size; ++r)
      for (std::size_t c = 0; c < b.size; ++c) {
        cplx &v = k(b.row0 + r, b.col0 + c);
        if (v != cplx{})
          any = true;
        if (apodize)
          v *= hann(r, b.size) * hann(c, b.size);
      }
    low_res.push_back(ifft2c(k));
  }
  if (!any)
    throw EstimationError("ACS block is identically zero; cannot estimate sensitivities");
  return SensitivitySet::normalize(low_res);
}

} // namespace pcsmri
