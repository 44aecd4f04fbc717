#pragma once

#include <cstddef>

#include "pcsmri/acquisition.hpp"

namespace pcsmri {

/// Keep only the centered acs_size x acs_size block of every coil. Throws
/// ProtocolError if the block exceeds the grid or any of its columns is not
/// acquired in `mask`.
MultiCoilKSpace extract_acs(const MultiCoilKSpace &y, const SamplingMask &mask, std::size_t acs_size);

/// Low-resolution sensitivity estimate from the ACS block: each coil's ACS
/// data is (optionally) Hann-apodized, inverse transformed, and divided by the
/// RSS of all coils. This stands in for ESPIRiT; the output satisfies the same
/// normalization contract. Throws EstimationError for an all-zero ACS block.
SensitivitySet estimate_maps(const MultiCoilKSpace &y, const SamplingMask &mask, std::size_t acs_size,
                             bool apodize = true);

} // namespace pcsmri
