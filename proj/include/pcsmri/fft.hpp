#pragma once

#include "pcsmri/tensor.hpp"

namespace pcsmri {

/// Centered, unitary 2D DFT: ifftshift -> FFT -> fftshift, scaled by
/// 1/sqrt(H*W). DC lands at (H/2, W/2). Any H, W >= 1 is accepted.
/// Throws ShapeError for a zero dimension.
KSpaceGrid fft2c(const ComplexImage &img);

/// Exact inverse (and adjoint) of fft2c.
ComplexImage ifft2c(const KSpaceGrid &ksp);

} // namespace pcsmri
