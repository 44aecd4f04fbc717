#pragma once

// Hot per-pixel loops of the reconstruction. Every kernel exists twice: the
// OpenMP version used by the library, and a plain serial version in
// kernels::serial that the tests and the benchmark compare against.
// None of the kernels reduce across pixels, so both versions produce
// bit-identical output regardless of thread count.

#include <cstddef>
#include <cstdint>
#include <span>

#include "pcsmri/tensor.hpp"

namespace pcsmri::kernels {

// Soft data-consistency blend on one coil's k-space, in place.
// For a bin in a selected column c:
//   k_dc = (y + alpha * k) / (1 + alpha),  k <- v * k_dc + (1 - v) * k
// Unselected columns are left untouched. `v_map` may be empty, in which case
// the scalar `v` applies to every bin.
void dc_blend(std::span<cplx> k, std::span<const cplx> y, std::span<const std::uint8_t> line_selected,
              std::size_t width, double alpha, double v, std::span<const double> v_map);

// acc += conj(s) * img
void accumulate_adjoint(std::span<cplx> acc, std::span<const cplx> s, std::span<const cplx> img);

// out = (beta * z + alpha * sh_m) / (beta + alpha * s2)
void x_combine(std::span<cplx> out, std::span<const cplx> z, std::span<const cplx> sh_m,
               std::span<const double> s2, double alpha, double beta);

// acc += |img|^2
void accumulate_power(std::span<double> acc, std::span<const cplx> img);

// Forward differences with Neumann boundary (last row/column difference = 0).
void gradient(std::span<cplx> gh, std::span<cplx> gv, std::span<const cplx> z, std::size_t height,
              std::size_t width);

// Negative adjoint of gradient().
void divergence(std::span<cplx> out, std::span<const cplx> ph, std::span<const cplx> pv,
                std::size_t height, std::size_t width);

// Pointwise projection of (ph, pv) onto the unit ball of C^2.
void project_unit_ball(std::span<cplx> ph, std::span<cplx> pv);

namespace serial {

void dc_blend(std::span<cplx> k, std::span<const cplx> y, std::span<const std::uint8_t> line_selected,
              std::size_t width, double alpha, double v, std::span<const double> v_map);
void accumulate_adjoint(std::span<cplx> acc, std::span<const cplx> s, std::span<const cplx> img);
void x_combine(std::span<cplx> out, std::span<const cplx> z, std::span<const cplx> sh_m,
               std::span<const double> s2, double alpha, double beta);
void accumulate_power(std::span<double> acc, std::span<const cplx> img);
void gradient(std::span<cplx> gh, std::span<cplx> gv, std::span<const cplx> z, std::size_t height,
              std::size_t width);
void divergence(std::span<cplx> out, std::span<const cplx> ph, std::span<const cplx> pv,
                std::size_t height, std::size_t width);
void project_unit_ball(std::span<cplx> ph, std::span<cplx> pv);

} // namespace serial

} // namespace pcsmri::kernels
