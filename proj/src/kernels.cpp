#include "pcsmri/kernels.hpp"

#include <cmath>

namespace pcsmri::kernels {

namespace {

inline void blend_bin(cplx &k, const cplx &y, double alpha, double v)
{
  const cplx dc = (y + alpha * k) / (1.0 + alpha);
  k = v * dc + (1.0 - v) * k;
}

inline void project_pixel(cplx &h, cplx &v)
{
  const double n = std::sqrt(std::norm(h) + std::norm(v));
  if (n > 1.0) {
    h /= n;
    v /= n;
  }
}

} // namespace

void dc_blend(std::span<cplx> k, std::span<const cplx> y, std::span<const std::uint8_t> line_selected,
              std::size_t width, double alpha, double v, std::span<const double> v_map)
{
  const auto n = static_cast<std::ptrdiff_t>(k.size());
  const bool per_bin = !v_map.empty();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (!line_selected[static_cast<std::size_t>(i) % width])
      continue;
    blend_bin(k[i], y[i], alpha, per_bin ? v_map[i] : v);
  }
}

void accumulate_adjoint(std::span<cplx> acc, std::span<const cplx> s, std::span<const cplx> img)
{
  const auto n = static_cast<std::ptrdiff_t>(acc.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    acc[i] += std::conj(s[i]) * img[i];
}

void x_combine(std::span<cplx> out, std::span<const cplx> z, std::span<const cplx> sh_m,
               std::span<const double> s2, double alpha, double beta)
{
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[i] = (beta * z[i] + alpha * sh_m[i]) / (beta + alpha * s2[i]);
}

void accumulate_power(std::span<double> acc, std::span<const cplx> img)
{
  const auto n = static_cast<std::ptrdiff_t>(acc.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    acc[i] += std::norm(img[i]);
}

void gradient(std::span<cplx> gh, std::span<cplx> gv, std::span<const cplx> z, std::size_t height,
              std::size_t width)
{
  const auto rows = static_cast<std::ptrdiff_t>(height);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    const std::size_t row = static_cast<std::size_t>(r) * width;
    for (std::size_t c = 0; c < width; ++c) {
      const std::size_t i = row + c;
      gh[i] = c + 1 < width ? z[i + 1] - z[i] : cplx{};
      gv[i] = static_cast<std::size_t>(r) + 1 < height ? z[i + width] - z[i] : cplx{};
    }
  }
}

void divergence(std::span<cplx> out, std::span<const cplx> ph, std::span<const cplx> pv,
                std::size_t height, std::size_t width)
{
  const auto rows = static_cast<std::ptrdiff_t>(height);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t rr = 0; rr < rows; ++rr) {
    const auto r = static_cast<std::size_t>(rr);
    for (std::size_t c = 0; c < width; ++c) {
      const std::size_t i = r * width + c;
      cplx d{};
      if (c + 1 < width)
        d += ph[i];
      if (c > 0)
        d -= ph[i - 1];
      if (r + 1 < height)
        d += pv[i];
      if (r > 0)
        d -= pv[i - width];
      out[i] = d;
    }
  }
}

void project_unit_ball(std::span<cplx> ph, std::span<cplx> pv)
{
  const auto n = static_cast<std::ptrdiff_t>(ph.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    project_pixel(ph[i], pv[i]);
}

namespace serial {

void dc_blend(std::span<cplx> k, std::span<const cplx> y, std::span<const std::uint8_t> line_selected,
              std::size_t width, double alpha, double v, std::span<const double> v_map)
{
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (!line_selected[i % width])
      continue;
    blend_bin(k[i], y[i], alpha, v_map.empty() ? v : v_map[i]);
  }
}

void accumulate_adjoint(std::span<cplx> acc, std::span<const cplx> s, std::span<const cplx> img)
{
  for (std::size_t i = 0; i < acc.size(); ++i)
    acc[i] += std::conj(s[i]) * img[i];
}

void x_combine(std::span<cplx> out, std::span<const cplx> z, std::span<const cplx> sh_m,
               std::span<const double> s2, double alpha, double beta)
{
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = (beta * z[i] + alpha * sh_m[i]) / (beta + alpha * s2[i]);
}

void accumulate_power(std::span<double> acc, std::span<const cplx> img)
{
  for (std::size_t i = 0; i < acc.size(); ++i)
    acc[i] += std::norm(img[i]);
}

void gradient(std::span<cplx> gh, std::span<cplx> gv, std::span<const cplx> z, std::size_t height,
              std::size_t width)
{
  for (std::size_t r = 0; r < height; ++r)
    for (std::size_t c = 0; c < width; ++c) {
      const std::size_t i = r * width + c;
      gh[i] = c + 1 < width ? z[i + 1] - z[i] : cplx{};
      gv[i] = r + 1 < height ? z[i + width] - z[i] : cplx{};
    }
}

void divergence(std::span<cplx> out, std::span<const cplx> ph, std::span<const cplx> pv,
                std::size_t height, std::size_t width)
{
  for (std::size_t r = 0; r < height; ++r)
    for (std::size_t c = 0; c < width; ++c) {
      const std::size_t i = r * width + c;
      cplx d{};
      if (c + 1 < width)
        d += ph[i];
      if (c > 0)
        d -= ph[i - 1];
      if (r + 1 < height)
        d += pv[i];
      if (r > 0)
        d -= pv[i - width];
      out[i] = d;
    }
}

void project_unit_ball(std::span<cplx> ph, std::span<cplx> pv)
{
  for (std::size_t i = 0; i < ph.size(); ++i)
    project_pixel(ph[i], pv[i]);
}

} // namespace serial

} // namespace pcsmri::kernels
