#include "pcsmri/tensor.hpp"

#include <algorithm>

namespace pcsmri {

namespace {

// Partial sums over fixed-size blocks, combined in order.
constexpr std::size_t kBlock = 4096;

template <typename T, typename F>
auto blocked_sum(std::size_t n, T zero, F &&term)
{
  T total = zero;
  for (std::size_t b = 0; b < n; b += kBlock) {
    T partial = zero;
    const std::size_t e = std::min(n, b + kBlock);
    for (std::size_t i = b; i < e; ++i)
      partial += term(i);
    total += partial;
  }
  return total;
}

} // namespace

std::string to_string(const Shape &s)
{
  return std::to_string(s.height) + "x" + std::to_string(s.width);
}

void require_same_shape(Shape a, Shape b, const char *what)
{
  if (a != b)
    throw ShapeError(std::string(what) + ": shape mismatch " + to_string(a) + " vs " + to_string(b));
}

double squared_norm(std::span<const cplx> a)
{
  return blocked_sum(a.size(), 0.0, [&](std::size_t i) { return std::norm(a[i]); });
}

double squared_norm(std::span<const double> a)
{
  return blocked_sum(a.size(), 0.0, [&](std::size_t i) { return a[i] * a[i]; });
}

cplx inner_product(std::span<const cplx> a, std::span<const cplx> b)
{
  if (a.size() != b.size())
    throw ShapeError("inner_product: length mismatch");
  return blocked_sum(a.size(), cplx{}, [&](std::size_t i) { return std::conj(a[i]) * b[i]; });
}

RealImage magnitude(const ComplexImage &a)
{
  RealImage out(a.shape());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = std::abs(a[i]);
  return out;
}

ComplexImage to_complex(const RealImage &a)
{
  ComplexImage out(a.shape());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = a[i];
  return out;
}

bool all_finite(std::span<const cplx> a)
{
  return std::all_of(a.begin(), a.end(),
                     [](const cplx &v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

} // namespace pcsmri
