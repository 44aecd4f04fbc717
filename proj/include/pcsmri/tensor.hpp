#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pcsmri/error.hpp"

namespace pcsmri {

using cplx = std::complex<double>;

struct Shape
{
  std::size_t height = 0;
  std::size_t width = 0;

  std::size_t size() const { return height * width; }
  bool empty() const { return height == 0 || width == 0; }
  bool operator==(const Shape &) const = default;
};

std::string to_string(const Shape &s);

struct ImageDomain
{
};

// k-space grids are always stored centered: DC sits at (height/2, width/2).
struct KSpaceDomain
{
  static constexpr bool centered = true;
};

/// Row-major 2D grid. The domain tag keeps image- and k-space data from being
/// mixed up at compile time; both share the same storage and arithmetic.
template <typename T, typename Domain>
class Grid
{
public:
  using value_type = T;
  using domain = Domain;

  Grid() = default;
  Grid(std::size_t height, std::size_t width)
    : shape_{height, width}, data_(height * width, T{})
  {
  }
  Grid(Shape shape) : Grid(shape.height, shape.width) {}
  Grid(std::size_t height, std::size_t width, std::vector<T> data)
    : shape_{height, width}, data_(std::move(data))
  {
    if (data_.size() != shape_.size())
      throw ShapeError("grid data length " + std::to_string(data_.size()) +
                       " does not match " + to_string(shape_));
  }

  std::size_t height() const { return shape_.height; }
  std::size_t width() const { return shape_.width; }
  Shape shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }

  T &operator()(std::size_t r, std::size_t c) { return data_[r * shape_.width + c]; }
  const T &operator()(std::size_t r, std::size_t c) const { return data_[r * shape_.width + c]; }
  T &operator[](std::size_t i) { return data_[i]; }
  const T &operator[](std::size_t i) const { return data_[i]; }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }
  std::vector<T> &storage() { return data_; }
  const std::vector<T> &storage() const { return data_; }

  bool operator==(const Grid &) const = default;

private:
  Shape shape_{};
  std::vector<T> data_;
};

using ComplexImage = Grid<cplx, ImageDomain>;
using KSpaceGrid = Grid<cplx, KSpaceDomain>;
using RealImage = Grid<double, ImageDomain>;

// Per-pixel boolean region (1 = inside), row-major, same layout as the grids.
using Support = std::vector<std::uint8_t>;

void require_same_shape(Shape a, Shape b, const char *what);

// ---- elementwise arithmetic ------------------------------------------------

template <typename T, typename D>
Grid<T, D> add(const Grid<T, D> &a, const Grid<T, D> &b)
{
  require_same_shape(a.shape(), b.shape(), "add");
  Grid<T, D> out(a.shape());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = a[i] + b[i];
  return out;
}

template <typename T, typename D>
Grid<T, D> sub(const Grid<T, D> &a, const Grid<T, D> &b)
{
  require_same_shape(a.shape(), b.shape(), "sub");
  Grid<T, D> out(a.shape());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = a[i] - b[i];
  return out;
}

// Hadamard product.
template <typename T, typename D>
Grid<T, D> mul(const Grid<T, D> &a, const Grid<T, D> &b)
{
  require_same_shape(a.shape(), b.shape(), "mul");
  Grid<T, D> out(a.shape());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = a[i] * b[i];
  return out;
}

// conj(a) * b elementwise; this is how S_l^H acts on a coil image.
template <typename D>
Grid<cplx, D> conj_mul(const Grid<cplx, D> &a, const Grid<cplx, D> &b)
{
  require_same_shape(a.shape(), b.shape(), "conj_mul");
  Grid<cplx, D> out(a.shape());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = std::conj(a[i]) * b[i];
  return out;
}

template <typename T, typename D, typename S>
Grid<T, D> scale(const Grid<T, D> &a, S s)
{
  Grid<T, D> out(a.shape());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = a[i] * static_cast<T>(s);
  return out;
}

// Sums use a fixed blocking so results do not depend on thread count.
double squared_norm(std::span<const cplx> a);
double squared_norm(std::span<const double> a);
cplx inner_product(std::span<const cplx> a, std::span<const cplx> b);

template <typename T, typename D>
double l2_norm(const Grid<T, D> &a)
{
  return std::sqrt(squared_norm(a.data()));
}

// <a, b> = sum conj(a_i) b_i; conjugate-linear in the first argument.
template <typename D>
cplx inner_product(const Grid<cplx, D> &a, const Grid<cplx, D> &b)
{
  require_same_shape(a.shape(), b.shape(), "inner_product");
  return inner_product(a.data(), b.data());
}

RealImage magnitude(const ComplexImage &a);
ComplexImage to_complex(const RealImage &a);

bool all_finite(std::span<const cplx> a);

} // namespace pcsmri
