#include "pcsmri/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace pcsmri {

namespace {

// FFTW planning is not thread-safe, execution with the new-array interface
// is. Plans are created once per (height, width, direction) under a lock and
// then shared. FFTW_UNALIGNED keeps the chosen codelets independent of the
// buffer addresses, so results are reproducible bit for bit.
class PlanCache
{
public:
  ~PlanCache()
  {
    for (auto &[key, plan] : plans_)
      fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t h, std::size_t w, int sign)
  {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(h, w, sign);
    if (auto it = plans_.find(key); it != plans_.end())
      return it->second;
    std::vector<cplx> scratch(h * w);
    auto *buf = reinterpret_cast<fftw_complex *>(scratch.data());
    fftw_plan plan = fftw_plan_dft_2d(static_cast<int>(h), static_cast<int>(w), buf, buf, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

private:
  std::mutex mutex_;
  std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

PlanCache &plan_cache()
{
  static PlanCache cache;
  return cache;
}

// out[r, c] = in[(r + dr) % h, (c + dc) % w]
void circshift(std::span<const cplx> in, std::span<cplx> out, std::size_t h, std::size_t w,
               std::size_t dr, std::size_t dc)
{
  for (std::size_t r = 0; r < h; ++r) {
    const std::size_t sr = (r + dr) % h;
    for (std::size_t c = 0; c < w; ++c)
      out[r * w + c] = in[sr * w + (c + dc) % w];
  }
}

// Centered transform: ifftshift, FFT, fftshift, unitary scale.
std::vector<cplx> transform(std::span<const cplx> in, Shape s, int sign)
{
  if (s.empty())
    throw ShapeError("fft2c: invalid dimension " + to_string(s));
  const std::size_t h = s.height, w = s.width;
  std::vector<cplx> work(s.size()), out(s.size());
  // ifftshift moves index floor(n/2) to 0
  circshift(in, work, h, w, h / 2, w / 2);
  auto *buf = reinterpret_cast<fftw_complex *>(work.data());
  fftw_execute_dft(plan_cache().get(h, w, sign), buf, buf);
  // fftshift moves index 0 to floor(n/2)
  circshift(work, out, h, w, h - h / 2, w - w / 2);
  const double norm = 1.0 / std::sqrt(static_cast<double>(s.size()));
  for (auto &v : out)
    v *= norm;
  return out;
}

} // namespace

KSpaceGrid fft2c(const ComplexImage &img)
{
  return KSpaceGrid(img.height(), img.width(), transform(img.data(), img.shape(), FFTW_FORWARD));
}

ComplexImage ifft2c(const KSpaceGrid &ksp)
{
  return ComplexImage(ksp.height(), ksp.width(), transform(ksp.data(), ksp.shape(), FFTW_BACKWARD));
}

} // namespace pcsmri
