#pragma once

#include <random>

#include "pcsmri/acquisition.hpp"
#include "pcsmri/tensor.hpp"

namespace oracle {

using pcsmri::cplx;

template <typename G = pcsmri::ComplexImage>
G random_grid(std::size_t h, std::size_t w, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  G g(h, w);
  for (auto &v : g.data())
    v = cplx(n(rng), n(rng));
  return g;
}

inline pcsmri::RealImage random_real(std::size_t h, std::size_t w, std::uint64_t seed, double lo = 0.0,
                                     double hi = 1.0)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  pcsmri::RealImage g(h, w);
  for (auto &v : g.data())
    v = u(rng);
  return g;
}

inline pcsmri::MultiCoilKSpace random_kspace(std::size_t coils, std::size_t h, std::size_t w, std::uint64_t seed)
{
  std::vector<pcsmri::KSpaceGrid> g;
  for (std::size_t l = 0; l < coils; ++l)
    g.push_back(random_grid<pcsmri::KSpaceGrid>(h, w, seed + 101 * l));
  return pcsmri::MultiCoilKSpace(std::move(g));
}

/// Normalized random smooth-ish sensitivities (random complex profiles, full support).
inline pcsmri::SensitivitySet random_sens(std::size_t coils, std::size_t h, std::size_t w, std::uint64_t seed)
{
  std::vector<pcsmri::ComplexImage> p;
  for (std::size_t l = 0; l < coils; ++l) {
    auto g = random_grid(h, w, seed + 7 * l);
    for (auto &v : g.data())
      v += cplx(2.0, 0.0);
    p.push_back(std::move(g));
  }
  return pcsmri::SensitivitySet::normalize(p, 0.0);
}

template <typename G>
double rel_diff(const G &a, const G &b)
{
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

inline double rel_diff(cplx a, cplx b)
{
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

} // namespace oracle
