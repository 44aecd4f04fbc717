#include <doctest.h>

#include "oracles/dense.hpp"
#include "oracles/random.hpp"
#include "pcsmri/acquisition.hpp"
#include "pcsmri/fft.hpp"
#include "pcsmri/metrics.hpp"
#include "pcsmri/phantom.hpp"

using namespace pcsmri;
using oracle::rel_diff;

namespace {

SensitivitySet ones_coil(std::size_t h, std::size_t w)
{
  ComplexImage s(h, w);
  for (auto &v : s.data())
    v = 1.0;
  return SensitivitySet::normalize({s});
}

} // namespace

TEST_CASE("forward and adjoint pass the inner-product test")
{
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = oracle::random_grid(16, 16, 10 + trial);
    const auto y = oracle::random_kspace(3, 16, 16, 50 + trial);
    const auto s = oracle::random_sens(3, 16, 16, 90 + trial);
    const auto m = make_random_mask(16, 16, 2.0 + trial % 3, 4, trial);
    const auto ax = forward(x, s, m);
    cplx lhs = 0.0;
    for (std::size_t l = 0; l < 3; ++l)
      lhs += inner_product(ax[l], y[l]);
    const cplx rhs = inner_product(x, adjoint(y, s, m));
    CHECK(rel_diff(lhs, rhs) <= 1e-8);
  }
}

TEST_CASE("forward matches the dense operator U F S_l")
{
  const std::size_t n = 8;
  const auto x = oracle::random_grid(n, n, 1);
  const auto s = oracle::random_sens(2, n, n, 2);
  const auto m = make_random_mask(n, n, 2.0, 2, 3);
  const auto y = forward(x, s, m);
  const oracle::Mat f = oracle::dft2(n, n), u = oracle::mask_projector(m);
  for (std::size_t l = 0; l < 2; ++l) {
    const auto expect = oracle::grid<KSpaceGrid>(u * f * oracle::diag(s[l]) * oracle::vec(x), n, n);
    CHECK(rel_diff(y[l], expect) <= 1e-10);
  }
  oracle::Vec adj = oracle::Vec::Zero(n * n);
  for (std::size_t l = 0; l < 2; ++l)
    adj += oracle::diag(s[l]).adjoint() * f.adjoint() * u * oracle::vec(y[l]);
  CHECK(rel_diff(adjoint(y, s, m), oracle::grid<ComplexImage>(adj, n, n)) <= 1e-10);
}

TEST_CASE("forward with identity coil and full mask is the plain transform")
{
  const auto x = oracle::random_grid(10, 12, 4);
  const auto full = make_random_mask(10, 12, 1.0, 0, 0);
  const auto y = forward(x, ones_coil(10, 12), full);
  CHECK(rel_diff(y[0], fft2c(x)) <= 1e-14);
  const auto k = oracle::random_kspace(1, 10, 12, 5);
  CHECK(rel_diff(adjoint(k, ones_coil(10, 12), full), ifft2c(k[0])) <= 1e-14);
}

TEST_CASE("forward is linear and noise lives on sampled lines only")
{
  const auto s = oracle::random_sens(3, 16, 16, 6);
  const auto m = make_random_mask(16, 16, 4.0, 2, 1);
  const auto a = oracle::random_grid(16, 16, 7), b = oracle::random_grid(16, 16, 8);
  const auto ya = forward(a, s, m), yb = forward(b, s, m), yab = forward(add(scale(a, 2.0), b), s, m);
  for (std::size_t l = 0; l < 3; ++l)
    CHECK(rel_diff(yab[l], add(scale(ya[l], 2.0), yb[l])) <= 1e-12);

  const auto noise = forward(ComplexImage(16, 16), s, m, 0.5, 99);
  double power = 0.0;
  std::size_t count = 0;
  for (std::size_t l = 0; l < 3; ++l)
    for (std::size_t r = 0; r < 16; ++r)
      for (std::size_t c = 0; c < 16; ++c) {
        if (m.selected(c)) {
          power += std::norm(noise[l](r, c));
          ++count;
        } else {
          CHECK(noise[l](r, c) == cplx(0.0, 0.0));
        }
      }
  CHECK(power / count == doctest::Approx(2 * 0.25).epsilon(0.25));
  const auto again = forward(ComplexImage(16, 16), s, m, 0.5, 99);
  for (std::size_t l = 0; l < 3; ++l)
    CHECK(again[l] == noise[l]);
}

TEST_CASE("zero-filled reconstruction inverts full noiseless sampling on the support")
{
  const auto x = make_phantom(32, 32, PhantomKind::shepp_logan, 0, true);
  const auto s = SensitivitySet::normalize(make_coil_profiles(32, 32, 4, 1));
  const auto full = make_random_mask(32, 32, 1.0, 0, 0);
  const auto x0 = zero_filled(forward(x, s, full), s);
  double err = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (s.support()[i])
      err = std::max(err, std::abs(x0[i] - x[i]));
  CHECK(err <= 1e-8);

  const auto m = make_random_mask(32, 32, 4.0, 4, 2);
  const auto under = zero_filled(forward(x, s, m), s);
  CHECK(psnr(magnitude(under), magnitude(x), &s.support()) < psnr(magnitude(x0), magnitude(x), &s.support()));
}

TEST_CASE("sensitivity normalization")
{
  const auto s = SensitivitySet::normalize(make_coil_profiles(24, 24, 3, 4));
  for (std::size_t i = 0; i < s.power().size(); ++i)
    if (s.support()[i])
      CHECK(std::abs(s.power()[i] - 1.0) <= 1e-12);

  ComplexImage a(4, 4), b(4, 4);
  a(1, 1) = cplx(3.0, 0.0);
  b(1, 1) = cplx(0.0, 4.0);
  const auto two = SensitivitySet::normalize({a, b});
  CHECK(two.support()[5] == 1);
  CHECK(two.support()[0] == 0);
  CHECK(two[0](0, 0) == cplx(0.0, 0.0));
  CHECK(std::abs(two[0](1, 1) - cplx(0.6, 0.0)) <= 1e-15);

  CHECK_NOTHROW(SensitivitySet::from_maps(s.maps()));
  auto bad = s.maps();
  bad[0][100] *= 2.0;
  CHECK_THROWS_AS(SensitivitySet::from_maps(bad), EstimationError);
  CHECK_THROWS_AS(SensitivitySet::normalize({a, ComplexImage(4, 5)}), ShapeError);
}

TEST_CASE("rss_combine")
{
  ComplexImage a(1, 2), b(1, 2);
  a[0] = cplx(3.0, 0.0);
  b[0] = cplx(0.0, 4.0);
  a[1] = cplx(1.0, 1.0);
  const auto r = rss_combine({a, b});
  CHECK(r[0] == doctest::Approx(5.0));
  CHECK(r[1] == doctest::Approx(std::sqrt(2.0)));
  CHECK(rss_combine({a})[0] == doctest::Approx(3.0));
}
