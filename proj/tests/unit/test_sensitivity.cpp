#include <doctest.h>

#include "oracles/random.hpp"
#include "pcsmri/phantom.hpp"
#include "pcsmri/sensitivity.hpp"

using namespace pcsmri;

namespace {

struct Setup
{
  ComplexImage x;
  SensitivitySet truth;
  SamplingMask mask;
  MultiCoilKSpace y;
};

Setup make_setup(std::size_t n, std::size_t coils, PhantomKind kind, double r = 1.0, std::size_t acs = 0)
{
  Setup s;
  s.x = make_phantom(n, n, kind, 3);
  s.truth = SensitivitySet::normalize(make_coil_profiles(n, n, coils, 2));
  s.mask = make_random_mask(n, n, r, acs, 1);
  s.y = forward(s.x, s.truth, s.mask);
  return s;
}

// Largest per-coil deviation over pixels where the object has signal; the
// maps are not observable elsewhere.
double map_error(const SensitivitySet &est, const Setup &s)
{
  double err = 0.0;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    if (std::abs(s.x[i]) <= 0.05)
      continue;
    REQUIRE(est.support()[i]);
    for (std::size_t l = 0; l < est.coils(); ++l)
      err = std::max(err, std::abs(est[l][i] - s.truth[l][i]));
  }
  return err;
}

} // namespace

TEST_CASE("extract_acs keeps the central block")
{
  const auto y = oracle::random_kspace(2, 320, 320, 1);
  const auto m = make_random_mask(320, 320, 4.0, 24, 2);
  const auto acs = extract_acs(y, m, 24);
  for (std::size_t l = 0; l < 2; ++l) {
    std::size_t kept = 0;
    for (std::size_t r = 0; r < 320; ++r)
      for (std::size_t c = 0; c < 320; ++c) {
        const bool inside = r >= 148 && r < 172 && c >= 148 && c < 172;
        if (inside) {
          CHECK(acs[l](r, c) == y[l](r, c));
          ++kept;
        } else {
          CHECK(acs[l](r, c) == cplx(0.0, 0.0));
        }
      }
    CHECK(kept == 576);
  }

  const auto small = oracle::random_kspace(1, 16, 16, 3);
  const auto full = make_random_mask(16, 16, 1.0, 0, 0);
  CHECK(extract_acs(small, full, 16)[0] == small[0]);
}

TEST_CASE("extract_acs protocol errors")
{
  const auto y = oracle::random_kspace(1, 16, 16, 3);
  const auto full = make_random_mask(16, 16, 1.0, 0, 0);
  CHECK_THROWS_AS(extract_acs(y, full, 17), ProtocolError);
  CHECK_THROWS_AS(extract_acs(y, full, 0), ProtocolError);
  const auto thin = make_random_mask(16, 16, 4.0, 2, 0);
  CHECK_THROWS_AS(extract_acs(y, thin, 6), ProtocolError);
}

TEST_CASE("estimated maps recover smooth simulated profiles")
{
  for (auto kind : {PhantomKind::shepp_logan, PhantomKind::smooth_blobs}) {
    const auto s = make_setup(64, 4, kind);
    const auto est = estimate_maps(s.y, s.mask, 24);
    CHECK(map_error(est, s) <= 0.05);
  }
  const auto under = make_setup(64, 4, PhantomKind::shepp_logan, 2.0, 24);
  CHECK(map_error(estimate_maps(under.y, under.mask, 24), under) <= 0.05);
}

TEST_CASE("estimated maps satisfy the normalization contract")
{
  const auto s = make_setup(48, 3, PhantomKind::smooth_blobs);
  for (bool apodize : {true, false}) {
    const auto est = estimate_maps(s.y, s.mask, 16, apodize);
    for (std::size_t i = 0; i < est.power().size(); ++i) {
      if (est.support()[i])
        CHECK(std::abs(est.power()[i] - 1.0) <= 1e-12);
      else
        for (std::size_t l = 0; l < 3; ++l)
          CHECK(est[l][i] == cplx(0.0, 0.0));
    }
  }
}

TEST_CASE("single coil maps have unit magnitude")
{
  const auto s = make_setup(32, 1, PhantomKind::shepp_logan);
  const auto est = estimate_maps(s.y, s.mask, 16);
  for (std::size_t i = 0; i < est[0].size(); ++i)
    if (est.support()[i])
      CHECK(std::abs(std::abs(est[0][i]) - 1.0) <= 1e-12);
}

TEST_CASE("estimated maps are invariant to data scaling")
{
  const auto s = make_setup(32, 3, PhantomKind::smooth_blobs);
  auto scaled = s.y;
  for (std::size_t l = 0; l < scaled.coils(); ++l)
    scaled[l] = scale(scaled[l], 7.5);
  const auto a = estimate_maps(s.y, s.mask, 16), b = estimate_maps(scaled, s.mask, 16);
  CHECK(a.support() == b.support());
  for (std::size_t l = 0; l < 3; ++l)
    CHECK(oracle::rel_diff(b[l], a[l]) <= 1e-10);
}

TEST_CASE("all-zero ACS cannot be estimated")
{
  const MultiCoilKSpace y(2, Shape{16, 16});
  const auto full = make_random_mask(16, 16, 1.0, 0, 0);
  CHECK_THROWS_AS(estimate_maps(y, full, 8), EstimationError);
}
