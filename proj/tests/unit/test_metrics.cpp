#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "oracles/random.hpp"
#include "oracles/ssim_direct.hpp"
#include "pcsmri/metrics.hpp"
#include "pcsmri/phantom.hpp"

using namespace pcsmri;

namespace {

struct Scalar
{
  double psnr, rmse, nmse;
};

Scalar scalar_metrics(const RealImage &x, const RealImage &y, const Support *s)
{
  double se = 0.0, energy = 0.0, peak = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (s && !(*s)[i])
      continue;
    se += (x[i] - y[i]) * (x[i] - y[i]);
    energy += y[i] * y[i];
    peak = std::max(peak, y[i]);
    ++n;
  }
  const double mse = se / n;
  return {10.0 * std::log10(peak * peak / mse), std::sqrt(mse), se / energy};
}

RealImage noisy_copy(const RealImage &y, double sigma, std::uint64_t seed)
{
  const auto n = oracle::random_real(y.height(), y.width(), seed, -sigma, sigma);
  RealImage out = y;
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::abs(out[i] + n[i]);
  return out;
}

Support disk(std::size_t n)
{
  Support s(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const double dr = r - n / 2.0, dc = c - n / 2.0;
      s[r * n + c] = dr * dr + dc * dc < n * n / 9.0;
    }
  return s;
}

} // namespace

TEST_CASE("metrics match scalar recomputation")
{
  const auto gt = magnitude(make_phantom(64, 64, PhantomKind::shepp_logan, 0));
  const auto rec = noisy_copy(gt, 0.05, 3);
  const Support s = disk(64);
  for (const Support *sup : {static_cast<const Support *>(nullptr), &s}) {
    const Scalar ref = scalar_metrics(rec, gt, sup);
    CHECK(std::abs(psnr(rec, gt, sup) - ref.psnr) <= 1e-10 * ref.psnr);
    CHECK(std::abs(rmse(rec, gt, sup) - ref.rmse) <= 1e-10 * ref.rmse);
    CHECK(std::abs(nmse(rec, gt, sup) - ref.nmse) <= 1e-10 * ref.nmse);
  }
}

TEST_CASE("PSNR of a constant error")
{
  RealImage gt(16, 16), rec(16, 16);
  gt[0] = 1.0;
  for (std::size_t i = 0; i < rec.size(); ++i)
    rec[i] = gt[i] + 0.1;
  CHECK(psnr(rec, gt) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(rmse(rec, gt) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("identical images")
{
  const auto gt = magnitude(make_phantom(32, 32, PhantomKind::smooth_blobs, 1));
  CHECK(psnr(gt, gt) == std::numeric_limits<double>::infinity());
  CHECK(ssim(gt, gt) == 1.0);
  CHECK(rmse(gt, gt) == 0.0);
  CHECK(nmse(gt, gt) == 0.0);
  CHECK(format_psnr(psnr(gt, gt)) == "99.99");
  CHECK(format_psnr(31.234567) == "31.23");
}

TEST_CASE("SSIM matches the definitional window loop")
{
  const auto gt = magnitude(make_phantom(48, 40, PhantomKind::shepp_logan, 0));
  const auto rec = noisy_copy(gt, 0.1, 4);
  CHECK(std::abs(ssim(rec, gt) - oracle::ssim_direct(rec, gt, nullptr)) <= 1e-6);
  Support s(gt.size(), 0);
  for (std::size_t r = 10; r < 40; ++r)
    for (std::size_t c = 8; c < 30; ++c)
      s[r * 40 + c] = 1;
  CHECK(std::abs(ssim(rec, gt, &s) - oracle::ssim_direct(rec, gt, &s)) <= 1e-6);
}

TEST_CASE("SSIM decreases with distortion")
{
  const auto gt = magnitude(make_phantom(64, 64, PhantomKind::shepp_logan, 0));
  RealImage shifted(64, 64);
  for (std::size_t r = 0; r < 64; ++r)
    for (std::size_t c = 1; c < 64; ++c)
      shifted(r, c) = gt(r, c - 1);
  const double v = ssim(shifted, gt);
  CHECK(v < 1.0);
  CHECK(v > 0.0);
  CHECK(ssim(noisy_copy(gt, 0.2, 1), gt) < ssim(noisy_copy(gt, 0.02, 1), gt));
}

TEST_CASE("metrics need matching shapes")
{
  CHECK_THROWS_AS(psnr(RealImage(4, 4), RealImage(4, 5)), ShapeError);
  CHECK_THROWS_AS(ssim(RealImage(16, 16), RealImage(16, 17)), ShapeError);
}

TEST_CASE("artifact residual and evaluation use magnitudes")
{
  const auto gt = make_phantom(32, 32, PhantomKind::shepp_logan, 0, true);
  const auto x0 = oracle::random_grid(32, 32, 1);
  const auto res = artifact_residual(x0, gt);
  CHECK(res == sub(x0, gt));

  ComplexImage rotated = gt;
  for (auto &v : rotated.data())
    v *= std::polar(1.0, 0.7);
  const auto row = evaluate("c", "m", rotated, gt);
  CHECK(row.rmse <= 1e-15);
  CHECK(row.ssim == doctest::Approx(1.0));

  std::ostringstream os;
  write_report_csv(os, {row, evaluate("c2", "m2", x0, gt)});
  const std::string header = os.str().substr(0, os.str().find('\n'));
  CHECK(header == "case,method,PSNR,SSIM,RMSE,NMSE");
  CHECK(os.str().find("c,m,99.99,") != std::string::npos);
}
