#include "pcsmri/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace pcsmri {

namespace {

void check_pair(const RealImage &rec, const RealImage &gt, const Support *support, const char *what)
{
  require_same_shape(rec.shape(), gt.shape(), what);
  if (support && support->size() != gt.size())
    throw ShapeError(std::string(what) + ": support size does not match image");
}

bool inside(const Support *support, std::size_t i) { return !support || (*support)[i] != 0; }

struct ErrorStats
{
  double sse = 0.0;
  double ref_energy = 0.0;
  double peak = -std::numeric_limits<double>::infinity();
  double low = std::numeric_limits<double>::infinity();
  std::size_t count = 0;
};

ErrorStats error_stats(const RealImage &rec, const RealImage &gt, const Support *support)
{
  ErrorStats s;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (!inside(support, i))
      continue;
    const double d = rec[i] - gt[i];
    s.sse += d * d;
    s.ref_energy += gt[i] * gt[i];
    s.peak = std::max(s.peak, gt[i]);
    s.low = std::min(s.low, gt[i]);
    ++s.count;
  }
  if (s.count == 0)
    throw ShapeError("metric support is empty");
  return s;
}

std::vector<double> gaussian_window()
{
  std::vector<double> g(kSsimWindow);
  const double half = 0.5 * (kSsimWindow - 1.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < kSsimWindow; ++i) {
    const double d = static_cast<double>(i) - half;
    g[i] = std::exp(-d * d / (2.0 * kSsimSigma * kSsimSigma));
    sum += g[i];
  }
  for (auto &v : g)
    v /= sum;
  return g;
}

// Separable "valid" Gaussian filtering: output is (H - 10) x (W - 10).
std::vector<double> filter_valid(const std::vector<double> &in, std::size_t h, std::size_t w,
                                 const std::vector<double> &g)
{
  const std::size_t k = g.size(), oh = h - k + 1, ow = w - k + 1;
  std::vector<double> rows(h * ow);
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < ow; ++c) {
      double s = 0.0;
      for (std::size_t j = 0; j < k; ++j)
        s += g[j] * in[r * w + c + j];
      rows[r * ow + c] = s;
    }
  std::vector<double> out(oh * ow);
  for (std::size_t r = 0; r < oh; ++r)
    for (std::size_t c = 0; c < ow; ++c) {
      double s = 0.0;
      for (std::size_t j = 0; j < k; ++j)
        s += g[j] * rows[(r + j) * ow + c];
      out[r * ow + c] = s;
    }
  return out;
}

} // namespace

double psnr(const RealImage &rec, const RealImage &gt, const Support *support)
{
  check_pair(rec, gt, support, "psnr");
  const ErrorStats s = error_stats(rec, gt, support);
  if (!(s.peak > 0.0))
    throw ConfigError("psnr: ground truth has no positive peak");
  if (s.sse == 0.0)
    return std::numeric_limits<double>::infinity();
  const double mse = s.sse / static_cast<double>(s.count);
  return 10.0 * std::log10(s.peak * s.peak / mse);
}

double rmse(const RealImage &rec, const RealImage &gt, const Support *support)
{
  check_pair(rec, gt, support, "rmse");
  const ErrorStats s = error_stats(rec, gt, support);
  return std::sqrt(s.sse / static_cast<double>(s.count));
}

double nmse(const RealImage &rec, const RealImage &gt, const Support *support)
{
  check_pair(rec, gt, support, "nmse");
  const ErrorStats s = error_stats(rec, gt, support);
  if (s.ref_energy == 0.0)
    throw ConfigError("nmse: ground truth is identically zero");
  return s.sse / s.ref_energy;
}

double ssim(const RealImage &rec, const RealImage &gt, const Support *support)
{
  check_pair(rec, gt, support, "ssim");
  const std::size_t h = gt.height(), w = gt.width();
  if (h < kSsimWindow || w < kSsimWindow)
    throw ShapeError("ssim: image " + to_string(gt.shape()) + " is smaller than the 11x11 window");
  const ErrorStats s = error_stats(rec, gt, support);
  const double range = s.peak - s.low;
  if (!(range > 0.0))
    throw ConfigError("ssim: ground truth has zero dynamic range");
  const double c1 = (kSsimK1 * range) * (kSsimK1 * range);
  const double c2 = (kSsimK2 * range) * (kSsimK2 * range);

  const auto g = gaussian_window();
  const std::size_t n = h * w;
  std::vector<double> x(rec.data().begin(), rec.data().end()), y(gt.data().begin(), gt.data().end());
  std::vector<double> xx(n), yy(n), xy(n);
  for (std::size_t i = 0; i < n; ++i) {
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  const auto mx = filter_valid(x, h, w, g), my = filter_valid(y, h, w, g);
  const auto exx = filter_valid(xx, h, w, g), eyy = filter_valid(yy, h, w, g), exy = filter_valid(xy, h, w, g);

  const std::size_t half = kSsimWindow / 2, ow = w - kSsimWindow + 1;
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const std::size_t r = i / ow + half, c = i % ow + half;
    if (!inside(support, r * w + c))
      continue;
    const double vx = exx[i] - mx[i] * mx[i];
    const double vy = eyy[i] - my[i] * my[i];
    const double cov = exy[i] - mx[i] * my[i];
    total += ((2.0 * mx[i] * my[i] + c1) * (2.0 * cov + c2)) /
             ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2));
    ++count;
  }
  if (count == 0)
    throw ShapeError("ssim: no window center lies inside the support");
  return total / static_cast<double>(count);
}

ComplexImage artifact_residual(const ComplexImage &x_init, const ComplexImage &x_gt)
{
  return sub(x_init, x_gt);
}

MetricRow evaluate(const std::string &case_name, const std::string &method, const ComplexImage &rec,
                   const ComplexImage &gt, const Support *support)
{
  const RealImage r = magnitude(rec), g = magnitude(gt);
  return {case_name, method, psnr(r, g, support), ssim(r, g, support), rmse(r, g, support), nmse(r, g, support)};
}

std::string format_psnr(double db)
{
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << std::min(db, kPsnrCap);
  return os.str();
}

void write_report_csv(std::ostream &os, const std::vector<MetricRow> &rows)
{
  os << "case,method,PSNR,SSIM,RMSE,NMSE\n";
  for (const auto &r : rows) {
    os << r.case_name << ',' << r.method << ',' << format_psnr(r.psnr) << ',';
    os << std::setprecision(6) << std::fixed << r.ssim << ',' << std::scientific << r.rmse << ',' << r.nmse
       << '\n';
    os.unsetf(std::ios::floatfield);
  }
}

void write_report_table(std::ostream &os, const std::vector<MetricRow> &rows)
{
  os << std::left << std::setw(16) << "case" << std::setw(28) << "method" << std::right << std::setw(9) << "PSNR"
     << std::setw(10) << "SSIM" << std::setw(13) << "RMSE" << std::setw(13) << "NMSE" << '\n';
  for (const auto &r : rows) {
    os << std::left << std::setw(16) << r.case_name << std::setw(28) << r.method << std::right << std::setw(9)
       << format_psnr(r.psnr) << std::setw(10) << std::fixed << std::setprecision(4) << r.ssim << std::setw(13)
       << std::scientific << std::setprecision(4) << r.rmse << std::setw(13) << r.nmse << '\n';
    os.unsetf(std::ios::floatfield);
  }
}

} // namespace pcsmri
