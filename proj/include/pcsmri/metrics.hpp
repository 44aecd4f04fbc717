#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "pcsmri/tensor.hpp"

namespace pcsmri {

// All metrics compare magnitude images. `support`, when non-null, restricts
// every statistic (peak, range, means) to pixels with support != 0.
// PSNR and SSIM take their dynamic range from `gt`, so the argument order
// matters.

/// 10 log10(max(gt)^2 / MSE); +infinity for identical inputs.
double psnr(const RealImage &rec, const RealImage &gt, const Support *support = nullptr);

inline constexpr std::size_t kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr double kSsimK1 = 0.01;
inline constexpr double kSsimK2 = 0.03;

/// Mean local SSIM over every 11x11 Gaussian (sigma 1.5) window that fits in
/// the image, with L = max(gt) - min(gt). With a support, windows are
/// averaged over centers inside it.
double ssim(const RealImage &rec, const RealImage &gt, const Support *support = nullptr);

double rmse(const RealImage &rec, const RealImage &gt, const Support *support = nullptr);
double nmse(const RealImage &rec, const RealImage &gt, const Support *support = nullptr);

/// x_init - x_gt.
ComplexImage artifact_residual(const ComplexImage &x_init, const ComplexImage &x_gt);

inline constexpr double kPsnrCap = 99.99;

struct MetricRow
{
  std::string case_name;
  std::string method;
  double psnr = 0.0;
  double ssim = 0.0;
  double rmse = 0.0;
  double nmse = 0.0;
};

MetricRow evaluate(const std::string &case_name, const std::string &method, const ComplexImage &rec,
                   const ComplexImage &gt, const Support *support = nullptr);

/// "case,method,PSNR,SSIM,RMSE,NMSE" header plus one line per row. PSNR is
/// capped at 99.99 in the text.
void write_report_csv(std::ostream &os, const std::vector<MetricRow> &rows);
void write_report_table(std::ostream &os, const std::vector<MetricRow> &rows);
std::string format_psnr(double db);

} // namespace pcsmri
