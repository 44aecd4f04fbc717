#include "pcsmri/prior.hpp"

#include <cmath>

#include "pcsmri/kernels.hpp"

namespace pcsmri {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::size_t even(std::size_t n) { return n - n % 2; }

// Fast gradient projection on the dual of
//   min_z 1/2 ||z - b||^2 + theta TV(z),  z = b + theta div p, |p| <= 1.
ProxResult tv_prox(const ComplexImage &b, double theta, const TvOptions &opt)
{
  const std::size_t h = b.height(), w = b.width(), n = b.size();
  ProxResult res;
  if (theta == 0.0) {
    res.z = b;
    return res;
  }

  std::vector<cplx> ph(n), pv(n), rh(n), rv(n), gh(n), gv(n), div(n), nh(n), nv(n);
  ComplexImage z(b.shape());
  auto primal_from = [&](std::span<const cplx> qh, std::span<const cplx> qv) {
    kernels::divergence(div, qh, qv, h, w);
    for (std::size_t i = 0; i < n; ++i)
      z[i] = b[i] + theta * div[i];
  };

  const double step = 1.0 / (8.0 * theta);
  double t = 1.0;
  res.converged = false;
  for (int k = 1; k <= opt.max_iterations; ++k) {
    primal_from(rh, rv);
    kernels::gradient(gh, gv, z.data(), h, w);
    for (std::size_t i = 0; i < n; ++i) {
      nh[i] = rh[i] + step * gh[i];
      nv[i] = rv[i] + step * gv[i];
    }
    kernels::project_unit_ball(nh, nv);

    double diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      diff += std::norm(nh[i] - ph[i]) + std::norm(nv[i] - pv[i]);
      norm += std::norm(nh[i]) + std::norm(nv[i]);
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double momentum = (t - 1.0) / t_next;
    for (std::size_t i = 0; i < n; ++i) {
      rh[i] = nh[i] + momentum * (nh[i] - ph[i]);
      rv[i] = nv[i] + momentum * (nv[i] - pv[i]);
    }
    ph.swap(nh);
    pv.swap(nv);
    t = t_next;
    res.iterations = k;
    if (diff == 0.0 || (norm > 0.0 && std::sqrt(diff / norm) < opt.tolerance)) {
      res.converged = true;
      break;
    }
  }

  primal_from(ph, pv);
  // Duality gap of the normalized problem bounds the suboptimality of z.
  const double primal = 0.5 * squared_norm(sub(z, b).data()) + theta * total_variation(z);
  const double dual = 0.5 * squared_norm(b.data()) - 0.5 * squared_norm(z.data());
  res.suboptimality = std::max(primal - dual, 0.0);
  res.z = std::move(z);
  return res;
}

} // namespace

std::string to_string(PriorKind kind)
{
  switch (kind) {
  case PriorKind::tikhonov:
    return "tikhonov";
  case PriorKind::soft_threshold_image:
    return "soft_threshold_image";
  case PriorKind::soft_threshold_haar:
    return "soft_threshold_haar";
  case PriorKind::total_variation:
    return "total_variation";
  case PriorKind::external:
    return "external";
  }
  return "unknown";
}

PriorKind parse_prior_kind(std::string_view name)
{
  for (auto k : {PriorKind::tikhonov, PriorKind::soft_threshold_image, PriorKind::soft_threshold_haar,
                 PriorKind::total_variation, PriorKind::external})
    if (name == to_string(k))
      return k;
  if (name == "tv")
    return PriorKind::total_variation;
  throw ConfigError("unknown prior '" + std::string(name) + "'");
}

void PriorSpec::validate() const
{
  if (kind == PriorKind::total_variation) {
    if (tv.max_iterations < 1)
      throw ConfigError("tv_iterations must be >= 1");
    if (!(tv.tolerance >= 0.0))
      throw ConfigError("tv_tolerance must be >= 0");
  }
  if (kind == PriorKind::external) {
    if (external.command.empty())
      throw ConfigError("external prior needs a command");
    if (external.timeout.count() <= 0)
      throw ConfigError("external prior timeout must be positive");
  }
}

ComplexImage soft_threshold(const ComplexImage &x, double threshold)
{
  ComplexImage out(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::abs(x[i]);
    if (a > threshold)
      out[i] = x[i] * ((a - threshold) / a);
  }
  return out;
}

// Layout: with He, We the even parts of the dimensions, the LL band occupies
// [0, He/2) x [0, We/2), the three detail bands fill the rest of
// [0, He) x [0, We), and an odd trailing row/column passes through unchanged.
ComplexImage haar_forward(const ComplexImage &x)
{
  const std::size_t h = x.height(), w = x.width(), he = even(h), we = even(w);
  ComplexImage tmp = x;
  for (std::size_t r = 0; r < he; ++r)
    for (std::size_t c = 0; c < we / 2; ++c) {
      const cplx a = x(r, 2 * c), b = x(r, 2 * c + 1);
      tmp(r, c) = (a + b) * kInvSqrt2;
      tmp(r, we / 2 + c) = (a - b) * kInvSqrt2;
    }
  ComplexImage out = tmp;
  for (std::size_t c = 0; c < we; ++c)
    for (std::size_t r = 0; r < he / 2; ++r) {
      const cplx a = tmp(2 * r, c), b = tmp(2 * r + 1, c);
      out(r, c) = (a + b) * kInvSqrt2;
      out(he / 2 + r, c) = (a - b) * kInvSqrt2;
    }
  return out;
}

ComplexImage haar_inverse(const ComplexImage &coeffs)
{
  const std::size_t h = coeffs.height(), w = coeffs.width(), he = even(h), we = even(w);
  ComplexImage tmp = coeffs;
  for (std::size_t c = 0; c < we; ++c)
    for (std::size_t r = 0; r < he / 2; ++r) {
      const cplx s = coeffs(r, c), d = coeffs(he / 2 + r, c);
      tmp(2 * r, c) = (s + d) * kInvSqrt2;
      tmp(2 * r + 1, c) = (s - d) * kInvSqrt2;
    }
  ComplexImage out = tmp;
  for (std::size_t r = 0; r < he; ++r)
    for (std::size_t c = 0; c < we / 2; ++c) {
      const cplx s = tmp(r, c), d = tmp(r, we / 2 + c);
      out(r, 2 * c) = (s + d) * kInvSqrt2;
      out(r, 2 * c + 1) = (s - d) * kInvSqrt2;
    }
  return out;
}

bool haar_is_detail(std::size_t r, std::size_t c, Shape shape)
{
  const std::size_t he = even(shape.height), we = even(shape.width);
  if (r >= he || c >= we)
    return false;
  return r >= he / 2 || c >= we / 2;
}

double total_variation(const ComplexImage &z)
{
  const std::size_t n = z.size();
  std::vector<cplx> gh(n), gv(n);
  kernels::gradient(gh, gv, z.data(), z.height(), z.width());
  std::vector<double> mag(n);
  for (std::size_t i = 0; i < n; ++i)
    mag[i] = std::sqrt(std::norm(gh[i]) + std::norm(gv[i]));
  double total = 0.0;
  for (double v : mag)
    total += v;
  return total;
}

std::optional<double> regularizer(const ComplexImage &z, const PriorSpec &prior)
{
  switch (prior.kind) {
  case PriorKind::tikhonov:
    return squared_norm(z.data());
  case PriorKind::soft_threshold_image: {
    double s = 0.0;
    for (const auto &v : z.data())
      s += std::abs(v);
    return s;
  }
  case PriorKind::soft_threshold_haar: {
    const ComplexImage wc = haar_forward(z);
    double s = 0.0;
    for (std::size_t r = 0; r < wc.height(); ++r)
      for (std::size_t c = 0; c < wc.width(); ++c)
        if (haar_is_detail(r, c, wc.shape()))
          s += std::abs(wc(r, c));
    return s;
  }
  case PriorKind::total_variation:
    return total_variation(z);
  case PriorKind::external:
    return std::nullopt;
  }
  return std::nullopt;
}

ProxResult prox_filter(const ComplexImage &x_prev, const PriorSpec &prior, double beta, double lambda,
                       std::size_t call_index)
{
  if (!(beta > 0.0))
    throw ConfigError("prox_filter: beta must be > 0");
  if (!(lambda >= 0.0))
    throw ConfigError("prox_filter: lambda must be >= 0");
  prior.validate();

  ProxResult res;
  switch (prior.kind) {
  case PriorKind::tikhonov:
    res.z = scale(x_prev, beta / (beta + 2.0 * lambda));
    break;
  case PriorKind::soft_threshold_image:
    res.z = soft_threshold(x_prev, lambda / beta);
    break;
  case PriorKind::soft_threshold_haar: {
    ComplexImage wc = haar_forward(x_prev);
    const double t = lambda / beta;
    for (std::size_t r = 0; r < wc.height(); ++r)
      for (std::size_t c = 0; c < wc.width(); ++c)
        if (haar_is_detail(r, c, wc.shape())) {
          cplx &v = wc(r, c);
          const double a = std::abs(v);
          v = a > t ? v * ((a - t) / a) : cplx{};
        }
    res.z = haar_inverse(wc);
    break;
  }
  case PriorKind::total_variation:
    res = tv_prox(x_prev, lambda / beta, prior.tv);
    res.suboptimality *= beta;
    break;
  case PriorKind::external:
    res.z = run_external_denoiser(x_prev, prior.external, beta, lambda, call_index);
    break;
  }
  return res;
}

} // namespace pcsmri
