#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "pcsmri/tensor.hpp"

namespace pcsmri {

enum class PriorKind
{
  tikhonov,             // R(z) = ||z||^2
  soft_threshold_image, // R(z) = sum |z_i|
  soft_threshold_haar,  // R(z) = l1 norm of single-level Haar detail bands
  total_variation,      // R(z) = isotropic TV, magnitude-coupled over re/im
  external              // file-exchange denoiser, R unknown
};

std::string to_string(PriorKind kind);
PriorKind parse_prior_kind(std::string_view name);

struct TvOptions
{
  int max_iterations = 50;
  double tolerance = 1e-6; // relative change of the dual variable
};

struct ExternalOptions
{
  std::string command;
  std::filesystem::path exchange_dir;
  std::chrono::milliseconds timeout{60000};
};

struct PriorSpec
{
  PriorKind kind = PriorKind::tikhonov;
  TvOptions tv;
  ExternalOptions external;

  /// Throws ConfigError for invalid kind-specific parameters.
  void validate() const;
  bool has_regularizer() const { return kind != PriorKind::external; }
};

struct ProxResult
{
  ComplexImage z;
  bool converged = true;
  int iterations = 0;
  /// Upper bound on how far z is from the exact minimizer, in units of the
  /// filtering objective (beta/2)||z - x||^2 + lambda R(z). Zero for the
  /// closed-form priors.
  double suboptimality = 0.0;
};

/// z = argmin (beta/2)||z - x_prev||^2 + lambda R(z).
/// `call_index` only names the exchange files for the external prior.
ProxResult prox_filter(const ComplexImage &x_prev, const PriorSpec &prior, double beta, double lambda,
                       std::size_t call_index = 0);

/// R(z); std::nullopt for the external prior.
std::optional<double> regularizer(const ComplexImage &z, const PriorSpec &prior);

// Building blocks, exposed for tests.
ComplexImage soft_threshold(const ComplexImage &x, double threshold);
ComplexImage haar_forward(const ComplexImage &x);
ComplexImage haar_inverse(const ComplexImage &coeffs);
/// True for coefficients in a detail band of haar_forward()'s layout.
bool haar_is_detail(std::size_t r, std::size_t c, Shape shape);
double total_variation(const ComplexImage &z);

/// Denoise through an external program. Writes `x` to
/// <exchange_dir>/prox_in_<call_index> (complex128 container), runs
///   /bin/sh -c '<command> "$@"' sh <in-base> <out-base> <beta> <lambda>
/// and reads <exchange_dir>/prox_out_<call_index>. Throws ExternalPriorError
/// on nonzero exit, timeout, or a missing/malformed result.
ComplexImage run_external_denoiser(const ComplexImage &x, const ExternalOptions &options, double beta,
                                   double lambda, std::size_t call_index);

} // namespace pcsmri
