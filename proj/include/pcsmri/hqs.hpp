#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pcsmri/acquisition.hpp"
#include "pcsmri/prior.hpp"

namespace pcsmri {

struct Penalties
{
  double alpha = 1.0;
  double beta = 1.0;
  double lambda = 0.0;
};

/// Soft-consistency weight v in [0, 1]: a scalar, or one value per k-space bin.
class ConsistencyWeight
{
public:
  ConsistencyWeight(double v = 1.0);
  explicit ConsistencyWeight(RealImage map);

  double scalar() const { return scalar_; }
  const std::optional<RealImage> &map() const { return map_; }

private:
  double scalar_ = 1.0;
  std::optional<RealImage> map_;
};

struct SolverConfig
{
  double alpha = 1.0;
  double beta = 1.0;
  double lambda = 0.0;
  int iterations = 3;
  PriorSpec prior;
  ConsistencyWeight v;
  bool record_history = false;
  // Optional per-iteration overrides; when non-empty they must hold exactly
  // `iterations` entries.
  std::vector<double> alpha_schedule;
  std::vector<double> beta_schedule;
  std::vector<double> lambda_schedule;

  /// Throws ConfigError on any out-of-range field.
  void validate() const;
  /// Penalties used in iteration t (1-based).
  Penalties at(int t) const;
};

struct SolverState
{
  ComplexImage x;
  ComplexImage z;
  std::vector<ComplexImage> m;
  int iteration = 0;
  std::vector<double> objective;      // one entry per completed iteration, plus the initial state
  std::vector<double> suboptimality;  // filtering-step bound per iteration
  bool prior_not_converged = false;   // TV inner loop hit its budget at least once
  bool objective_without_prior = false;
  std::vector<ComplexImage> snapshots; // x^(t) for t = 1..T when record_history
};

struct SolveResult
{
  ComplexImage x;
  SolverState state;
};

/// Data-consistency step: per coil, k = F(S_l x_prev); on acquired bins
/// k <- v (y + alpha k) / (1 + alpha) + (1 - v) k; m_l = F^H k.
std::vector<ComplexImage> dc_update(const ComplexImage &x_prev, const MultiCoilKSpace &y,
                                    const SensitivitySet &sens, const SamplingMask &mask, double alpha,
                                    const ConsistencyWeight &v = {});

/// x = (beta z + alpha sum_l S_l^H m_l) / (beta + alpha sum_l |S_l|^2).
ComplexImage x_update(const ComplexImage &z, const std::vector<ComplexImage> &m,
                      const SensitivitySet &sens, double alpha, double beta);

/// 1/2 sum ||U F m_l - y_l||^2 + lambda R(z) + alpha/2 sum ||m_l - S_l x||^2 + beta/2 ||z - x||^2.
/// The lambda R(z) term is omitted for the external prior.
double objective(const SolverState &state, const MultiCoilKSpace &y, const SensitivitySet &sens,
                 const SamplingMask &mask, const Penalties &penalties, const PriorSpec &prior);

/// x = z = zero-filled image, m_l = S_l x; objective history holds the initial value.
SolverState initial_state(const MultiCoilKSpace &y, const SensitivitySet &sens, const SamplingMask &mask,
                          const SolverConfig &config);

/// One filtering -> data-consistency -> x-update pass. Both the filtering and
/// the data-consistency steps read x^(t-1).
void iterate(SolverState &state, const MultiCoilKSpace &y, const SensitivitySet &sens,
             const SamplingMask &mask, const SolverConfig &config);

SolveResult solve(const MultiCoilKSpace &y, const SensitivitySet &sens, const SamplingMask &mask,
                  const SolverConfig &config);

} // namespace pcsmri
