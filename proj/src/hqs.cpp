#include "pcsmri/hqs.hpp"

#include <algorithm>
#include <cmath>

#include "pcsmri/fft.hpp"
#include "pcsmri/kernels.hpp"

namespace pcsmri {

namespace {

void check_penalty(double v, const char *name, bool allow_zero)
{
  if (!std::isfinite(v) || v < 0.0 || (!allow_zero && v == 0.0))
    throw ConfigError(std::string(name) + (allow_zero ? " must be >= 0" : " must be > 0"));
}

void check_finite(const ComplexImage &img, const char *step, int t)
{
  if (!all_finite(img.data()))
    throw DivergenceError(std::string(step) + " produced non-finite values at iteration " + std::to_string(t));
}

void check_problem(const MultiCoilKSpace &y, const SensitivitySet &sens, const SamplingMask &mask)
{
  require_same_shape(y.shape(), sens.shape(), "k-space vs sensitivities");
  require_same_shape(y.shape(), mask.shape(), "k-space vs mask");
  if (y.coils() != sens.coils())
    throw ShapeError(std::to_string(y.coils()) + " k-space coils vs " + std::to_string(sens.coils()) +
                     " sensitivity maps");
}

} // namespace

ConsistencyWeight::ConsistencyWeight(double v) : scalar_(v)
{
  if (!(v >= 0.0 && v <= 1.0))
    throw ConfigError("soft-consistency weight v must lie in [0, 1]");
}

ConsistencyWeight::ConsistencyWeight(RealImage map) : map_(std::move(map))
{
  for (double v : map_->data())
    if (!(v >= 0.0 && v <= 1.0))
      throw ConfigError("soft-consistency map values must lie in [0, 1]");
}

void SolverConfig::validate() const
{
  check_penalty(alpha, "alpha", false);
  check_penalty(beta, "beta", false);
  check_penalty(lambda, "lambda", true);
  if (iterations < 1)
    throw ConfigError("iterations must be >= 1");
  auto check_schedule = [&](const std::vector<double> &s, const char *name, bool allow_zero) {
    if (s.empty())
      return;
    if (s.size() != static_cast<std::size_t>(iterations))
      throw ConfigError(std::string(name) + " needs exactly " + std::to_string(iterations) + " entries");
    for (double v : s)
      check_penalty(v, name, allow_zero);
  };
  check_schedule(alpha_schedule, "alpha_schedule", false);
  check_schedule(beta_schedule, "beta_schedule", false);
  check_schedule(lambda_schedule, "lambda_schedule", true);
  prior.validate();
}

Penalties SolverConfig::at(int t) const
{
  const auto pick = [t](const std::vector<double> &s, double fallback) {
    return s.empty() ? fallback : s[static_cast<std::size_t>(std::clamp(t, 1, static_cast<int>(s.size())) - 1)];
  };
  return {pick(alpha_schedule, alpha), pick(beta_schedule, beta), pick(lambda_schedule, lambda)};
}

std::vector<ComplexImage> dc_update(const ComplexImage &x_prev, const MultiCoilKSpace &y,
                                    const SensitivitySet &sens, const SamplingMask &mask, double alpha,
                                    const ConsistencyWeight &v)
{
  check_penalty(alpha, "alpha", false);
  check_problem(y, sens, mask);
  require_same_shape(x_prev.shape(), y.shape(), "dc_update");
  std::span<const double> v_map;
  if (v.map()) {
    require_same_shape(v.map()->shape(), y.shape(), "soft-consistency map");
    v_map = v.map()->data();
  }

  const auto coils = static_cast<std::ptrdiff_t>(sens.coils());
  std::vector<ComplexImage> m(sens.coils());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t l = 0; l < coils; ++l) {
    KSpaceGrid k = fft2c(mul(sens[l], x_prev));
    kernels::dc_blend(k.data(), y[l].data(), mask.line_selected, mask.width, alpha, v.scalar(), v_map);
    m[l] = ifft2c(k);
  }
  return m;
}

ComplexImage x_update(const ComplexImage &z, const std::vector<ComplexImage> &m, const SensitivitySet &sens,
                      double alpha, double beta)
{
  check_penalty(alpha, "alpha", false);
  check_penalty(beta, "beta", false);
  if (m.size() != sens.coils())
    throw ShapeError("x_update: " + std::to_string(m.size()) + " coil images vs " +
                     std::to_string(sens.coils()) + " maps");
  require_same_shape(z.shape(), sens.shape(), "x_update");
  ComplexImage sh_m(z.shape());
  for (std::size_t l = 0; l < m.size(); ++l) {
    require_same_shape(m[l].shape(), z.shape(), "x_update");
    kernels::accumulate_adjoint(sh_m.data(), sens[l].data(), m[l].data());
  }
  ComplexImage x(z.shape());
  kernels::x_combine(x.data(), z.data(), sh_m.data(), sens.power().data(), alpha, beta);
  return x;
}

double objective(const SolverState &state, const MultiCoilKSpace &y, const SensitivitySet &sens,
                 const SamplingMask &mask, const Penalties &p, const PriorSpec &prior)
{
  check_problem(y, sens, mask);
  double data = 0.0, coupling = 0.0;
  for (std::size_t l = 0; l < sens.coils(); ++l) {
    const KSpaceGrid residual = apply_mask(sub(fft2c(state.m[l]), y[l]), mask);
    data += squared_norm(residual.data());
    coupling += squared_norm(sub(state.m[l], mul(sens[l], state.x)).data());
  }
  const double split = squared_norm(sub(state.z, state.x).data());
  double value = 0.5 * data + 0.5 * p.alpha * coupling + 0.5 * p.beta * split;
  if (const auto r = regularizer(state.z, prior))
    value += p.lambda * *r;
  return value;
}

SolverState initial_state(const MultiCoilKSpace &y, const SensitivitySet &sens, const SamplingMask &mask,
                          const SolverConfig &config)
{
  config.validate();
  check_problem(y, sens, mask);
  if (mask.selected_count() == 0)
    throw ProtocolError("sampling mask selects no lines; reconstruction is ill-posed");

  SolverState s;
  s.x = zero_filled(y, sens);
  check_finite(s.x, "zero-filled initialization", 0);
  s.z = s.x;
  s.m.reserve(sens.coils());
  for (const auto &map : sens.maps())
    s.m.push_back(mul(map, s.x));
  s.objective_without_prior = !config.prior.has_regularizer();
  s.objective.push_back(objective(s, y, sens, mask, config.at(1), config.prior));
  return s;
}

void iterate(SolverState &state, const MultiCoilKSpace &y, const SensitivitySet &sens, const SamplingMask &mask,
             const SolverConfig &config)
{
  const int t = state.iteration + 1;
  const Penalties p = config.at(t);

  ProxResult prox = prox_filter(state.x, config.prior, p.beta, p.lambda, static_cast<std::size_t>(t));
  check_finite(prox.z, "filtering step", t);
  std::vector<ComplexImage> m = dc_update(state.x, y, sens, mask, p.alpha, config.v);
  for (const auto &ml : m)
    check_finite(ml, "data-consistency step", t);
  ComplexImage x = x_update(prox.z, m, sens, p.alpha, p.beta);
  check_finite(x, "auxiliary x-update", t);

  state.z = std::move(prox.z);
  state.m = std::move(m);
  state.x = std::move(x);
  state.iteration = t;
  state.suboptimality.push_back(prox.suboptimality);
  state.prior_not_converged = state.prior_not_converged || !prox.converged;
  state.objective.push_back(objective(state, y, sens, mask, p, config.prior));
  if (config.record_history)
    state.snapshots.push_back(state.x);
}

SolveResult solve(const MultiCoilKSpace &y, const SensitivitySet &sens, const SamplingMask &mask,
                  const SolverConfig &config)
{
  SolverState state = initial_state(y, sens, mask, config);
  for (int t = 1; t <= config.iterations; ++t)
    iterate(state, y, sens, mask, config);
  ComplexImage x = state.x;
  return {std::move(x), std::move(state)};
}

} // namespace pcsmri
