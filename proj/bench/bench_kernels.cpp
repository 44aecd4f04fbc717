// Serial reference vs OpenMP kernels, plus the full data-consistency step.
// Arg is the square grid size.

#include <benchmark/benchmark.h>

#include <random>

#include "pcsmri/hqs.hpp"
#include "pcsmri/kernels.hpp"
#include "pcsmri/phantom.hpp"

using namespace pcsmri;

namespace {

std::vector<cplx> random_complex(std::size_t n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<cplx> v(n);
  for (auto &x : v)
    x = cplx(d(rng), d(rng));
  return v;
}

struct Data
{
  std::size_t h, w, n;
  std::vector<cplx> a, b, c;
  std::vector<double> s2;
  std::vector<std::uint8_t> lines;

  explicit Data(std::size_t size)
    : h(size), w(size), n(size * size), a(random_complex(n, 1)), b(random_complex(n, 2)), c(random_complex(n, 3)),
      s2(n, 1.0), lines(size)
  {
    for (std::size_t i = 0; i < size; i += 3)
      lines[i] = 1;
  }
};

template <bool Parallel>
void dc_blend(benchmark::State &st)
{
  Data d(st.range(0));
  for (auto _ : st) {
    if constexpr (Parallel)
      kernels::dc_blend(d.a, d.b, d.lines, d.w, 0.5, 0.9, {});
    else
      kernels::serial::dc_blend(d.a, d.b, d.lines, d.w, 0.5, 0.9, {});
    benchmark::DoNotOptimize(d.a.data());
  }
  st.SetItemsProcessed(st.iterations() * d.n);
}

template <bool Parallel>
void accumulate_adjoint(benchmark::State &st)
{
  Data d(st.range(0));
  for (auto _ : st) {
    if constexpr (Parallel)
      kernels::accumulate_adjoint(d.c, d.a, d.b);
    else
      kernels::serial::accumulate_adjoint(d.c, d.a, d.b);
    benchmark::DoNotOptimize(d.c.data());
  }
  st.SetItemsProcessed(st.iterations() * d.n);
}

template <bool Parallel>
void x_combine(benchmark::State &st)
{
  Data d(st.range(0));
  std::vector<cplx> out(d.n);
  for (auto _ : st) {
    if constexpr (Parallel)
      kernels::x_combine(out, d.a, d.b, d.s2, 0.7, 1.3);
    else
      kernels::serial::x_combine(out, d.a, d.b, d.s2, 0.7, 1.3);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * d.n);
}

template <bool Parallel>
void tv_dual_step(benchmark::State &st)
{
  Data d(st.range(0));
  std::vector<cplx> gh(d.n), gv(d.n), div(d.n);
  for (auto _ : st) {
    if constexpr (Parallel) {
      kernels::gradient(gh, gv, d.a, d.h, d.w);
      kernels::project_unit_ball(gh, gv);
      kernels::divergence(div, gh, gv, d.h, d.w);
    } else {
      kernels::serial::gradient(gh, gv, d.a, d.h, d.w);
      kernels::serial::project_unit_ball(gh, gv);
      kernels::serial::divergence(div, gh, gv, d.h, d.w);
    }
    benchmark::DoNotOptimize(div.data());
  }
  st.SetItemsProcessed(st.iterations() * d.n);
}

void dc_update_step(benchmark::State &st)
{
  CaseSpec spec;
  spec.height = spec.width = st.range(0);
  spec.coils = 8;
  spec.protocol = {"custom", MaskKind::random, 4.0, 8};
  const auto sim = simulate_case(spec);
  for (auto _ : st)
    benchmark::DoNotOptimize(dc_update(sim.x_gt, sim.y, sim.sens, sim.mask, 1.0));
}

} // namespace

#define PCSMRI_PAIR(fn)                                                                                    \
  BENCHMARK(fn<false>)->Name(#fn "/serial")->Arg(128)->Arg(512)->Arg(1024)->UseRealTime();             \
  BENCHMARK(fn<true>)->Name(#fn "/openmp")->Arg(128)->Arg(512)->Arg(1024)->UseRealTime();

PCSMRI_PAIR(dc_blend)
PCSMRI_PAIR(accumulate_adjoint)
PCSMRI_PAIR(x_combine)
PCSMRI_PAIR(tv_dual_step)
BENCHMARK(dc_update_step)->Arg(128)->Arg(320)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
