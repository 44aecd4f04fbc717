#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles/random.hpp"
#include "pcsmri/sampling.hpp"

using namespace pcsmri;

namespace {

bool acs_full(const SamplingMask &m)
{
  for (std::size_t c = m.acs_begin(); c < m.acs_begin() + m.acs_width; ++c)
    if (!m.selected(c))
      return false;
  return true;
}

} // namespace

TEST_CASE("random mask at R=4 on 320 columns keeps 80 lines with a central ACS band")
{
  const auto m = make_random_mask(320, 320, 4.0, 24, 7);
  CHECK(m.selected_count() == 80);
  CHECK(m.acs_begin() == 148);
  CHECK(acs_full(m));
  CHECK(m.line_selected.size() == 320);
}

TEST_CASE("R=1 without ACS selects every line")
{
  const auto m = make_random_mask(8, 16, 1.0, 0, 3);
  CHECK(m.selected_count() == 16);
}

TEST_CASE("random masks are deterministic in the seed and vary across seeds")
{
  const auto a = make_random_mask(16, 16, 4.0, 2, 42);
  const auto b = make_random_mask(16, 16, 4.0, 2, 42);
  CHECK(a.line_selected == b.line_selected);

  int differing = 0;
  for (std::uint64_t s = 0; s < 100; ++s)
    differing += make_random_mask(16, 16, 4.0, 2, s).line_selected != a.line_selected;
  CHECK(differing > 0);
}

TEST_CASE("random mask budget is exact")
{
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> wd(16, 400);
  std::uniform_real_distribution<double> rd(1.0, 8.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t w = wd(rng);
    const double r = rd(rng);
    const auto budget = static_cast<std::size_t>(std::llround(w / r));
    const std::size_t acs = std::min<std::size_t>(budget, rng() % 25);
    const auto m = make_random_mask(4, w, r, acs, trial);
    CAPTURE(w);
    CAPTURE(r);
    CHECK(m.selected_count() == budget);
    CHECK(acs_full(m));
  }
}

TEST_CASE("invalid random mask budgets are configuration errors")
{
  CHECK_THROWS_AS(make_random_mask(16, 16, 8.0, 4, 0), ConfigError);
  CHECK_THROWS_AS(make_random_mask(16, 16, 0.5, 0, 0), ConfigError);
  CHECK_THROWS_AS(make_random_mask(16, 16, 1.0, 17, 0), ConfigError);
}

TEST_CASE("equispaced mask with a forced zero offset")
{
  const auto m = make_equispaced_mask(16, 16, 4.0, 0, 0, 0);
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < 16; ++c)
    if (m.selected(c))
      cols.push_back(c);
  CHECK(cols == std::vector<std::size_t>{0, 4, 8, 12});
}

TEST_CASE("brain-style equispaced mask has ACS and stride structure")
{
  const auto m = make_equispaced_mask(320, 320, 4.0, 24, 5);
  CHECK(acs_full(m));
  std::size_t offset = 0;
  while (!m.selected(offset))
    ++offset;
  CHECK(offset < 4);
  for (std::size_t c = offset; c < 320; c += 4)
    CHECK(m.selected(c));
  for (std::size_t c = 0; c < 320; ++c) {
    const bool in_acs = c >= m.acs_begin() && c < m.acs_begin() + 24;
    if (!in_acs)
      CHECK(m.selected(c) == ((c - offset) % 4 == 0 && c >= offset));
  }
  CHECK(m.selected_count() >= 80);
}

// When R does not divide the width the stride can land floor(width / R)
// lines; ceil and floor coincide for divisible widths.
TEST_CASE("equispaced budget and ratio bounds")
{
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t r = 2 + rng() % 7;
    const std::size_t w = 16 + rng() % 385;
    const std::size_t acs = r + rng() % 25;
    if (acs > w)
      continue;
    const auto m = make_equispaced_mask(4, w, static_cast<double>(r), acs, trial);
    const std::size_t n = m.selected_count();
    CAPTURE(w);
    CAPTURE(r);
    CAPTURE(acs);
    CHECK(acs_full(m));
    CHECK(n >= acs);
    CHECK(n >= w / r);
    CHECK(std::abs(static_cast<double>(n) / w - 1.0 / r) <= static_cast<double>(acs) / w);
  }
  const auto exact = make_equispaced_mask(4, 320, 4.0, 0, 9);
  CHECK(exact.selected_count() == 80);
}

TEST_CASE("apply_mask is the 0/1 diagonal projection")
{
  const auto k = oracle::random_grid<KSpaceGrid>(12, 20, 4);
  const auto m = make_random_mask(12, 20, 3.0, 4, 8);
  const auto u = apply_mask(k, m);
  const auto grid = m.to_grid();
  for (std::size_t r = 0; r < 12; ++r)
    for (std::size_t c = 0; c < 20; ++c) {
      CHECK(grid(r, c) == (m.selected(c) ? 1.0 : 0.0));
      if (m.selected(c))
        CHECK(u(r, c) == k(r, c));
      else
        CHECK(u(r, c) == cplx(0.0, 0.0));
    }

  CHECK(apply_mask(u, m) == u);

  const auto b = oracle::random_grid<KSpaceGrid>(12, 20, 5);
  const cplx lhs = inner_product(apply_mask(k, m), b), rhs = inner_product(k, apply_mask(b, m));
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));

  const auto full = make_random_mask(12, 20, 1.0, 0, 0);
  CHECK(apply_mask(k, full) == k);
  CHECK_THROWS_AS(apply_mask(oracle::random_grid<KSpaceGrid>(12, 21, 1), m), ShapeError);
}

TEST_CASE("organ presets")
{
  const auto brain = protocol_preset("brain");
  CHECK(brain.kind == MaskKind::equispaced);
  CHECK(brain.acceleration == 4.0);
  const auto knee = protocol_preset("knee");
  CHECK(knee.kind == MaskKind::random);
  CHECK(knee.acceleration == 6.0);
  const auto cardiac = protocol_preset("cardiac");
  CHECK(cardiac.kind == MaskKind::random);
  CHECK(cardiac.acceleration == 8.0);
  for (const auto &name : protocol_names())
    CHECK(protocol_preset(name).acs_width == 24);
  CHECK_THROWS_AS(protocol_preset("lung"), ConfigError);

  const auto m = make_mask(knee, 320, 320, 11);
  CHECK(m.selected_count() == 53);
  CHECK(acs_full(m));
  CHECK(make_mask(knee, 320, 320, 11).line_selected == m.line_selected);
}
