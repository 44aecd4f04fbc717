#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles/random.hpp"
#include "pcsmri/config.hpp"
#include "pcsmri/io.hpp"
#include "pcsmri/phantom.hpp"

using namespace pcsmri;
namespace fs = std::filesystem;

namespace {

struct TempDir
{
  fs::path path;
  explicit TempDir(const std::string &name) : path(fs::temp_directory_path() / name)
  {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("complex128 containers round-trip bit-exactly")
{
  TempDir dir("pcsmri-test-io-1");
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t h = 3 + trial, w = 17 - trial;
    const auto img = oracle::random_grid(h, w, trial);
    io::write_image(dir.path / "img", img, io::Dtype::complex128);
    CHECK(io::read_image(dir.path / "img") == img);

    const auto y = oracle::random_kspace(1 + trial % 3, h, w, trial);
    io::write_kspace(dir.path / "ksp", y, io::Dtype::complex128);
    const auto back = io::read_kspace(dir.path / "ksp");
    REQUIRE(back.coils() == y.coils());
    for (std::size_t l = 0; l < y.coils(); ++l)
      CHECK(back[l] == y[l]);
  }
}

TEST_CASE("complex64 containers round-trip at single precision")
{
  TempDir dir("pcsmri-test-io-2");
  const auto img = oracle::random_grid(9, 11, 2);
  io::write_image(dir.path / "img", img);
  const auto back = io::read_image(dir.path / "img");
  for (std::size_t i = 0; i < img.size(); ++i) {
    CHECK(back[i].real() == static_cast<double>(static_cast<float>(img[i].real())));
    CHECK(back[i].imag() == static_cast<double>(static_cast<float>(img[i].imag())));
  }
  const auto h = io::read_header(dir.path / "img");
  CHECK(h.kind == "image");
  CHECK(h.height == 9);
  CHECK(h.width == 11);
  CHECK(fs::file_size(io::data_path(dir.path / "img")) == 9 * 11 * 8);
}

TEST_CASE("sensitivity maps survive a complex64 round trip")
{
  TempDir dir("pcsmri-test-io-3");
  const auto s = SensitivitySet::normalize(make_coil_profiles(24, 24, 3, 1));
  io::write_sens(dir.path / "sens", s);
  const auto back = io::read_sens(dir.path / "sens");
  CHECK(back.support() == s.support());
  for (std::size_t l = 0; l < 3; ++l)
    CHECK(oracle::rel_diff(back[l], s[l]) <= 1e-6);
  CHECK(io::read_header(dir.path / "sens").kind == "sens");
}

TEST_CASE("masks round-trip with their metadata")
{
  TempDir dir("pcsmri-test-io-4");
  const auto m = make_equispaced_mask(40, 64, 4.0, 8, 17);
  io::write_mask(dir.path / "mask", m);
  CHECK(fs::file_size(io::data_path(dir.path / "mask")) == 64);
  const auto back = io::read_mask(dir.path / "mask");
  CHECK(back.line_selected == m.line_selected);
  CHECK(back.height == 40);
  CHECK(back.width == 64);
  CHECK(back.acs_width == 8);
  CHECK(back.acceleration == 4.0);
  CHECK(back.kind == MaskKind::equispaced);
  CHECK(back.seed == 17);
}

TEST_CASE("malformed containers are I/O errors")
{
  TempDir dir("pcsmri-test-io-5");
  CHECK_THROWS_AS(io::read_image(dir.path / "missing"), IoError);

  io::write_image(dir.path / "img", oracle::random_grid(4, 4, 1));
  fs::resize_file(io::data_path(dir.path / "img"), 17);
  CHECK_THROWS_AS(io::read_image(dir.path / "img"), IoError);

  io::write_text(io::header_path(dir.path / "bad"), "kind = image\ncoils = 1\nheight = 4\n");
  std::ofstream(io::data_path(dir.path / "bad")) << "x";
  CHECK_THROWS_AS(io::read_image(dir.path / "bad"), IoError);

  io::write_kspace(dir.path / "two", oracle::random_kspace(2, 4, 4, 1));
  CHECK_THROWS_AS(io::read_image(dir.path / "two"), IoError);
}

TEST_CASE("key-value parsing")
{
  const auto kv = io::parse_key_values("# comment\nalpha = 0.5\n\n  prior=tv  \n", "t");
  CHECK(kv.at("alpha") == "0.5");
  CHECK(kv.at("prior") == "tv");
  CHECK_THROWS_AS(io::parse_key_values("a = 1\na = 2\n", "t"), ConfigError);
  CHECK_THROWS_AS(io::parse_key_values("no equals sign\n", "t"), ConfigError);
}

TEST_CASE("solver configuration files")
{
  const auto cfg = solver_config_from(io::parse_key_values(
      "alpha = 0.5\nbeta = 2\nlambda = 0.01\niterations = 3\nprior = total_variation\n"
      "tv_iterations = 80\nlambda_schedule = 0.1, 0.05, 0.01\nv = 0.9\nrecord_history = true\n",
      "t"));
  CHECK(cfg.alpha == 0.5);
  CHECK(cfg.beta == 2.0);
  CHECK(cfg.iterations == 3);
  CHECK(cfg.prior.kind == PriorKind::total_variation);
  CHECK(cfg.prior.tv.max_iterations == 80);
  CHECK(cfg.lambda_schedule == std::vector<double>{0.1, 0.05, 0.01});
  CHECK(cfg.v.scalar() == 0.9);
  CHECK(cfg.record_history);

  const auto again = solver_config_from(io::parse_key_values(to_text(cfg), "t"));
  CHECK(to_text(again) == to_text(cfg));

  auto bad = [](const std::string &text) { return solver_config_from(io::parse_key_values(text, "t")); };
  CHECK_THROWS_AS(bad("alpah = 1\n"), ConfigError);
  CHECK_THROWS_AS(bad("alpha = -1\n"), ConfigError);
  CHECK_THROWS_AS(bad("alpha = abc\n"), ConfigError);
  CHECK_THROWS_AS(bad("iterations = 2.5\n"), ConfigError);
  CHECK_THROWS_AS(bad("v = 2\n"), ConfigError);
  CHECK_THROWS_AS(bad("iterations = 2\nalpha_schedule = 1,2,3\n"), ConfigError);
  CHECK_THROWS_AS(bad("prior = external\n"), ConfigError);
  CHECK_THROWS_AS(bad("record_history = maybe\n"), ConfigError);
}
