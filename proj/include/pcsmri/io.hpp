#pragma once

// On-disk container shared by images, k-space and sensitivity maps:
//   <base>.bin  little-endian interleaved (re, im), coil-major, row-major
//   <base>.hdr  text sidecar, one "key = value" per line in fixed order:
//               kind, coils, height, width, dtype, layout
// dtype is complex64 (default) or complex128. Masks use their own pair:
//   <base>.bin  `width` bytes of 0/1 line flags
//   <base>.hdr  kind = mask, height, width, acceleration, acs_width, pattern, seed

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pcsmri/acquisition.hpp"
#include "pcsmri/sampling.hpp"
#include "pcsmri/tensor.hpp"

namespace pcsmri::io {

enum class Dtype
{
  complex64,
  complex128
};

struct ContainerHeader
{
  std::string kind = "image"; // image | kspace | sens
  std::size_t coils = 1;
  std::size_t height = 0;
  std::size_t width = 0;
  Dtype dtype = Dtype::complex64;
};

std::filesystem::path data_path(const std::filesystem::path &base);
std::filesystem::path header_path(const std::filesystem::path &base);

void write_container(const std::filesystem::path &base, const std::string &kind,
                     const std::vector<std::span<const cplx>> &planes, Shape shape,
                     Dtype dtype = Dtype::complex64);
ContainerHeader read_header(const std::filesystem::path &base);
/// Returns one plane per coil.
std::vector<std::vector<cplx>> read_planes(const std::filesystem::path &base, ContainerHeader *header = nullptr);

void write_image(const std::filesystem::path &base, const ComplexImage &img, Dtype dtype = Dtype::complex64);
ComplexImage read_image(const std::filesystem::path &base);

void write_kspace(const std::filesystem::path &base, const MultiCoilKSpace &y, Dtype dtype = Dtype::complex64);
MultiCoilKSpace read_kspace(const std::filesystem::path &base);

void write_sens(const std::filesystem::path &base, const SensitivitySet &sens, Dtype dtype = Dtype::complex64);
SensitivitySet read_sens(const std::filesystem::path &base);

void write_mask(const std::filesystem::path &base, const SamplingMask &mask);
SamplingMask read_mask(const std::filesystem::path &base);

/// Real image stored as a complex image with zero imaginary part.
void write_real(const std::filesystem::path &base, const RealImage &img);
RealImage read_real(const std::filesystem::path &base);

// ---- plain "key = value" text files ----------------------------------------
// Blank lines and lines starting with '#' are ignored; keys are unique.

using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(const std::string &text, const std::string &origin);
KeyValues read_key_values(const std::filesystem::path &path);
std::string read_text(const std::filesystem::path &path);
void write_text(const std::filesystem::path &path, const std::string &text);

} // namespace pcsmri::io
