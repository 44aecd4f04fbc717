#include "pcsmri/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace pcsmri::io {

namespace fs = std::filesystem;

namespace {

static_assert(std::endian::native == std::endian::little, "container I/O assumes a little-endian host");

const char *dtype_name(Dtype d) { return d == Dtype::complex64 ? "complex64" : "complex128"; }

Dtype parse_dtype(const std::string &s, const fs::path &origin)
{
  if (s == "complex64")
    return Dtype::complex64;
  if (s == "complex128")
    return Dtype::complex128;
  throw IoError(origin.string() + ": unsupported dtype '" + s + "'");
}

constexpr const char *kLayout = "coil-major,row-major,interleaved-re-im";

std::string trim(const std::string &s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::string &require(const KeyValues &kv, const std::string &key, const fs::path &origin)
{
  auto it = kv.find(key);
  if (it == kv.end())
    throw IoError(origin.string() + ": missing key '" + key + "'");
  return it->second;
}

std::size_t to_size(const std::string &v, const std::string &key, const fs::path &origin)
{
  try {
    std::size_t pos = 0;
    const unsigned long long n = std::stoull(v, &pos);
    if (pos != v.size())
      throw std::invalid_argument(v);
    return static_cast<std::size_t>(n);
  } catch (const std::exception &) {
    throw IoError(origin.string() + ": key '" + key + "' is not an unsigned integer: '" + v + "'");
  }
}

std::vector<char> read_bytes(const fs::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open " + path.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return bytes;
}

void write_bytes(const fs::path &path, const char *data, std::size_t n)
{
  if (path.has_parent_path())
    fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot write " + path.string());
  out.write(data, static_cast<std::streamsize>(n));
  if (!out)
    throw IoError("short write to " + path.string());
}

std::string number(double v)
{
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

} // namespace

fs::path data_path(const fs::path &base)
{
  return fs::path(base.string() + ".bin");
}

fs::path header_path(const fs::path &base)
{
  return fs::path(base.string() + ".hdr");
}

std::string read_text(const fs::path &path)
{
  const auto bytes = read_bytes(path);
  return std::string(bytes.begin(), bytes.end());
}

void write_text(const fs::path &path, const std::string &text)
{
  write_bytes(path, text.data(), text.size());
}

KeyValues parse_key_values(const std::string &text, const std::string &origin)
{
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#')
      continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, value).second)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return kv;
}

KeyValues read_key_values(const fs::path &path)
{
  return parse_key_values(read_text(path), path.string());
}

// ---- complex container -------------------------------------------------------

void write_container(const fs::path &base, const std::string &kind, const std::vector<std::span<const cplx>> &planes,
                     Shape shape, Dtype dtype)
{
  if (planes.empty())
    throw ShapeError("write_container: nothing to write");
  const std::size_t n = shape.size();
  std::vector<char> bytes;
  if (dtype == Dtype::complex64) {
    std::vector<float> buf;
    buf.reserve(2 * n * planes.size());
    for (const auto &p : planes) {
      if (p.size() != n)
        throw ShapeError("write_container: plane size mismatch");
      for (const auto &v : p) {
        buf.push_back(static_cast<float>(v.real()));
        buf.push_back(static_cast<float>(v.imag()));
      }
    }
    bytes.resize(buf.size() * sizeof(float));
    std::memcpy(bytes.data(), buf.data(), bytes.size());
  } else {
    bytes.resize(2 * n * planes.size() * sizeof(double));
    char *dst = bytes.data();
    for (const auto &p : planes) {
      if (p.size() != n)
        throw ShapeError("write_container: plane size mismatch");
      std::memcpy(dst, p.data(), n * sizeof(cplx));
      dst += n * sizeof(cplx);
    }
  }
  write_bytes(data_path(base), bytes.data(), bytes.size());

  std::ostringstream hdr;
  hdr << "kind = " << kind << '\n'
      << "coils = " << planes.size() << '\n'
      << "height = " << shape.height << '\n'
      << "width = " << shape.width << '\n'
      << "dtype = " << dtype_name(dtype) << '\n'
      << "layout = " << kLayout << '\n';
  write_text(header_path(base), hdr.str());
}

ContainerHeader read_header(const fs::path &base)
{
  const fs::path hp = header_path(base);
  KeyValues kv;
  try {
    kv = read_key_values(hp);
  } catch (const ConfigError &e) {
    throw IoError(e.what());
  }
  ContainerHeader h;
  h.kind = require(kv, "kind", hp);
  h.coils = to_size(require(kv, "coils", hp), "coils", hp);
  h.height = to_size(require(kv, "height", hp), "height", hp);
  h.width = to_size(require(kv, "width", hp), "width", hp);
  h.dtype = parse_dtype(require(kv, "dtype", hp), hp);
  if (auto it = kv.find("layout"); it != kv.end() && it->second != kLayout)
    throw IoError(hp.string() + ": unsupported layout '" + it->second + "'");
  if (h.coils == 0 || h.height == 0 || h.width == 0)
    throw IoError(hp.string() + ": zero extent");
  return h;
}

std::vector<std::vector<cplx>> read_planes(const fs::path &base, ContainerHeader *header)
{
  const ContainerHeader h = read_header(base);
  const std::size_t n = h.height * h.width;
  const std::size_t scalar = h.dtype == Dtype::complex64 ? sizeof(float) : sizeof(double);
  const auto bytes = read_bytes(data_path(base));
  if (bytes.size() != 2 * n * h.coils * scalar)
    throw IoError(data_path(base).string() + ": expected " + std::to_string(2 * n * h.coils * scalar) +
                  " bytes, found " + std::to_string(bytes.size()));

  std::vector<std::vector<cplx>> planes(h.coils, std::vector<cplx>(n));
  for (std::size_t l = 0; l < h.coils; ++l) {
    if (h.dtype == Dtype::complex64) {
      std::vector<float> buf(2 * n);
      std::memcpy(buf.data(), bytes.data() + l * 2 * n * sizeof(float), buf.size() * sizeof(float));
      for (std::size_t i = 0; i < n; ++i)
        planes[l][i] = cplx(buf[2 * i], buf[2 * i + 1]);
    } else {
      std::memcpy(planes[l].data(), bytes.data() + l * n * sizeof(cplx), n * sizeof(cplx));
    }
  }
  if (header)
    *header = h;
  return planes;
}

void write_image(const fs::path &base, const ComplexImage &img, Dtype dtype)
{
  write_container(base, "image", {img.data()}, img.shape(), dtype);
}

ComplexImage read_image(const fs::path &base)
{
  ContainerHeader h;
  auto planes = read_planes(base, &h);
  if (h.coils != 1)
    throw IoError(base.string() + ": expected a single image, found " + std::to_string(h.coils) + " planes");
  return ComplexImage(h.height, h.width, std::move(planes.front()));
}

void write_kspace(const fs::path &base, const MultiCoilKSpace &y, Dtype dtype)
{
  std::vector<std::span<const cplx>> planes;
  for (const auto &k : y)
    planes.push_back(k.data());
  write_container(base, "kspace", planes, y.shape(), dtype);
}

MultiCoilKSpace read_kspace(const fs::path &base)
{
  ContainerHeader h;
  auto planes = read_planes(base, &h);
  std::vector<KSpaceGrid> grids;
  for (auto &p : planes)
    grids.emplace_back(h.height, h.width, std::move(p));
  return MultiCoilKSpace(std::move(grids));
}

void write_sens(const fs::path &base, const SensitivitySet &sens, Dtype dtype)
{
  std::vector<std::span<const cplx>> planes;
  for (const auto &s : sens.maps())
    planes.push_back(s.data());
  write_container(base, "sens", planes, sens.shape(), dtype);
}

SensitivitySet read_sens(const fs::path &base)
{
  ContainerHeader h;
  auto planes = read_planes(base, &h);
  std::vector<ComplexImage> maps;
  for (auto &p : planes)
    maps.emplace_back(h.height, h.width, std::move(p));
  // complex64 storage perturbs sum |S|^2 by a few ulps of float
  const double tol = h.dtype == Dtype::complex64 ? 1e-5 : 1e-9;
  try {
    return SensitivitySet::from_maps(std::move(maps), tol);
  } catch (const EstimationError &e) {
    throw IoError(base.string() + ": " + e.what());
  }
}

void write_real(const fs::path &base, const RealImage &img)
{
  write_image(base, to_complex(img));
}

RealImage read_real(const fs::path &base)
{
  const ComplexImage c = read_image(base);
  RealImage out(c.shape());
  for (std::size_t i = 0; i < c.size(); ++i)
    out[i] = c[i].real();
  return out;
}

// ---- mask ------------------------------------------------------------------

void write_mask(const fs::path &base, const SamplingMask &mask)
{
  std::vector<char> bytes(mask.line_selected.begin(), mask.line_selected.end());
  write_bytes(data_path(base), bytes.data(), bytes.size());
  std::ostringstream hdr;
  hdr << "kind = mask\n"
      << "height = " << mask.height << '\n'
      << "width = " << mask.width << '\n'
      << "acceleration = " << number(mask.acceleration) << '\n'
      << "acs_width = " << mask.acs_width << '\n'
      << "pattern = " << to_string(mask.kind) << '\n'
      << "seed = " << mask.seed << '\n';
  write_text(header_path(base), hdr.str());
}

SamplingMask read_mask(const fs::path &base)
{
  const fs::path hp = header_path(base);
  KeyValues kv;
  try {
    kv = read_key_values(hp);
  } catch (const ConfigError &e) {
    throw IoError(e.what());
  }
  if (require(kv, "kind", hp) != "mask")
    throw IoError(hp.string() + ": not a mask header");
  SamplingMask m;
  m.height = to_size(require(kv, "height", hp), "height", hp);
  m.width = to_size(require(kv, "width", hp), "width", hp);
  m.acs_width = to_size(require(kv, "acs_width", hp), "acs_width", hp);
  m.seed = to_size(require(kv, "seed", hp), "seed", hp);
  try {
    m.acceleration = std::stod(require(kv, "acceleration", hp));
    m.kind = parse_mask_kind(require(kv, "pattern", hp));
  } catch (const std::exception &e) {
    throw IoError(hp.string() + ": " + e.what());
  }
  const auto bytes = read_bytes(data_path(base));
  if (bytes.size() != m.width)
    throw IoError(data_path(base).string() + ": expected " + std::to_string(m.width) + " line flags");
  m.line_selected.resize(m.width);
  for (std::size_t c = 0; c < m.width; ++c) {
    if (bytes[c] != 0 && bytes[c] != 1)
      throw IoError(data_path(base).string() + ": line flags must be 0 or 1");
    m.line_selected[c] = static_cast<std::uint8_t>(bytes[c]);
  }
  return m;
}

} // namespace pcsmri::io
