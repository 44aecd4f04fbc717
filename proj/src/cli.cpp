#include "pcsmri/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "pcsmri/config.hpp"
#include "pcsmri/hqs.hpp"
#include "pcsmri/io.hpp"
#include "pcsmri/metrics.hpp"
#include "pcsmri/phantom.hpp"
#include "pcsmri/sensitivity.hpp"

namespace pcsmri::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char *kToolVersion = "pcsmri 0.1.0";

// Case directory layout.
constexpr const char *kGt = "gt";
constexpr const char *kSens = "sens";
constexpr const char *kMask = "mask";
constexpr const char *kKspace = "kspace";
constexpr const char *kRecon = "recon";

std::string num(double v)
{
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

class Manifest
{
public:
  explicit Manifest(const std::string &command)
  {
    add("tool", kToolVersion);
    add("command", command);
  }
  void add(const std::string &key, const std::string &value) { os_ << key << " = " << value << '\n'; }
  void add(const std::string &key, double value) { add(key, num(value)); }
  void add(const std::string &key, std::uint64_t value) { add(key, std::to_string(value)); }
  void write(const fs::path &path) const { io::write_text(path, os_.str()); }
  std::string text() const { return os_.str(); }

private:
  std::ostringstream os_;
};

bool container_exists(const fs::path &base)
{
  return fs::exists(io::header_path(base)) && fs::exists(io::data_path(base));
}

struct LoadedCase
{
  std::string name;
  MultiCoilKSpace y;
  SensitivitySet sens;
  SamplingMask mask;
  std::optional<ComplexImage> gt;
};

LoadedCase load_case(const fs::path &dir, bool estimate_sens, std::size_t acs)
{
  if (!fs::is_directory(dir))
    throw IoError("case directory " + dir.string() + " does not exist");
  LoadedCase c;
  c.name = fs::absolute(dir).lexically_normal().filename().string();
  if (c.name.empty())
    c.name = fs::absolute(dir).lexically_normal().parent_path().filename().string();
  c.y = io::read_kspace(dir / kKspace);
  c.mask = io::read_mask(dir / kMask);
  if (estimate_sens || !container_exists(dir / kSens))
    c.sens = estimate_maps(c.y, c.mask, acs);
  else
    c.sens = io::read_sens(dir / kSens);
  if (container_exists(dir / kGt))
    c.gt = io::read_image(dir / kGt);
  return c;
}

std::string describe(const SolverConfig &cfg)
{
  std::ostringstream os;
  os << "hqs-" << to_string(cfg.prior.kind) << " alpha=" << cfg.alpha << " beta=" << cfg.beta
     << " lambda=" << cfg.lambda << " T=" << cfg.iterations;
  if (cfg.prior.kind == PriorKind::total_variation)
    os << " tv_iterations=" << cfg.prior.tv.max_iterations;
  if (!cfg.alpha_schedule.empty() || !cfg.beta_schedule.empty() || !cfg.lambda_schedule.empty())
    os << " scheduled";
  return os.str();
}

// "key=value" overrides on top of a config file.
io::KeyValues merge_overrides(io::KeyValues kv, const std::vector<std::string> &sets)
{
  for (const auto &s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("--set expects key=value, got '" + s + "'");
    kv[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return kv;
}

// ---- phantom -----------------------------------------------------------------

struct PhantomArgs
{
  std::string kind = "shepp_logan";
  std::size_t size = 128, height = 0, width = 0;
  std::uint64_t seed = 0;
  bool phase_ramp = false;
  std::string out;
};

int cmd_phantom(const PhantomArgs &a)
{
  const std::size_t h = a.height ? a.height : a.size, w = a.width ? a.width : a.size;
  const PhantomKind kind = parse_phantom_kind(a.kind);
  const ComplexImage img = make_phantom(h, w, kind, a.seed, a.phase_ramp);
  io::write_image(a.out, img);
  Manifest m("phantom");
  m.add("kind", to_string(kind));
  m.add("height", std::uint64_t{h});
  m.add("width", std::uint64_t{w});
  m.add("seed", a.seed);
  m.add("phase_ramp", a.phase_ramp ? "true" : "false");
  m.write(a.out + ".manifest");
  std::cout << "wrote " << to_string(kind) << " phantom " << h << "x" << w << " to " << a.out << '\n';
  return kOk;
}

// ---- mask ----------------------------------------------------------------------

struct MaskArgs
{
  std::string preset;
  std::string kind = "random";
  std::size_t height = 0, width = 320, acs = 24;
  double r = 4.0;
  std::uint64_t seed = 0;
  long offset = -1;
  std::string out;
};

int cmd_mask(const MaskArgs &a)
{
  const std::size_t h = a.height ? a.height : a.width;
  Protocol p{"custom", parse_mask_kind(a.kind), a.r, a.acs};
  if (!a.preset.empty())
    p = protocol_preset(a.preset);
  SamplingMask mask;
  if (a.offset >= 0) {
    if (p.kind != MaskKind::equispaced)
      throw ConfigError("--offset only applies to equispaced masks");
    mask = make_equispaced_mask(h, a.width, p.acceleration, p.acs_width, a.seed, static_cast<std::size_t>(a.offset));
  } else {
    mask = make_mask(p, h, a.width, a.seed);
  }
  io::write_mask(a.out, mask);
  Manifest m("mask");
  m.add("protocol", p.organ);
  m.add("pattern", to_string(mask.kind));
  m.add("acceleration", mask.acceleration);
  m.add("acs_width", std::uint64_t{mask.acs_width});
  m.add("seed", a.seed);
  m.add("selected_lines", std::uint64_t{mask.selected_count()});
  m.write(a.out + ".manifest");
  std::cout << "mask: " << mask.selected_count() << " of " << mask.width << " lines selected ("
            << to_string(mask.kind) << ", R=" << mask.acceleration << ", acs=" << mask.acs_width << ")\n";
  return kOk;
}

// ---- sense -----------------------------------------------------------------------

struct SenseArgs
{
  std::string case_dir, kspace, mask, out;
  std::size_t acs = 24;
  bool no_apodize = false;
};

int cmd_sense(const SenseArgs &a)
{
  fs::path kpath = a.kspace, mpath = a.mask, out = a.out;
  if (!a.case_dir.empty()) {
    if (kpath.empty())
      kpath = fs::path(a.case_dir) / kKspace;
    if (mpath.empty())
      mpath = fs::path(a.case_dir) / kMask;
    if (out.empty())
      out = fs::path(a.case_dir) / "sens_est";
  }
  if (kpath.empty() || mpath.empty() || out.empty())
    throw ConfigError("sense needs --case or all of --kspace, --mask and --out");
  const SensitivitySet sens = estimate_maps(io::read_kspace(kpath), io::read_mask(mpath), a.acs, !a.no_apodize);
  io::write_sens(out, sens);
  Manifest m("sense");
  m.add("kspace", kpath.string());
  m.add("mask", mpath.string());
  m.add("acs", std::uint64_t{a.acs});
  m.add("apodize", a.no_apodize ? "false" : "true");
  m.write(out.string() + ".manifest");
  std::cout << "estimated " << sens.coils() << " sensitivity maps -> " << out.string() << '\n';
  return kOk;
}

// ---- simulate ----------------------------------------------------------------------

struct SimulateArgs
{
  std::string preset, phantom = "shepp_logan", kind = "random", out;
  std::size_t size = 128, coils = 4, acs = 24;
  double r = 4.0, sigma = 0.01;
  std::uint64_t seed = 0;
  bool phase_ramp = false;
  bool sigma_set = false;
};

int cmd_simulate(const SimulateArgs &a)
{
  CaseSpec spec;
  if (!a.preset.empty()) {
    spec = case_preset(a.preset, a.size, a.seed);
    spec.coils = a.coils;
    if (a.sigma_set)
      spec.noise_sigma = a.sigma;
  } else {
    spec.name = "custom";
    spec.height = spec.width = a.size;
    spec.phantom = parse_phantom_kind(a.phantom);
    spec.coils = a.coils;
    spec.protocol = {"custom", parse_mask_kind(a.kind), a.r, a.acs};
    spec.noise_sigma = a.sigma;
    spec.seed = a.seed;
  }
  spec.phase_ramp = spec.phase_ramp || a.phase_ramp;

  const SimulatedCase sim = simulate_case(spec);
  const fs::path dir = a.out;
  fs::create_directories(dir);
  io::write_image(dir / kGt, sim.x_gt);
  io::write_sens(dir / kSens, sim.sens);
  io::write_mask(dir / kMask, sim.mask);
  io::write_kspace(dir / kKspace, sim.y);

  Manifest m("simulate");
  m.add("preset", a.preset.empty() ? "none" : a.preset);
  m.add("phantom", to_string(spec.phantom));
  m.add("phase_ramp", spec.phase_ramp ? "true" : "false");
  m.add("height", std::uint64_t{spec.height});
  m.add("width", std::uint64_t{spec.width});
  m.add("coils", std::uint64_t{spec.coils});
  m.add("pattern", to_string(spec.protocol.kind));
  m.add("acceleration", spec.protocol.acceleration);
  m.add("acs_width", std::uint64_t{spec.protocol.acs_width});
  m.add("noise_sigma", spec.noise_sigma);
  m.add("seed", spec.seed);
  m.add("mask_seed", sim.mask.seed);
  m.add("selected_lines", std::uint64_t{sim.mask.selected_count()});
  m.write(dir / "manifest.txt");
  std::cout << "simulated case in " << dir.string() << ": " << spec.coils << " coils, "
            << sim.mask.selected_count() << "/" << spec.width << " lines (" << to_string(spec.protocol.kind)
            << ", R=" << spec.protocol.acceleration << ")\n";
  return kOk;
}

// ---- recon -----------------------------------------------------------------------------

struct ReconArgs
{
  std::string case_dir, config, out, prior, cmd, dtype = "complex64";
  std::vector<std::string> sets;
  bool estimate_sens = false;
  std::size_t acs = 24;
};

SolverConfig build_config(const std::string &config_path, const std::vector<std::string> &sets,
                          const std::string &prior, const std::string &cmd)
{
  io::KeyValues kv;
  fs::path base;
  if (!config_path.empty()) {
    kv = io::read_key_values(config_path);
    base = fs::path(config_path).parent_path();
  }
  std::vector<std::string> all = sets;
  if (!prior.empty())
    all.push_back("prior=" + prior);
  if (!cmd.empty())
    all.push_back("external_command=" + cmd);
  return solver_config_from(merge_overrides(std::move(kv), all), base);
}

int cmd_recon(const ReconArgs &a)
{
  SolverConfig cfg = build_config(a.config, a.sets, a.prior, a.cmd);
  const LoadedCase c = load_case(a.case_dir, a.estimate_sens, a.acs);
  const fs::path out = a.out.empty() ? fs::path(a.case_dir) / kRecon : fs::path(a.out);
  if (cfg.prior.kind == PriorKind::external && cfg.prior.external.exchange_dir.empty())
    cfg.prior.external.exchange_dir = out.string() + "_exchange";

  if (a.dtype != "complex64" && a.dtype != "complex128")
    throw ConfigError("--dtype must be complex64 or complex128");
  const io::Dtype dtype = a.dtype == "complex64" ? io::Dtype::complex64 : io::Dtype::complex128;

  const SolveResult res = solve(c.y, c.sens, c.mask, cfg);
  io::write_image(out, res.x, dtype);

  std::ostringstream log;
  log.precision(17);
  log << "# iteration objective filter_suboptimality\n";
  for (std::size_t t = 0; t < res.state.objective.size(); ++t) {
    log << t << ' ' << res.state.objective[t];
    if (t > 0)
      log << ' ' << res.state.suboptimality[t - 1];
    log << '\n';
  }
  if (res.state.objective_without_prior)
    log << "# objective excludes the lambda R(z) term (external prior)\n";
  if (res.state.prior_not_converged)
    log << "# warning: TV inner solver reached its iteration budget\n";

  Manifest m("recon");
  m.add("case", c.name);
  m.add("sensitivities", a.estimate_sens ? "estimated" : "loaded");
  std::istringstream cfg_lines(to_text(cfg));
  for (std::string line; std::getline(cfg_lines, line);)
    m.add("config." + line.substr(0, line.find(" =")), line.substr(line.find("= ") + 2));

  if (c.gt) {
    const ComplexImage x0 = zero_filled(c.y, c.sens);
    const MetricRow zf = evaluate(c.name, "zero_filled", x0, *c.gt, &c.sens.support());
    const MetricRow rc = evaluate(c.name, describe(cfg), res.x, *c.gt, &c.sens.support());
    log << "# psnr_zero_filled = " << format_psnr(zf.psnr) << '\n'
        << "# psnr_recon = " << format_psnr(rc.psnr) << '\n'
        << "# psnr_gain = " << (rc.psnr - zf.psnr) << '\n'
        << "# ssim_zero_filled = " << zf.ssim << '\n'
        << "# ssim_recon = " << rc.ssim << '\n';
    std::cout << "zero-filled PSNR " << format_psnr(zf.psnr) << " dB, recon PSNR " << format_psnr(rc.psnr)
              << " dB\n";
  }
  io::write_text(out.string() + ".objective.log", log.str());
  m.write(out.string() + ".manifest");

  if (cfg.record_history) {
    const fs::path snap_dir = out.string() + "_snapshots";
    for (std::size_t t = 0; t < res.state.snapshots.size(); ++t) {
      char name[32];
      std::snprintf(name, sizeof name, "x_%03zu", t + 1);
      io::write_image(snap_dir / name, res.state.snapshots[t], dtype);
    }
  }
  std::cout << "reconstructed " << c.name << " with " << describe(cfg) << " -> " << out.string() << '\n';
  return kOk;
}

// ---- eval ----------------------------------------------------------------------------------

struct EvalArgs
{
  std::string recon, gt, support, case_name = "case", method = "recon", csv;
  bool no_support = false;
  std::vector<std::string> batch;
};

std::optional<Support> support_from(const fs::path &sens_base)
{
  if (!container_exists(sens_base))
    return std::nullopt;
  return io::read_sens(sens_base).support();
}

int cmd_eval(const EvalArgs &a)
{
  std::vector<MetricRow> rows;
  if (!a.batch.empty()) {
    for (const auto &d : a.batch) {
      const fs::path dir = d;
      const std::string name = fs::absolute(dir).lexically_normal().filename().string();
      const ComplexImage rec = io::read_image(dir / kRecon);
      const ComplexImage gt = io::read_image(dir / kGt);
      const auto sup = a.no_support ? std::nullopt : support_from(dir / kSens);
      rows.push_back(evaluate(name, a.method, rec, gt, sup ? &*sup : nullptr));
    }
    std::sort(rows.begin(), rows.end(), [](const MetricRow &x, const MetricRow &y) { return x.case_name < y.case_name; });
  } else {
    if (a.recon.empty() || a.gt.empty())
      throw ConfigError("eval needs --recon and --gt, or --batch");
    const ComplexImage rec = io::read_image(a.recon);
    const ComplexImage gt = io::read_image(a.gt);
    std::optional<Support> sup;
    if (!a.no_support)
      sup = a.support.empty() ? support_from(fs::path(a.gt).parent_path() / kSens) : support_from(a.support);
    if (!a.no_support && !a.support.empty() && !sup)
      throw IoError("support sensitivity file " + a.support + " not found");
    rows.push_back(evaluate(a.case_name, a.method, rec, gt, sup ? &*sup : nullptr));
  }
  write_report_table(std::cout, rows);
  if (!a.csv.empty()) {
    std::ostringstream os;
    write_report_csv(os, rows);
    io::write_text(a.csv, os.str());
  }
  return kOk;
}

// ---- sweep -------------------------------------------------------------------------------------

struct SweepArgs
{
  std::string case_dir, grid, out;
  std::size_t jobs = 1;
  bool estimate_sens = false;
  std::size_t acs = 24;
};

struct SweepPoint
{
  io::KeyValues kv;
  std::string label;
};

std::vector<SweepPoint> expand_grid(const io::KeyValues &grid)
{
  std::vector<SweepPoint> points{{}};
  for (const auto &[key, value] : grid) {
    std::vector<std::string> items;
    std::istringstream in(value);
    for (std::string item; std::getline(in, item, ',');) {
      const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
      if (b == std::string::npos)
        throw ConfigError("grid key '" + key + "' has an empty entry");
      items.push_back(item.substr(b, e - b + 1));
    }
    if (items.empty())
      throw ConfigError("grid key '" + key + "' has no values");
    // Schedules are lists themselves; keep them whole.
    if (key.ends_with("_schedule"))
      items = {value};
    std::vector<SweepPoint> next;
    for (const auto &p : points)
      for (const auto &item : items) {
        SweepPoint q = p;
        q.kv[key] = item;
        if (items.size() > 1)
          q.label += (q.label.empty() ? "" : " ") + key + "=" + item;
        next.push_back(std::move(q));
      }
    points = std::move(next);
  }
  return points;
}

int cmd_sweep(const SweepArgs &a)
{
  const io::KeyValues grid = io::read_key_values(a.grid);
  const auto points = expand_grid(grid);
  const LoadedCase c = load_case(a.case_dir, a.estimate_sens, a.acs);
  if (!c.gt)
    throw IoError("sweep needs a ground-truth image in " + a.case_dir);

  struct Result
  {
    MetricRow row;
    std::string status = "ok";
    bool ok = false;
  };
  std::vector<Result> results(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      Result &r = results[i];
      r.row.case_name = c.name;
      try {
        SolverConfig cfg = solver_config_from(points[i].kv, fs::path(a.grid).parent_path());
        if (cfg.prior.kind == PriorKind::external && cfg.prior.external.exchange_dir.empty())
          cfg.prior.external.exchange_dir = fs::path(a.out).parent_path() / ("sweep_exchange_" + std::to_string(i));
        r.row.method = describe(cfg);
        const SolveResult res = solve(c.y, c.sens, c.mask, cfg);
        r.row = evaluate(c.name, r.row.method, res.x, *c.gt, &c.sens.support());
        r.ok = true;
      } catch (const std::exception &e) {
        if (r.row.method.empty())
          r.row.method = points[i].label.empty() ? "point" + std::to_string(i) : points[i].label;
        r.status = e.what();
        std::replace(r.status.begin(), r.status.end(), ',', ';');
        std::replace(r.status.begin(), r.status.end(), '\n', ' ');
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(a.jobs, points.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j)
    pool.emplace_back(worker);
  worker();
  for (auto &t : pool)
    t.join();

  std::size_t best = results.size();
  for (std::size_t i = 0; i < results.size(); ++i)
    if (results[i].ok && (best == results.size() || results[i].row.psnr > results[best].row.psnr))
      best = i;

  std::ostringstream csv;
  csv << "case,method,PSNR,SSIM,RMSE,NMSE,best,status\n";
  std::vector<MetricRow> ok_rows;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const Result &r = results[i];
    if (r.ok) {
      std::ostringstream line;
      write_report_csv(line, {r.row});
      std::string body = line.str();
      body = body.substr(body.find('\n') + 1);
      body.pop_back();
      csv << body;
      ok_rows.push_back(r.row);
    } else {
      csv << r.row.case_name << ',' << r.row.method << ",,,,";
    }
    csv << ',' << (i == best ? 1 : 0) << ',' << r.status << '\n';
  }
  if (!a.out.empty())
    io::write_text(a.out, csv.str());
  write_report_table(std::cout, ok_rows);
  if (best < results.size())
    std::cout << "best: " << results[best].row.method << " (PSNR " << format_psnr(results[best].row.psnr) << " dB)\n";
  const auto failed = std::count_if(results.begin(), results.end(), [](const Result &r) { return !r.ok; });
  if (failed)
    std::cout << failed << " of " << results.size() << " grid points failed\n";
  return kOk;
}

int exit_code_for(const std::exception &e)
{
  if (dynamic_cast<const ExternalPriorError *>(&e))
    return kExternalPriorFailure;
  if (dynamic_cast<const DivergenceError *>(&e))
    return kDivergence;
  if (dynamic_cast<const IoError *>(&e) || dynamic_cast<const fs::filesystem_error *>(&e))
    return kIoError;
  return kConfigError;
}

} // namespace

int run(const std::vector<std::string> &args)
{
  CLI::App app{"Parallel compressed-sensing MRI reconstruction (HQS) toolkit", "pcsmri"};
  app.require_subcommand(1);

  PhantomArgs pa;
  auto *phantom = app.add_subcommand("phantom", "Write a numerical phantom image");
  phantom->add_option("--kind", pa.kind, "shepp_logan | resolution_bars | smooth_blobs");
  phantom->add_option("--size", pa.size, "Square size (overridden by --height/--width)");
  phantom->add_option("--height", pa.height);
  phantom->add_option("--width", pa.width);
  phantom->add_option("--seed", pa.seed);
  phantom->add_flag("--phase-ramp", pa.phase_ramp, "Add a smooth linear phase");
  phantom->add_option("--out", pa.out, "Output container base path")->required();

  MaskArgs ma;
  auto *mask = app.add_subcommand("mask", "Write a 1D Cartesian sampling mask");
  mask->add_option("--preset", ma.preset, "brain | knee | cardiac (overrides --kind/--r/--acs)");
  mask->add_option("--kind", ma.kind, "random | equispaced");
  mask->add_option("--height", ma.height, "Rows (default: width)");
  mask->add_option("--width", ma.width, "Phase-encode lines");
  mask->add_option("--r", ma.r, "Acceleration factor R");
  mask->add_option("--acs", ma.acs, "Central fully sampled lines");
  mask->add_option("--seed", ma.seed);
  mask->add_option("--offset", ma.offset, "Force the equispaced offset");
  mask->add_option("--out", ma.out)->required();

  SenseArgs sa;
  auto *sense = app.add_subcommand("sense", "Estimate sensitivity maps from the ACS block");
  sense->add_option("--case", sa.case_dir);
  sense->add_option("--kspace", sa.kspace);
  sense->add_option("--mask", sa.mask);
  sense->add_option("--acs", sa.acs);
  sense->add_flag("--no-apodize", sa.no_apodize);
  sense->add_option("--out", sa.out);

  SimulateArgs si;
  auto *simulate = app.add_subcommand("simulate", "Simulate a multi-coil acquisition into a case directory");
  simulate->add_option("--preset", si.preset, "brain | knee | cardiac");
  simulate->add_option("--phantom", si.phantom);
  simulate->add_option("--size", si.size);
  simulate->add_option("--coils", si.coils);
  simulate->add_option("--kind", si.kind, "random | equispaced");
  simulate->add_option("--r", si.r);
  simulate->add_option("--acs", si.acs);
  auto *sigma_opt = simulate->add_option("--sigma", si.sigma, "Noise std per real component");
  simulate->add_option("--seed", si.seed);
  simulate->add_flag("--phase-ramp", si.phase_ramp);
  simulate->add_option("--out", si.out, "Case directory")->required();

  ReconArgs ra;
  auto *recon = app.add_subcommand("recon", "Run the HQS reconstruction on a case directory");
  recon->add_option("--case", ra.case_dir)->required();
  recon->add_option("--config", ra.config, "Solver config file (key = value)");
  recon->add_option("--set", ra.sets, "Override a config key: key=value");
  recon->add_option("--prior", ra.prior);
  recon->add_option("--cmd", ra.cmd, "External denoiser command (implies nothing; use with --prior external)");
  recon->add_flag("--estimate-sens", ra.estimate_sens, "Estimate maps from the ACS block instead of loading sens");
  recon->add_option("--acs", ra.acs);
  recon->add_option("--out", ra.out, "Output base path (default <case>/recon)");
  recon->add_option("--dtype", ra.dtype, "complex64 | complex128 for the written image");

  EvalArgs ea;
  auto *eval = app.add_subcommand("eval", "Compute PSNR/SSIM/RMSE/NMSE");
  eval->add_option("--recon", ea.recon);
  eval->add_option("--gt", ea.gt);
  eval->add_option("--support", ea.support, "Sensitivity container whose support restricts the metrics");
  eval->add_flag("--no-support", ea.no_support);
  eval->add_option("--case-name", ea.case_name);
  eval->add_option("--method", ea.method);
  eval->add_option("--batch", ea.batch, "Case directories holding recon and gt");
  eval->add_option("--csv", ea.csv);

  SweepArgs wa;
  auto *sweep = app.add_subcommand("sweep", "Grid search over solver parameters");
  sweep->add_option("--case", wa.case_dir)->required();
  sweep->add_option("--grid", wa.grid)->required();
  sweep->add_option("--jobs", wa.jobs);
  sweep->add_option("--out", wa.out, "Aggregated CSV report");
  sweep->add_flag("--estimate-sens", wa.estimate_sens);
  sweep->add_option("--acs", wa.acs);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) {
      app.exit(e);
      return kOk;
    }
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (*phantom)
      return cmd_phantom(pa);
    if (*mask)
      return cmd_mask(ma);
    if (*sense)
      return cmd_sense(sa);
    if (*simulate) {
      si.sigma_set = sigma_opt->count() > 0;
      return cmd_simulate(si);
    }
    if (*recon)
      return cmd_recon(ra);
    if (*eval)
      return cmd_eval(ea);
    if (*sweep)
      return cmd_sweep(wa);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kConfigError;
}

} // namespace pcsmri::cli
