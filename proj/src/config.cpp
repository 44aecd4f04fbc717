#include "pcsmri/config.hpp"

#include <set>
#include <sstream>

namespace pcsmri {

namespace fs = std::filesystem;

double parse_real(const std::string &text, const std::string &key)
{
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size())
      throw std::invalid_argument(text);
    return v;
  } catch (const std::exception &) {
    throw ConfigError("'" + key + "' expects a number, got '" + text + "'");
  }
}

long parse_integer(const std::string &text, const std::string &key)
{
  try {
    std::size_t pos = 0;
    const long v = std::stol(text, &pos);
    if (pos != text.size())
      throw std::invalid_argument(text);
    return v;
  } catch (const std::exception &) {
    throw ConfigError("'" + key + "' expects an integer, got '" + text + "'");
  }
}

bool parse_bool(const std::string &text, const std::string &key)
{
  if (text == "true" || text == "1" || text == "yes")
    return true;
  if (text == "false" || text == "0" || text == "no")
    return false;
  throw ConfigError("'" + key + "' expects true or false, got '" + text + "'");
}

std::vector<double> parse_real_list(const std::string &text, const std::string &key)
{
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos)
      throw ConfigError("'" + key + "' has an empty list entry");
    out.push_back(parse_real(item.substr(b, e - b + 1), key));
  }
  if (out.empty())
    throw ConfigError("'" + key + "' is an empty list");
  return out;
}

SolverConfig solver_config_from(const io::KeyValues &kv, const fs::path &base_dir)
{
  static const std::set<std::string> known = {
    "alpha",          "beta",         "lambda",          "iterations",         "prior",
    "tv_iterations",  "tv_tolerance", "external_command", "external_dir",      "external_timeout_s",
    "v",              "v_map",        "record_history",  "alpha_schedule",     "beta_schedule",
    "lambda_schedule"};
  for (const auto &[k, v] : kv)
    if (!known.count(k))
      throw ConfigError("unknown solver config key '" + k + "'");

  SolverConfig cfg;
  auto get = [&](const char *key) -> const std::string * {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (auto v = get("alpha"))
    cfg.alpha = parse_real(*v, "alpha");
  if (auto v = get("beta"))
    cfg.beta = parse_real(*v, "beta");
  if (auto v = get("lambda"))
    cfg.lambda = parse_real(*v, "lambda");
  if (auto v = get("iterations"))
    cfg.iterations = static_cast<int>(parse_integer(*v, "iterations"));
  if (auto v = get("prior"))
    cfg.prior.kind = parse_prior_kind(*v);
  if (auto v = get("tv_iterations"))
    cfg.prior.tv.max_iterations = static_cast<int>(parse_integer(*v, "tv_iterations"));
  if (auto v = get("tv_tolerance"))
    cfg.prior.tv.tolerance = parse_real(*v, "tv_tolerance");
  if (auto v = get("external_command"))
    cfg.prior.external.command = *v;
  if (auto v = get("external_dir"))
    cfg.prior.external.exchange_dir = *v;
  if (auto v = get("external_timeout_s"))
    cfg.prior.external.timeout = std::chrono::milliseconds(static_cast<long>(1000.0 * parse_real(*v, "external_timeout_s")));
  if (get("v") && get("v_map"))
    throw ConfigError("give either 'v' or 'v_map', not both");
  if (auto v = get("v"))
    cfg.v = ConsistencyWeight(parse_real(*v, "v"));
  if (auto v = get("v_map")) {
    fs::path p = *v;
    if (p.is_relative() && !base_dir.empty())
      p = base_dir / p;
    cfg.v = ConsistencyWeight(io::read_real(p));
  }
  if (auto v = get("record_history"))
    cfg.record_history = parse_bool(*v, "record_history");
  if (auto v = get("alpha_schedule"))
    cfg.alpha_schedule = parse_real_list(*v, "alpha_schedule");
  if (auto v = get("beta_schedule"))
    cfg.beta_schedule = parse_real_list(*v, "beta_schedule");
  if (auto v = get("lambda_schedule"))
    cfg.lambda_schedule = parse_real_list(*v, "lambda_schedule");
  cfg.validate();
  return cfg;
}

SolverConfig load_solver_config(const fs::path &path)
{
  return solver_config_from(io::read_key_values(path), path.parent_path());
}

std::string to_text(const SolverConfig &c)
{
  std::ostringstream os;
  os.precision(17);
  auto list = [&](const char *key, const std::vector<double> &s) {
    if (s.empty())
      return;
    os << key << " = ";
    for (std::size_t i = 0; i < s.size(); ++i)
      os << (i ? ", " : "") << s[i];
    os << '\n';
  };
  os << "alpha = " << c.alpha << '\n'
     << "beta = " << c.beta << '\n'
     << "lambda = " << c.lambda << '\n'
     << "iterations = " << c.iterations << '\n'
     << "prior = " << to_string(c.prior.kind) << '\n';
  if (c.prior.kind == PriorKind::total_variation)
    os << "tv_iterations = " << c.prior.tv.max_iterations << '\n' << "tv_tolerance = " << c.prior.tv.tolerance << '\n';
  if (c.prior.kind == PriorKind::external)
    os << "external_command = " << c.prior.external.command << '\n'
       << "external_timeout_s = " << c.prior.external.timeout.count() / 1000.0 << '\n';
  if (!c.v.map())
    os << "v = " << c.v.scalar() << '\n';
  os << "record_history = " << (c.record_history ? "true" : "false") << '\n';
  list("alpha_schedule", c.alpha_schedule);
  list("beta_schedule", c.beta_schedule);
  list("lambda_schedule", c.lambda_schedule);
  return os.str();
}

} // namespace pcsmri
