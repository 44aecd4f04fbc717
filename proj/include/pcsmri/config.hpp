#pragma once

// Solver configuration files. Grammar: one "key = value" per line, '#'
// comments. Recognized keys:
//   alpha, beta, lambda        positive / positive / nonnegative reals
//   iterations                 integer >= 1
//   prior                      tikhonov | soft_threshold_image |
//                              soft_threshold_haar | total_variation | external
//   tv_iterations, tv_tolerance
//   external_command, external_dir, external_timeout_s
//   v                          scalar soft-consistency weight in [0, 1]
//   v_map                      container path of a per-bin weight map
//   record_history             true | false
//   alpha_schedule, beta_schedule, lambda_schedule   comma-separated lists
// Unknown keys are a ConfigError.

#include <filesystem>
#include <string>

#include "pcsmri/hqs.hpp"
#include "pcsmri/io.hpp"

namespace pcsmri {

/// `base_dir` resolves relative v_map paths.
SolverConfig solver_config_from(const io::KeyValues &kv, const std::filesystem::path &base_dir = {});
SolverConfig load_solver_config(const std::filesystem::path &path);
/// Serialized form (fixed key order), suitable for manifests.
std::string to_text(const SolverConfig &config);

std::vector<double> parse_real_list(const std::string &text, const std::string &key);
double parse_real(const std::string &text, const std::string &key);
long parse_integer(const std::string &text, const std::string &key);
bool parse_bool(const std::string &text, const std::string &key);

} // namespace pcsmri
