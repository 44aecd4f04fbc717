#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstring>
#include <sstream>
#include <thread>

#include "pcsmri/io.hpp"
#include "pcsmri/prior.hpp"

extern char **environ;

namespace pcsmri {

namespace fs = std::filesystem;

namespace {

std::string number(double v)
{
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Exit status of the child, or throws on timeout / spawn failure.
int run_with_timeout(const std::vector<std::string> &argv, std::chrono::milliseconds timeout)
{
  std::vector<char *> cargs;
  for (const auto &a : argv)
    cargs.push_back(const_cast<char *>(a.c_str()));
  cargs.push_back(nullptr);

  // Own process group, so a timeout takes down everything the command started.
  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);
  pid_t pid = 0;
  const int rc = posix_spawn(&pid, cargs[0], nullptr, &attr, cargs.data(), environ);
  posix_spawnattr_destroy(&attr);
  if (rc != 0)
    throw ExternalPriorError("cannot launch external denoiser: " + std::string(std::strerror(rc)));

  const auto deadline = std::chrono::steady_clock::now() + timeout;
  int status = 0;
  for (;;) {
    const pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid)
      break;
    if (done < 0)
      throw ExternalPriorError("waitpid failed for external denoiser");
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      waitpid(pid, &status, 0);
      throw ExternalPriorError("external denoiser timed out after " + std::to_string(timeout.count()) + " ms");
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  if (WIFEXITED(status))
    return WEXITSTATUS(status);
  return 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
}

} // namespace

ComplexImage run_external_denoiser(const ComplexImage &x, const ExternalOptions &options, double beta,
                                   double lambda, std::size_t call_index)
{
  if (options.command.empty())
    throw ConfigError("external prior needs a command");
  fs::path dir = options.exchange_dir;
  if (dir.empty())
    dir = fs::temp_directory_path() / ("pcsmri-exchange-" + std::to_string(getpid()));
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw ExternalPriorError("cannot create exchange directory " + dir.string() + ": " + ec.message());

  const fs::path in = dir / ("prox_in_" + std::to_string(call_index));
  const fs::path out = dir / ("prox_out_" + std::to_string(call_index));
  fs::remove(io::data_path(out), ec);
  fs::remove(io::header_path(out), ec);
  try {
    io::write_image(in, x, io::Dtype::complex128);
  } catch (const IoError &e) {
    throw ExternalPriorError(std::string("cannot write exchange input: ") + e.what());
  }

  const int rc = run_with_timeout({"/bin/sh", "-c", options.command + " \"$@\"", "sh", in.string(),
                                   out.string(), number(beta), number(lambda)},
                                  options.timeout);
  if (rc != 0)
    throw ExternalPriorError("external denoiser exited with status " + std::to_string(rc));

  ComplexImage z;
  try {
    z = io::read_image(out);
  } catch (const Error &e) {
    throw ExternalPriorError(std::string("malformed external denoiser output: ") + e.what());
  }
  if (z.shape() != x.shape())
    throw ExternalPriorError("external denoiser returned shape " + to_string(z.shape()) + ", expected " +
                             to_string(x.shape()));
  if (!all_finite(z.data()))
    throw ExternalPriorError("external denoiser returned non-finite values");
  return z;
}

} // namespace pcsmri
