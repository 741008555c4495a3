#include "dig/denoise.hpp"
#include "dig/errors.hpp"

#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <bit>
#include <cerrno>
#include <csignal>
#include <cstdint>
#include <cstring>

static_assert(std::endian::native == std::endian::little,
              "subprocess denoiser protocol assumes a little-endian host");

namespace dig {

namespace {

void write_all(int fd, const void* buf, std::size_t n) {
  const char* p = static_cast<const char*>(buf);
  while (n > 0) {
    ssize_t w = ::write(fd, p, n);
    if (w < 0) {
      if (errno == EINTR) continue;
      throw NumericalError("external denoiser: write failed: " +
                           std::string(std::strerror(errno)));
    }
    p += w;
    n -= static_cast<std::size_t>(w);
  }
}

void read_all(int fd, void* buf, std::size_t n) {
  char* p = static_cast<char*>(buf);
  while (n > 0) {
    ssize_t r = ::read(fd, p, n);
    if (r < 0) {
      if (errno == EINTR) continue;
      throw NumericalError("external denoiser: read failed: " +
                           std::string(std::strerror(errno)));
    }
    if (r == 0)
      throw NumericalError("external denoiser: child closed the pipe");
    p += r;
    n -= static_cast<std::size_t>(r);
  }
}

}  // namespace

ExternalDenoiser::ExternalDenoiser(std::vector<std::string> command, int dim,
                                   double eta_min, double eta_max)
    : command_(std::move(command)), dim_(dim), eta_min_(eta_min), eta_max_(eta_max) {
  detail::require(!command_.empty(), "ExternalDenoiser: empty command");
  detail::require(dim_ > 0, "ExternalDenoiser: dim must be > 0");
  detail::require(eta_min_ >= 0.0 && eta_max_ > eta_min_,
                  "ExternalDenoiser: invalid eta range");
  spawn();
}

ExternalDenoiser::~ExternalDenoiser() { shutdown(); }

void ExternalDenoiser::spawn() {
  int to_child[2], from_child[2];
  if (::pipe(to_child) != 0 || ::pipe(from_child) != 0)
    throw NumericalError("external denoiser: pipe() failed");
  pid_t pid = ::fork();
  if (pid < 0) throw NumericalError("external denoiser: fork() failed");
  if (pid == 0) {
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    ::close(to_child[0]);
    ::close(to_child[1]);
    ::close(from_child[0]);
    ::close(from_child[1]);
    std::vector<char*> argv;
    argv.reserve(command_.size() + 1);
    for (auto& a : command_) argv.push_back(a.data());
    argv.push_back(nullptr);
    ::execvp(argv[0], argv.data());
    ::_exit(127);
  }
  ::close(to_child[0]);
  ::close(from_child[1]);
  to_child_ = to_child[1];
  from_child_ = from_child[0];
  pid_ = pid;
}

void ExternalDenoiser::shutdown() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    int status = 0;
    ::waitpid(static_cast<pid_t>(pid_), &status, 0);
    pid_ = -1;
  }
}

Eigen::VectorXd ExternalDenoiser::denoise(const Eigen::VectorXd& z, double eta) const {
  detail::require(eta > 0.0, "ExternalDenoiser::denoise: eta must be > 0");
  detail::require(z.size() == dim_, "ExternalDenoiser::denoise: dimension mismatch");
  std::lock_guard<std::mutex> lock(io_mutex_);
  // request: u64 count (= d+1), then eta, then z, all little-endian float64
  const std::uint64_t count = static_cast<std::uint64_t>(dim_) + 1;
  write_all(to_child_, &count, sizeof(count));
  write_all(to_child_, &eta, sizeof(eta));
  write_all(to_child_, z.data(), sizeof(double) * static_cast<std::size_t>(dim_));
  // response: u64 count (= d), then d float64
  std::uint64_t resp = 0;
  read_all(from_child_, &resp, sizeof(resp));
  if (resp != static_cast<std::uint64_t>(dim_))
    throw NumericalError("external denoiser: response length " + std::to_string(resp) +
                         " does not match dimension " + std::to_string(dim_));
  Eigen::VectorXd out(dim_);
  read_all(from_child_, out.data(), sizeof(double) * static_cast<std::size_t>(dim_));
  if (!out.allFinite())
    throw NumericalError("external denoiser: response has non-finite entries");
  return out;
}

}  // namespace dig
