#include "storm/process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>
#include <thread>

#include "storm/error.hpp"

namespace storm {

namespace {

void
ignore_sigpipe()
{
  static std::once_flag flag;
  std::call_once(flag, [] { ::signal(SIGPIPE, SIG_IGN); });
}

int
poll_timeout(Clock::time_point deadline)
{
  auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
  if (left.count() <= 0) return 0;
  return static_cast<int>(std::min<long long>(left.count(), 1000));
}

void
set_nonblocking(int fd)
{
  int flags = ::fcntl(fd, F_GETFL);
  ::fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

}  // namespace

Subprocess::Subprocess(const std::vector<std::string>& argv, const ProcessOptions& options)
    : d_group(options.new_process_group), d_limit(options.output_limit)
{
  if (argv.empty()) throw SpawnError("empty command line");
  ignore_sigpipe();

  int in[2], out[2], err[2], status[2];
  if (::pipe2(in, O_CLOEXEC) || ::pipe2(out, O_CLOEXEC) || ::pipe2(err, O_CLOEXEC)
      || ::pipe2(status, O_CLOEXEC))
  {
    throw SpawnError(std::string("pipe: ") + std::strerror(errno));
  }

  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);
  rlimit limit{};
  limit.rlim_cur = limit.rlim_max = options.memory_limit_mb << 20;

  pid_t pid = ::fork();
  if (pid < 0)
  {
    throw SpawnError(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0)
  {
    // Only async-signal-safe calls from here on.
    if (d_group) ::setpgid(0, 0);
    ::signal(SIGPIPE, SIG_DFL);
    if (options.memory_limit_mb) ::setrlimit(RLIMIT_AS, &limit);
    ::dup2(in[0], 0);
    ::dup2(out[1], 1);
    ::dup2(err[1], 2);
    ::execvp(args[0], args.data());
    int e = errno;
    [[maybe_unused]] auto n = ::write(status[1], &e, sizeof e);
    ::_exit(127);
  }
  if (d_group) ::setpgid(pid, pid);
  d_pid = pid;
  ::close(in[0]);
  ::close(out[1]);
  ::close(err[1]);
  ::close(status[1]);
  d_in = in[1];
  d_out = out[0];
  d_err = err[0];

  int child_errno = 0;
  ssize_t n;
  do
  {
    n = ::read(status[0], &child_errno, sizeof child_errno);
  } while (n < 0 && errno == EINTR);
  ::close(status[0]);
  if (n == sizeof child_errno)
  {
    wait();
    close_fd(d_in);
    close_fd(d_out);
    close_fd(d_err);
    throw SpawnError("cannot execute '" + argv[0] + "': " + std::strerror(child_errno));
  }
  set_nonblocking(d_in);
  set_nonblocking(d_out);
  set_nonblocking(d_err);
}

Subprocess::~Subprocess()
{
  if (running())
  {
    kill();
    wait();
  }
  else if (d_pid > 0 && d_group)
  {
    ::kill(-d_pid, SIGKILL);
  }
  close_fd(d_in);
  close_fd(d_out);
  close_fd(d_err);
}

void
Subprocess::close_fd(int& fd)
{
  if (fd >= 0) ::close(fd);
  fd = -1;
}

void
Subprocess::close_stdin()
{
  close_fd(d_in);
}

void
Subprocess::kill()
{
  if (d_pid <= 0) return;
  if (d_group) ::kill(-d_pid, SIGKILL);
  if (!d_reaped) ::kill(d_pid, SIGKILL);
}

int
Subprocess::wait()
{
  if (d_pid <= 0 || d_reaped) return d_status;
  int status = 0;
  while (::waitpid(d_pid, &status, 0) < 0 && errno == EINTR)
  {
  }
  d_reaped = true;
  d_status = status;
  // Take down anything the child left behind in its group.
  if (d_group) ::kill(-d_pid, SIGKILL);
  return status;
}

bool
Subprocess::write(std::string_view data, Clock::time_point deadline)
{
  while (!data.empty())
  {
    if (d_in < 0) return false;
    ssize_t n = ::write(d_in, data.data(), data.size());
    if (n > 0)
    {
      data.remove_prefix(static_cast<std::size_t>(n));
      continue;
    }
    if (n < 0 && errno == EINTR) continue;
    if (n < 0 && errno != EAGAIN) return false;
    if (Clock::now() >= deadline) return false;
    pollfd p{d_in, POLLOUT, 0};
    ::poll(&p, 1, poll_timeout(deadline));
  }
  return true;
}

bool
Subprocess::fill_stdout(Clock::time_point deadline)
{
  char buf[65536];
  for (;;)
  {
    ssize_t n = ::read(d_out, buf, sizeof buf);
    if (n > 0)
    {
      d_out_buffer.append(buf, static_cast<std::size_t>(n));
      return true;
    }
    if (n == 0)
    {
      d_out_eof = true;
      return false;
    }
    if (errno == EINTR) continue;
    if (errno != EAGAIN)
    {
      d_out_eof = true;
      return false;
    }
    if (Clock::now() >= deadline) return false;
    pollfd p{d_out, POLLIN, 0};
    ::poll(&p, 1, poll_timeout(deadline));
  }
}

std::optional<std::string>
Subprocess::read_line(Clock::time_point deadline)
{
  for (;;)
  {
    auto pos = d_out_buffer.find('\n');
    if (pos != std::string::npos)
    {
      std::string line = d_out_buffer.substr(0, pos);
      d_out_buffer.erase(0, pos + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    if (d_out_eof || d_out < 0) return std::nullopt;
    if (!fill_stdout(deadline))
    {
      if (d_out_eof && !d_out_buffer.empty())
      {
        std::string rest = std::move(d_out_buffer);
        d_out_buffer.clear();
        return rest;
      }
      return std::nullopt;
    }
  }
}

ProcessResult
Subprocess::communicate(std::string_view input, Clock::time_point deadline)
{
  auto start = Clock::now();
  ProcessResult result;
  result.out = std::move(d_out_buffer);
  d_out_buffer.clear();
  if (input.empty()) close_stdin();

  bool out_open = d_out >= 0 && !d_out_eof;
  bool err_open = d_err >= 0;
  char buf[65536];
  while (out_open || err_open)
  {
    if (Clock::now() >= deadline)
    {
      result.timed_out = true;
      kill();
      break;
    }
    pollfd fds[3];
    int n = 0;
    int in_idx = -1, out_idx = -1, err_idx = -1;
    if (d_in >= 0 && !input.empty())
    {
      in_idx = n;
      fds[n++] = {d_in, POLLOUT, 0};
    }
    if (out_open)
    {
      out_idx = n;
      fds[n++] = {d_out, POLLIN, 0};
    }
    if (err_open)
    {
      err_idx = n;
      fds[n++] = {d_err, POLLIN, 0};
    }
    int r = ::poll(fds, static_cast<nfds_t>(n), poll_timeout(deadline));
    if (r < 0 && errno != EINTR) break;
    if (r <= 0) continue;
    if (in_idx >= 0 && fds[in_idx].revents)
    {
      ssize_t w = ::write(d_in, input.data(), input.size());
      if (w > 0) input.remove_prefix(static_cast<std::size_t>(w));
      if ((w < 0 && errno != EAGAIN && errno != EINTR) || input.empty())
      {
        close_stdin();
      }
    }
    auto drain = [&](int idx, int fd, std::string& sink, bool& open) {
      if (idx < 0 || !fds[idx].revents) return;
      ssize_t got = ::read(fd, buf, sizeof buf);
      if (got > 0)
      {
        if (sink.size() < d_limit) sink.append(buf, static_cast<std::size_t>(got));
      }
      else if (got == 0 || (errno != EAGAIN && errno != EINTR))
      {
        open = false;
      }
    };
    drain(out_idx, d_out, result.out, out_open);
    drain(err_idx, d_err, result.err, err_open);
  }
  close_stdin();

  // Output is closed; give the child until the deadline to exit.
  if (!result.timed_out)
  {
    for (;;)
    {
      int status = 0;
      pid_t p = ::waitpid(d_pid, &status, WNOHANG);
      if (p == d_pid)
      {
        d_reaped = true;
        d_status = status;
        if (d_group) ::kill(-d_pid, SIGKILL);
        break;
      }
      if (Clock::now() >= deadline)
      {
        result.timed_out = true;
        kill();
        break;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(1));
    }
  }
  int status = wait();
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  if (WIFSIGNALED(status)) result.signal = WTERMSIG(status);
  result.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

ProcessResult
run_process(const std::vector<std::string>& argv,
            std::string_view input,
            std::chrono::milliseconds timeout,
            const ProcessOptions& options)
{
  auto deadline = Clock::now() + timeout;
  Subprocess p(argv, options);
  return p.communicate(input, deadline);
}

}  // namespace storm
