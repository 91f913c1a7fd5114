#pragma once

#include <sys/types.h>

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace storm {

using Clock = std::chrono::steady_clock;

struct ProcessOptions
{
  /// Run the child as leader of its own process group; kill() then takes
  /// down everything the child spawned.
  bool new_process_group = true;
  /// Address-space limit in megabytes; 0 disables the limit.
  std::uint64_t memory_limit_mb = 0;
  /// Truncate captured stdout/stderr beyond this many bytes.
  std::size_t output_limit = 64u << 20;
};

struct ProcessResult
{
  int exit_code = -1;
  /// Terminating signal, 0 if the child exited normally.
  int signal = 0;
  bool timed_out = false;
  std::string out;
  std::string err;
  double wall_seconds = 0;
};

/**
 * A child process connected through pipes on stdin, stdout and stderr.
 *
 * The destructor kills the child (and its process group) and reaps it, so
 * no process outlives its Subprocess object.
 */
class Subprocess
{
 public:
  /** Spawn argv[0] (searched in PATH). Throws SpawnError. */
  Subprocess(const std::vector<std::string>& argv, const ProcessOptions& options = {});
  ~Subprocess();

  Subprocess(const Subprocess&) = delete;
  Subprocess& operator=(const Subprocess&) = delete;

  pid_t pid() const { return d_pid; }
  bool running() const { return d_pid > 0 && !d_reaped; }

  /** Write all of data; false if the child closed stdin or the deadline passed. */
  bool write(std::string_view data, Clock::time_point deadline);
  void close_stdin();

  /** Next line of stdout without the newline; nullopt on EOF or deadline. */
  std::optional<std::string> read_line(Clock::time_point deadline);

  /**
   * Feed input, close stdin and collect all output until the child exits or
   * the deadline passes. On deadline the process group is killed.
   */
  ProcessResult communicate(std::string_view input, Clock::time_point deadline);

  /** SIGKILL the child (its whole group when it leads one). */
  void kill();
  /** Block until the child is reaped; returns the raw wait status. */
  int wait();

 private:
  void close_fd(int& fd);
  bool fill_stdout(Clock::time_point deadline);

  pid_t d_pid = -1;
  bool d_group = true;
  bool d_reaped = false;
  int d_status = 0;
  int d_in = -1;
  int d_out = -1;
  int d_err = -1;
  std::size_t d_limit = 0;
  std::string d_out_buffer;
  bool d_out_eof = false;
};

/** Spawn, feed input and collect output with a wall-clock timeout. */
ProcessResult run_process(const std::vector<std::string>& argv,
                          std::string_view input,
                          std::chrono::milliseconds timeout,
                          const ProcessOptions& options = {});

}  // namespace storm
