#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "storm/instance.hpp"
#include "storm/process.hpp"

namespace storm {

enum class Verdict : std::uint8_t
{
  sat,
  unsat,
  unknown,
  crash,
  timeout,
};

std::string_view to_string(Verdict v);
std::optional<Verdict> verdict_from_string(std::string_view s);

/// Bug classes observable when the ground truth is sat.
enum class BugClass : std::uint8_t
{
  /// Solver answered unsat: unsound, critical.
  A,
  /// unknown on a decidable fragment.
  C,
  /// Crash.
  D,
};

std::string_view to_string(BugClass c);

/**
 * How to run one solver binary. args is used in file mode and must contain
 * the "{file}" placeholder exactly once; pipe_args is used when the instance
 * is streamed over stdin (incremental mode and oracle sessions).
 */
struct SolverProfile
{
  std::string id;
  std::string binary;
  std::vector<std::string> args;
  std::vector<std::string> pipe_args;
  bool incremental = true;
  double timeout_seconds = 60;
  std::uint64_t memory_limit_mb = 8192;
  /// Supported logics as glob patterns; "*" accepts everything.
  std::vector<std::string> logics{"*"};
  /// Commands sent at the start of an oracle session; {seed} and
  /// {timeout_ms} are substituted.
  std::vector<std::string> session_options;

  /** Throws ConfigError when the profile is unusable. */
  void validate() const;
  bool supports_logic(const std::string& logic) const;

  /** z3 with its documented random-seed and timeout options. */
  static SolverProfile z3(std::string binary = "z3");
};

struct SolverOutcome
{
  Verdict verdict = Verdict::unknown;
  /// One entry per verdict token found on stdout.
  std::vector<Verdict> verdicts;
  std::string stdout_excerpt;
  std::string stderr_excerpt;
  int exit_code = 0;
  int signal = 0;
  double wall_seconds = 0;
};

enum class RunMode : std::uint8_t
{
  file,
  pipe,
};

/** sat/unsat/unknown tokens on their own line, in order. */
std::vector<Verdict> parse_verdicts(std::string_view output);

/** unsat dominates unknown dominates sat. */
Verdict worst_verdict(const std::vector<Verdict>& verdicts);

/**
 * Map a raw process result to an outcome. check_points is the number of
 * check-sat commands fed to the solver: with one, the first token decides;
 * with several, the worst token decides.
 */
SolverOutcome interpret_run(const ProcessResult& result, std::size_t check_points);

/**
 * Run profile on instance. In file mode the instance is written to file
 * (a temporary file when file is empty). Resource-limit expiry yields
 * Verdict::timeout. Throws SpawnError when the binary cannot be executed.
 */
SolverOutcome run_solver(const SolverProfile& profile,
                         const Instance& instance,
                         RunMode mode,
                         const std::filesystem::path& file = {});

/** Logic patterns whose unknown results count as class C by default. */
inline const std::vector<std::string> default_decidable_logics{"QF_*"};

/**
 * Bug class of an outcome on an instance that is satisfiable by
 * construction, or nullopt when the outcome is not a bug.
 */
std::optional<BugClass> classify(const SolverOutcome& outcome,
                                 const std::optional<std::string>& logic,
                                 const std::vector<std::string>& decidable_logics
                                 = default_decidable_logics);

/** Shell-style glob match (fnmatch). */
bool glob_match(const std::string& pattern, const std::string& text);

struct BugReport
{
  BugClass bug_class = BugClass::A;
  std::string id;
  std::string instance_path;
  std::string solver_id;
  SolverOutcome outcome;
  std::string seed_id;
  std::string seed_path;
  std::uint64_t rng_seed = 0;
  std::size_t iteration = 0;
  std::optional<std::string> minimized_path;
};

}  // namespace storm
