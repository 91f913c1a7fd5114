#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

namespace storm {

/**
 * Misbehavior of the bundled mock solver. Spec strings:
 *   honest-forward[:<binary>]
 *   unsat-on-trigger:<symbol>[:<min-asserts>[:<min-depth>]]
 *   crash-on-trigger:<symbol>[:<min-asserts>]
 *   unknown-always
 *   sleep-forever
 *   exit:<code>
 */
struct MockBehavior
{
  enum class Kind : std::uint8_t
  {
    honest_forward,
    unsat_on_trigger,
    crash_on_trigger,
    unknown_always,
    sleep_forever,
    exit_code,
  };

  Kind kind = Kind::honest_forward;
  std::string symbol;
  std::size_t min_asserts = 1;
  std::size_t min_depth = 1;
  std::string binary = "z3";
  int code = 0;
};

/** Throws ConfigError on a malformed spec. */
MockBehavior parse_behavior(std::string_view spec);
std::string to_string(const MockBehavior& b);

/// Exit status of a crash-on-trigger mock.
inline constexpr int mock_crash_status = 139;

/**
 * Answer the SMT-LIB script text the way behavior b prescribes, writing
 * verdicts to stdout. Returns the process exit status. honest-forward and
 * sleep-forever do not return.
 */
int mock_serve(const MockBehavior& b, const std::string& script_text, const std::string& file);

/**
 * Write an executable wrapper at out that runs
 * "<storm_forge> mock-serve --behavior <spec>" with the solver arguments.
 */
void write_mock(const MockBehavior& b,
                const std::filesystem::path& out,
                const std::filesystem::path& storm_forge);

}  // namespace storm
