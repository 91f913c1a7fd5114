#pragma once

#include <functional>
#include <string>
#include <vector>

#include "storm/instancegen.hpp"
#include "storm/smtlib/script.hpp"

namespace storm {

struct InstanceStats
{
  std::size_t bytes = 0;
  std::size_t assertions = 0;
  std::size_t depth = 0;
};

InstanceStats stats_of(const smtlib::Script& s);

enum class Stage : std::uint8_t
{
  assertions,
  depth,
};

std::string_view to_string(Stage s);

/// One Fuzz call of the binary search.
struct StageStep
{
  Stage stage = Stage::assertions;
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::size_t bound = 0;
  bool found = false;
  std::size_t bugs = 0;
};

struct MinimizationResult
{
  InstanceStats original;
  InstanceStats minimized;
  std::size_t fuzz_calls = 0;
  std::vector<StageStep> trace;
  smtlib::Script script;
  /// The target still answers unsat on script.
  bool reproduced = false;
  SolverOutcome final_outcome;
};

/**
 * Fuzz(S, cfg) as used by the search: returns the unsat hits obtained when
 * fuzzing seed S under cfg. Failures to fuzz S count as no hits.
 */
using Fuzzer = std::function<FuzzResult(const smtlib::Script&, const FuzzConfig&)>;

struct MinimizeOptions
{
  /// Minimize depth before assertion count.
  bool depth_first = false;
  /// Applied to the result of the search, e.g. an external reducer.
  std::function<smtlib::Script(const smtlib::Script&)> post_pass;
};

/**
 * Alg. 2 over the depth bound: fuzz s at D = (d_min + d_max) / 2; recurse
 * on the smallest-depth bug over [d_min, D] if there is one, else on s over
 * [D + 1, d_max].
 */
smtlib::Script minimize_depth(const smtlib::Script& s,
                              const FuzzConfig& cfg,
                              std::size_t d_min,
                              std::size_t d_max,
                              const Fuzzer& fuzzer,
                              std::vector<StageStep>* trace = nullptr);

/** The same search over the assertion bound A_max. */
smtlib::Script minimize_assertions(const smtlib::Script& s,
                                   const FuzzConfig& cfg,
                                   std::size_t a_min,
                                   std::size_t a_max,
                                   const Fuzzer& fuzzer,
                                   std::vector<StageStep>* trace = nullptr);

/**
 * Assertion count first, then depth (under the assertion bound found), then
 * a final check that target still answers unsat. When it does not, the
 * last intermediate that does is returned.
 */
MinimizationResult minimize(const smtlib::Script& bug,
                            const FuzzConfig& cfg,
                            const Fuzzer& fuzzer,
                            InstanceRunner& target,
                            const MinimizeOptions& options = {});

}  // namespace storm
