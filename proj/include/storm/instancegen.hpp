#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "storm/instance.hpp"
#include "storm/pools.hpp"
#include "storm/rng.hpp"
#include "storm/solver.hpp"

namespace storm {

struct FuzzConfig
{
  /// Construction-pool size and instance count; scaled from the size of
  /// the initial pool over nc_range / nm_range when unset.
  std::optional<std::size_t> nc;
  std::optional<std::size_t> nm;
  std::size_t d_max = 64;
  std::size_t a_max = 64;
  bool incremental = false;
  std::uint64_t rng_seed = 0;
  std::pair<std::size_t, std::size_t> nc_range{200, 1500};
  std::pair<std::size_t, std::size_t> nm_range{300, 1000};
  /// Stop once this many unsat answers were seen; 0 runs all nm instances.
  std::size_t stop_after = 0;

  /** Throws ConfigError. */
  void validate() const;
};

/// Pool sizes outside this range scale like its end points.
inline constexpr std::size_t scale_pool_min = 10;
inline constexpr std::size_t scale_pool_max = 2000;

/** Linear interpolation of range over the clamped initial-pool size. */
std::size_t scale_budget(std::size_t pool_size, std::pair<std::size_t, std::size_t> range);

/** set-info command recording where an instance came from. */
smtlib::Command provenance_info(const Provenance& p);

/**
 * Phase 3: header plus ac in [1, a_max] assertions drawn from the pools,
 * each negated when its valuation is FALSE, and one check-sat.
 */
Instance generate_instance(const std::vector<smtlib::Command>& header,
                           const Pool& p_init,
                           const Pool& p_constr,
                           std::size_t a_max,
                           Rng& rng,
                           const Provenance& provenance = {});

/**
 * Incremental variant: the stack first grows to a nesting depth drawn from
 * [1, 4]; 1 to 4 check-sat points follow, each at a level drawn from
 * [0, depth], with the assertions spread over the frames. All frames are
 * popped at the end.
 */
Instance generate_incremental_instance(const std::vector<smtlib::Command>& header,
                                       const Pool& p_init,
                                       const Pool& p_constr,
                                       std::size_t a_max,
                                       Rng& rng,
                                       const Provenance& provenance = {});

/** Solver under test as seen by the fuzz loop. */
class InstanceRunner
{
 public:
  virtual ~InstanceRunner() = default;
  virtual SolverOutcome run(const Instance& instance) = 0;
};

struct FuzzRun
{
  std::size_t iteration = 0;
  SolverOutcome outcome;
};

struct FuzzHit
{
  std::size_t iteration = 0;
  BugClass bug_class = BugClass::A;
  Instance instance;
  SolverOutcome outcome;
};

struct FuzzResult
{
  std::size_t initial_pool = 0;
  std::size_t construction_pool = 0;
  bool stalled = false;
  std::size_t nc = 0;
  std::size_t nm = 0;
  std::vector<FuzzRun> runs;
  /// Instances whose outcome is a bug of any class, in iteration order.
  std::vector<FuzzHit> hits;

  /** Hits of class A: the solver answered unsat. */
  std::vector<const FuzzHit*> unsat_hits() const;
};

/**
 * Alg. 1: fragment seed into the initial pool, build the construction pool,
 * then generate and run nm instances. Throws EmptyPool.
 */
FuzzResult fuzz(const smtlib::Script& seed,
                const FuzzConfig& cfg,
                const PredicateEvaluator& evaluate,
                InstanceRunner& runner,
                const std::string& seed_id = "seed",
                const std::vector<std::string>& decidable_logics = default_decidable_logics);

/** fuzz with an initial pool built beforehand. */
FuzzResult fuzz(const smtlib::Script& seed,
                const FuzzConfig& cfg,
                const Pool& p_init,
                InstanceRunner& runner,
                const std::string& seed_id = "seed",
                const std::vector<std::string>& decidable_logics = default_decidable_logics);

}  // namespace storm
