#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "storm/instancegen.hpp"
#include "storm/minimizer.hpp"
#include "storm/oracle.hpp"
#include "storm/smtlib/script.hpp"
#include "storm/solver.hpp"

namespace storm {

struct CampaignConfig
{
  /// Seed files or glob patterns.
  std::vector<std::string> seeds;
  std::vector<SolverProfile> solvers;
  SolverProfile oracle = SolverProfile::z3("z3");
  double oracle_timeout_seconds = 10;
  std::filesystem::path out = "storm-out";
  std::uint64_t master_seed = 0;
  std::size_t d_max = 64;
  std::size_t a_max = 64;
  std::pair<std::size_t, std::size_t> nc_range{200, 1500};
  std::pair<std::size_t, std::size_t> nm_range{300, 1000};
  /// Fixed budgets instead of the scaled ones.
  std::optional<std::size_t> nc;
  std::optional<std::size_t> nm;
  bool incremental = false;
  std::size_t workers = 1;
  /// Stop fuzzing a (seed, solver) pair after this many unsat answers; 0 = never.
  std::size_t stop_after_bugs = 0;
  /// Logic globs; an empty allow list admits every logic.
  std::vector<std::string> logic_allow;
  std::vector<std::string> logic_deny;
  std::vector<std::string> decidable_logics = default_decidable_logics;
  /// Class-A bugs minimized per (seed, solver) pair.
  std::size_t minimize_bugs = 1;
  /// Instances per Fuzz call during minimization.
  std::size_t minimize_nm = 100;
  /// Record wall times in runs.jsonl (which then differs between runs).
  bool record_timing = false;
  bool quiet = false;

  /** Throws ConfigError. */
  void validate() const;
};

/**
 * Read a campaign file: key = value lines under a [campaign] section and
 * one [solver <id>] section per solver; an [oracle] section replaces the
 * default oracle. Relative paths are taken from the file's directory.
 * Throws ConfigError.
 */
CampaignConfig load_config(const std::filesystem::path& path);
CampaignConfig parse_config(const std::string& text, const std::filesystem::path& base = ".");

/** Expand seed paths and globs into a sorted, duplicate-free file list. */
std::vector<std::filesystem::path> expand_seeds(const std::vector<std::string>& patterns);

struct Seed
{
  std::string id;
  std::filesystem::path path;
  smtlib::Script script;
};

/**
 * Seeds the solver should see: with a set-logic, the logic must be allowed
 * by the lists and supported by the solver; without one, a probe run on the
 * unmodified seed must print a verdict.
 */
std::vector<const Seed*> filter_seeds(const std::vector<Seed>& seeds,
                                      const SolverProfile& solver,
                                      const std::vector<std::string>& allow = {},
                                      const std::vector<std::string>& deny = {});

struct Tally
{
  std::size_t generated = 0;
  std::size_t sat = 0;
  std::size_t unsat = 0;
  std::size_t unknown = 0;
  std::size_t crash = 0;
  std::size_t timeout = 0;

  void add(Verdict v);
  Tally& operator+=(const Tally& o);
};

struct TaskReport
{
  std::string seed_id;
  std::string solver_id;
  Tally tally;
  std::size_t initial_pool = 0;
  std::size_t construction_pool = 0;
  bool stalled = false;
  std::size_t nc = 0;
  std::size_t nm = 0;
  std::optional<std::string> skipped;
};

struct BugEntry
{
  BugReport report;
  std::optional<MinimizationResult> minimization;
  /// Id of an earlier bug with the same minimized instance.
  std::optional<std::string> duplicate_of;
};

struct CampaignReport
{
  std::vector<TaskReport> tasks;
  std::vector<BugEntry> bugs;
  /// Seed files that could not be used, with the reason.
  std::vector<std::pair<std::string, std::string>> rejected_seeds;
  Tally total;
  double wall_seconds = 0;
  bool oracle_is_target = false;

  std::size_t unique_bugs() const;
};

/** Run every (seed, solver) pair and write runs.jsonl, report.json, report.txt and bugs/. */
CampaignReport run_campaign(const CampaignConfig& cfg);

/**
 * Re-minimize the bug described by a bug report.json written by a
 * campaign; writes min.smt2 and trace.json next to it.
 */
MinimizationResult minimize_report(const std::filesystem::path& report_json);

/** Apply STORM_ORACLE when set: the oracle becomes that z3-compatible binary. */
void apply_environment(CampaignConfig& cfg);

}  // namespace storm
