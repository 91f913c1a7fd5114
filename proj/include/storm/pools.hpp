#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "storm/oracle.hpp"
#include "storm/rng.hpp"
#include "storm/smtlib/script.hpp"

namespace storm {

struct PoolEntry
{
  smtlib::TermPtr term;
  TruthValue value = TruthValue::True;
};

enum class PoolKind : std::uint8_t
{
  initial,
  construction,
};

/**
 * Valuated Boolean terms in insertion order. Keys are structurally unique
 * and values are never UNDETERMINED.
 */
class Pool
{
 public:
  explicit Pool(PoolKind kind = PoolKind::initial) : d_kind(kind) {}

  PoolKind kind() const { return d_kind; }
  std::size_t size() const { return d_entries.size(); }
  bool empty() const { return d_entries.empty(); }
  const PoolEntry& operator[](std::size_t i) const { return d_entries[i]; }
  const std::vector<PoolEntry>& entries() const { return d_entries; }

  /** Insert unless term is already present or value is UNDETERMINED. */
  bool insert(smtlib::TermPtr term, TruthValue value);
  std::optional<TruthValue> find(const smtlib::TermPtr& term) const;
  std::size_t max_depth() const;

  /// Construction stopped at the attempt limit before reaching its target.
  bool stalled() const { return d_stalled; }
  void set_stalled(bool s) { d_stalled = s; }

  /** One "<T|F> <term>" line per entry. */
  std::string dump() const;

 private:
  PoolKind d_kind;
  std::vector<PoolEntry> d_entries;
  std::unordered_map<smtlib::TermPtr, std::size_t, smtlib::TermHash, smtlib::TermEqual> d_index;
  bool d_stalled = false;
};

/// Truth values of a batch of predicates under a fixed assignment.
using PredicateEvaluator
    = std::function<std::vector<TruthValue>(const std::vector<smtlib::TermPtr>&)>;

PredicateEvaluator oracle_evaluator(OracleClient& oracle, const Assignment& m);

/**
 * Phase 1: every predicate of the assertions of s with depth at most d_max
 * whose valuation is determined. Throws EmptyPool.
 */
Pool populate_initial_pool(const smtlib::Script& s,
                           std::size_t d_max,
                           const PredicateEvaluator& evaluate);
Pool populate_initial_pool(const smtlib::Script& s,
                           std::size_t d_max,
                           const Assignment& m,
                           OracleClient& oracle);

enum class BoolOp : std::uint8_t
{
  AND,
  NOT,
};

BoolOp rand_op(Rng& rng);

/**
 * An entry of p_init with probability 0.3, else of p_constr; always of
 * p_init while p_constr is empty (no coin is drawn then).
 */
const PoolEntry& rand_formula(const Pool& p_init, const Pool& p_constr, Rng& rng);

/// Attempts per requested entry before construction gives up.
inline constexpr std::size_t stall_factor = 50;

/**
 * Phase 2: combine pool entries with AND/NOT until nc distinct terms of
 * depth at most d_max exist, or stall_factor * nc attempts were made.
 */
Pool populate_construction_pool(const Pool& p_init, std::size_t nc, std::size_t d_max, Rng& rng);

}  // namespace storm
