#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "storm/instance.hpp"
#include "storm/smtlib/script.hpp"
#include "storm/smtlib/term_ops.hpp"
#include "storm/solver.hpp"

namespace storm {

enum class TruthValue : std::uint8_t
{
  False,
  True,
  Undetermined,
};

std::string_view to_string(TruthValue v);

inline TruthValue
truth(bool b)
{
  return b ? TruthValue::True : TruthValue::False;
}

/**
 * A model of a seed: values for every declared symbol, plus the SMT-LIB
 * commands that make those values meaningful to the oracle (sorts,
 * universe elements of uninterpreted sorts, auxiliary functions the values
 * refer to).
 */
struct Assignment
{
  smtlib::Valuation values;
  std::vector<std::string> preamble;
  std::string oracle_id;
  std::uint64_t rng_seed = 0;
  /// The seed's assertions were unsat or unknown; this is a model of their
  /// negation.
  bool from_negation = false;
};

struct OracleOptions
{
  double timeout_seconds = 10;
};

/**
 * Client of the trusted oracle solver. Keeps one interactive session open
 * and is not safe to share between threads; create one per worker.
 */
class OracleClient
{
 public:
  explicit OracleClient(SolverProfile profile, OracleOptions options = {});
  ~OracleClient();

  OracleClient(const OracleClient&) = delete;
  OracleClient& operator=(const OracleClient&) = delete;

  const SolverProfile& profile() const { return d_profile; }

  /**
   * Model of the conjunction of the assertions of s, or of its negation when
   * the conjunction is not sat. Symbols the oracle leaves out get sort
   * defaults. Throws SeedRejected or OracleUnavailable.
   */
  Assignment generate_assignment(const smtlib::Script& s, std::uint64_t rng_seed);

  /**
   * Truth value of pred under m. The ground formula pred[m] is TRUE when it
   * is sat and its negation unsat, FALSE in the opposite case, and
   * UNDETERMINED otherwise.
   */
  TruthValue evaluate(const smtlib::TermPtr& pred, const Assignment& m);
  std::vector<TruthValue> evaluate_all(const std::vector<smtlib::TermPtr>& preds,
                                       const Assignment& m);

  /** Oracle verdict on a whole instance; worst verdict over its check points. */
  Verdict check_ground_truth(const Instance& i);

  /** Number of check-sat queries issued so far. */
  std::size_t query_count() const { return d_queries; }

 private:
  class Session;

  Session& session();
  void drop_session();
  void load(const Assignment& m);

  SolverProfile d_profile;
  OracleOptions d_options;
  std::unique_ptr<Session> d_session;
  std::string d_loaded;
  std::size_t d_queries = 0;
};

}  // namespace storm
