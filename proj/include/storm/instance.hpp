#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "storm/smtlib/script.hpp"

namespace storm {

struct Provenance
{
  std::string seed_id;
  std::uint64_t rng_seed = 0;
  std::size_t iteration = 0;
};

/**
 * A generated SMT instance: the header copied from the seed (logic, options
 * and declarations) followed by a body of assertions, push/pop and check-sat
 * commands.
 */
struct Instance
{
  std::vector<smtlib::Command> header;
  std::vector<smtlib::Command> body;
  Provenance provenance;

  smtlib::Script to_script() const;
  std::string to_smt2() const;
  std::optional<std::string> logic() const;
  std::size_t assertion_count() const;
  std::size_t check_point_count() const;
  /// Maximum depth over asserted terms.
  std::size_t max_depth() const;
  bool has_push_pop() const;

  bool operator==(const Instance& other) const
  {
    return header == other.header && body == other.body;
  }
};

/**
 * Header of instances derived from seed: its set-logic, set-option and
 * declaration commands, in their original order. set-info is dropped since
 * e.g. a :status annotation would be wrong for the mutants.
 */
std::vector<smtlib::Command> instance_header(const smtlib::Script& seed);

/** Seed script unchanged, wrapped as an instance (used to probe solvers). */
Instance instance_from_script(const smtlib::Script& script);

}  // namespace storm
