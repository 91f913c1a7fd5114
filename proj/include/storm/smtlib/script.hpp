#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "storm/smtlib/sort.hpp"
#include "storm/smtlib/term.hpp"

namespace storm::smtlib {

enum class CommandKind : std::uint8_t
{
  set_logic,
  set_option,
  set_info,
  declare_sort,
  declare_fun,
  declare_datatypes,
  assertion,
  check_sat,
  push,
  pop,
  get_model,
  exit,
  /// Well-formed command kept verbatim (check-sat-using, get-value, ...).
  passthrough,
};

struct Constructor
{
  std::string name;
  std::vector<SortedVar> selectors;

  bool operator==(const Constructor&) const = default;
};

struct DatatypeDecl
{
  std::string name;
  std::vector<Constructor> constructors;

  bool operator==(const DatatypeDecl&) const = default;
};

/**
 * One script command. Only the fields relevant to the kind are populated:
 *  - set_logic: name
 *  - set_option / set_info: name (keyword), text (value)
 *  - declare_sort: name, count (arity)
 *  - declare_fun: name, params, sort
 *  - declare_datatypes: datatypes
 *  - assertion: term
 *  - push / pop: count
 *  - passthrough: name (command head), text (whole command)
 */
struct Command
{
  CommandKind kind = CommandKind::passthrough;
  std::string name;
  std::string text;
  std::vector<Sort> params;
  Sort sort;
  std::uint64_t count = 0;
  TermPtr term;
  std::vector<DatatypeDecl> datatypes;

  static Command set_logic(std::string logic);
  static Command set_option(std::string keyword, std::string value);
  static Command set_info(std::string keyword, std::string value);
  static Command declare_sort(std::string name, std::uint64_t arity = 0);
  static Command declare_const(std::string name, Sort sort);
  static Command declare_fun(std::string name,
                             std::vector<Sort> params,
                             Sort sort);
  static Command declare_datatypes(std::vector<DatatypeDecl> datatypes);
  static Command assertion(TermPtr term);
  static Command check_sat();
  static Command push(std::uint64_t levels = 1);
  static Command pop(std::uint64_t levels = 1);
  static Command get_model();
  static Command exit();
  static Command passthrough(std::string head, std::string text);

  bool is_declaration() const
  {
    return kind == CommandKind::declare_sort || kind == CommandKind::declare_fun
           || kind == CommandKind::declare_datatypes;
  }
  /// check-sat and its tactic/assumption-bearing variants.
  bool is_check_point() const;
};

bool operator==(const Command& a, const Command& b);

/**
 * An SMT-LIB script: the ordered command list, with views onto its logic,
 * declarations, assertions and check-sat positions.
 */
class Script
{
 public:
  Script() = default;
  explicit Script(std::vector<Command> commands)
      : d_commands(std::move(commands))
  {
  }

  const std::vector<Command>& commands() const { return d_commands; }
  void append(Command c) { d_commands.push_back(std::move(c)); }

  std::optional<std::string> logic() const;
  /// All asserted terms in order, regardless of push/pop scope.
  std::vector<TermPtr> assertions() const;
  std::vector<Command> declarations() const;
  /// Indices into commands() of the check points.
  std::vector<std::size_t> check_points() const;

  bool operator==(const Script& other) const
  {
    return d_commands == other.d_commands;
  }

 private:
  std::vector<Command> d_commands;
};

}  // namespace storm::smtlib
