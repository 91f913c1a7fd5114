#include "storm/smtlib/script.hpp"

namespace storm::smtlib {

Command
Command::set_logic(std::string logic)
{
  Command c;
  c.kind = CommandKind::set_logic;
  c.name = std::move(logic);
  return c;
}

Command
Command::set_option(std::string keyword, std::string value)
{
  Command c;
  c.kind = CommandKind::set_option;
  c.name = std::move(keyword);
  c.text = std::move(value);
  return c;
}

Command
Command::set_info(std::string keyword, std::string value)
{
  Command c;
  c.kind = CommandKind::set_info;
  c.name = std::move(keyword);
  c.text = std::move(value);
  return c;
}

Command
Command::declare_sort(std::string name, std::uint64_t arity)
{
  Command c;
  c.kind = CommandKind::declare_sort;
  c.name = std::move(name);
  c.count = arity;
  return c;
}

Command
Command::declare_const(std::string name, Sort sort)
{
  return declare_fun(std::move(name), {}, std::move(sort));
}

Command
Command::declare_fun(std::string name, std::vector<Sort> params, Sort sort)
{
  Command c;
  c.kind = CommandKind::declare_fun;
  c.name = std::move(name);
  c.params = std::move(params);
  c.sort = std::move(sort);
  return c;
}

Command
Command::declare_datatypes(std::vector<DatatypeDecl> datatypes)
{
  Command c;
  c.kind = CommandKind::declare_datatypes;
  c.datatypes = std::move(datatypes);
  return c;
}

Command
Command::assertion(TermPtr term)
{
  Command c;
  c.kind = CommandKind::assertion;
  c.term = std::move(term);
  return c;
}

Command
Command::check_sat()
{
  Command c;
  c.kind = CommandKind::check_sat;
  return c;
}

Command
Command::push(std::uint64_t levels)
{
  Command c;
  c.kind = CommandKind::push;
  c.count = levels;
  return c;
}

Command
Command::pop(std::uint64_t levels)
{
  Command c;
  c.kind = CommandKind::pop;
  c.count = levels;
  return c;
}

Command
Command::get_model()
{
  Command c;
  c.kind = CommandKind::get_model;
  return c;
}

Command
Command::exit()
{
  Command c;
  c.kind = CommandKind::exit;
  return c;
}

Command
Command::passthrough(std::string head, std::string text)
{
  Command c;
  c.kind = CommandKind::passthrough;
  c.name = std::move(head);
  c.text = std::move(text);
  return c;
}

bool
Command::is_check_point() const
{
  if (kind == CommandKind::check_sat) return true;
  return kind == CommandKind::passthrough
         && (name == "check-sat-using" || name == "check-sat-assuming");
}

bool
operator==(const Command& a, const Command& b)
{
  if (a.kind != b.kind || a.name != b.name || a.text != b.text
      || a.params != b.params || !(a.sort == b.sort) || a.count != b.count
      || a.datatypes != b.datatypes)
  {
    return false;
  }
  if (!a.term || !b.term) return !a.term && !b.term;
  return *a.term == *b.term;
}

std::optional<std::string>
Script::logic() const
{
  for (const auto& c : d_commands)
  {
    if (c.kind == CommandKind::set_logic) return c.name;
  }
  return std::nullopt;
}

std::vector<TermPtr>
Script::assertions() const
{
  std::vector<TermPtr> result;
  for (const auto& c : d_commands)
  {
    if (c.kind == CommandKind::assertion) result.push_back(c.term);
  }
  return result;
}

std::vector<Command>
Script::declarations() const
{
  std::vector<Command> result;
  for (const auto& c : d_commands)
  {
    if (c.is_declaration()) result.push_back(c);
  }
  return result;
}

std::vector<std::size_t>
Script::check_points() const
{
  std::vector<std::size_t> result;
  for (std::size_t i = 0; i < d_commands.size(); ++i)
  {
    if (d_commands[i].is_check_point()) result.push_back(i);
  }
  return result;
}

}  // namespace storm::smtlib
