#include "storm/instance.hpp"

#include <algorithm>

#include "storm/smtlib/printer.hpp"

namespace storm {

using smtlib::Command;
using smtlib::CommandKind;

smtlib::Script
Instance::to_script() const
{
  std::vector<Command> commands = header;
  commands.insert(commands.end(), body.begin(), body.end());
  return smtlib::Script(std::move(commands));
}

std::string
Instance::to_smt2() const
{
  return smtlib::print_script(to_script());
}

std::optional<std::string>
Instance::logic() const
{
  for (const auto& c : header)
  {
    if (c.kind == CommandKind::set_logic) return c.name;
  }
  return std::nullopt;
}

std::size_t
Instance::assertion_count() const
{
  return static_cast<std::size_t>(std::count_if(body.begin(), body.end(), [](const Command& c) {
    return c.kind == CommandKind::assertion;
  }));
}

std::size_t
Instance::check_point_count() const
{
  return static_cast<std::size_t>(
      std::count_if(body.begin(), body.end(), [](const Command& c) { return c.is_check_point(); }));
}

std::size_t
Instance::max_depth() const
{
  std::size_t d = 0;
  for (const auto& c : body)
  {
    if (c.kind == CommandKind::assertion) d = std::max(d, c.term->depth());
  }
  return d;
}

bool
Instance::has_push_pop() const
{
  return std::any_of(body.begin(), body.end(), [](const Command& c) {
    return c.kind == CommandKind::push || c.kind == CommandKind::pop;
  });
}

std::vector<Command>
instance_header(const smtlib::Script& seed)
{
  std::vector<Command> header;
  for (const auto& c : seed.commands())
  {
    if (c.kind == CommandKind::set_logic || c.kind == CommandKind::set_option
        || c.is_declaration())
    {
      header.push_back(c);
    }
  }
  return header;
}

Instance
instance_from_script(const smtlib::Script& script)
{
  Instance inst;
  for (const auto& c : script.commands())
  {
    if (c.kind == CommandKind::set_logic || c.kind == CommandKind::set_option
        || c.kind == CommandKind::set_info || c.is_declaration())
    {
      inst.header.push_back(c);
    }
    else
    {
      inst.body.push_back(c);
    }
  }
  return inst;
}

}  // namespace storm
