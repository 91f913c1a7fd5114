#include "storm/smtlib/printer.hpp"

#include <ostream>

#include "storm/smtlib/sexpr.hpp"

namespace storm::smtlib {

namespace {

std::string
with_value(const char* head, const Command& c)
{
  std::string out = std::string("(") + head + " " + c.name;
  if (!c.text.empty()) out += " " + c.text;
  return out + ")";
}

std::string
print_datatypes(const Command& c)
{
  std::string out = "(declare-datatypes (";
  for (std::size_t i = 0; i < c.datatypes.size(); ++i)
  {
    if (i) out += " ";
    out += "(" + quote_symbol(c.datatypes[i].name) + " 0)";
  }
  out += ") (";
  for (std::size_t i = 0; i < c.datatypes.size(); ++i)
  {
    if (i) out += " ";
    out += "(";
    const auto& ctors = c.datatypes[i].constructors;
    for (std::size_t j = 0; j < ctors.size(); ++j)
    {
      if (j) out += " ";
      out += "(" + quote_symbol(ctors[j].name);
      for (const auto& s : ctors[j].selectors)
      {
        out += " (" + quote_symbol(s.name) + " " + to_string(s.sort) + ")";
      }
      out += ")";
    }
    out += ")";
  }
  return out + "))";
}

}  // namespace

std::string
print_command(const Command& c)
{
  switch (c.kind)
  {
    case CommandKind::set_logic: return "(set-logic " + c.name + ")";
    case CommandKind::set_option: return with_value("set-option", c);
    case CommandKind::set_info: return with_value("set-info", c);
    case CommandKind::declare_sort:
      return "(declare-sort " + quote_symbol(c.name) + " "
             + std::to_string(c.count) + ")";
    case CommandKind::declare_fun:
    {
      if (c.params.empty())
      {
        return "(declare-const " + quote_symbol(c.name) + " "
               + to_string(c.sort) + ")";
      }
      std::string out = "(declare-fun " + quote_symbol(c.name) + " (";
      for (std::size_t i = 0; i < c.params.size(); ++i)
      {
        if (i) out += " ";
        out += to_string(c.params[i]);
      }
      return out + ") " + to_string(c.sort) + ")";
    }
    case CommandKind::declare_datatypes: return print_datatypes(c);
    case CommandKind::assertion: return "(assert " + to_string(*c.term) + ")";
    case CommandKind::check_sat: return "(check-sat)";
    case CommandKind::push: return "(push " + std::to_string(c.count) + ")";
    case CommandKind::pop: return "(pop " + std::to_string(c.count) + ")";
    case CommandKind::get_model: return "(get-model)";
    case CommandKind::exit: return "(exit)";
    case CommandKind::passthrough: return c.text;
  }
  return {};
}

void
print_script(std::ostream& out, const Script& script)
{
  for (const auto& c : script.commands()) out << print_command(c) << '\n';
}

std::string
print_script(const Script& script)
{
  std::string out;
  for (const auto& c : script.commands())
  {
    out += print_command(c);
    out += '\n';
  }
  return out;
}

}  // namespace storm::smtlib
