#include "storm/smtlib/signature.hpp"

#include "storm/error.hpp"

namespace storm::smtlib {

bool
Signature::numerals_are_real() const
{
  if (!d_logic) return false;
  const std::string& l = *d_logic;
  bool reals = l.find("RA") != std::string::npos
               || l.find("RDL") != std::string::npos;
  bool ints = l.find("IA") != std::string::npos
              || l.find("IRA") != std::string::npos
              || l.find("IDL") != std::string::npos;
  return reals && !ints;
}

void
Signature::declare_sort(const std::string& name, std::uint64_t arity)
{
  if (arity != 0)
  {
    throw UnsupportedError("parametric sort declaration '" + name + "'");
  }
  auto [it, inserted] = d_sorts.emplace(name, arity);
  if (!inserted)
  {
    throw UnsupportedError("sort '" + name + "' declared twice");
  }
}

void
Signature::define_sort(const std::string& name, Sort sort)
{
  d_aliases[name] = std::move(sort);
}

void
Signature::declare_fun(const std::string& name, FunctionSig sig)
{
  auto it = d_functions.find(name);
  if (it != d_functions.end())
  {
    if (it->second.params == sig.params && it->second.result == sig.result)
    {
      return;
    }
    throw UnsupportedError("symbol '" + name
                           + "' redeclared with a different sort");
  }
  if (d_macros.count(name) || d_constructors.count(name)
      || d_selectors.count(name))
  {
    throw UnsupportedError("symbol '" + name + "' declared twice");
  }
  d_functions.emplace(name, std::move(sig));
}

void
Signature::define_macro(const std::string& name, Macro macro)
{
  if (d_functions.count(name) || d_macros.count(name))
  {
    throw UnsupportedError("symbol '" + name + "' declared twice");
  }
  d_macros.emplace(name, std::move(macro));
}

void
Signature::declare_datatypes(const std::vector<DatatypeDecl>& decls)
{
  for (const auto& d : decls)
  {
    if (!d_sorts.emplace(d.name, 0).second)
    {
      throw UnsupportedError("sort '" + d.name + "' declared twice");
    }
    d_datatypes.emplace(d.name, d);
  }
  for (const auto& d : decls)
  {
    Sort dt = Sort::named(d.name);
    for (const auto& c : d.constructors)
    {
      if (!d_constructors.emplace(c.name, dt).second)
      {
        throw UnsupportedError("constructor '" + c.name + "' declared twice");
      }
      for (const auto& s : c.selectors)
      {
        if (!d_selectors.emplace(s.name, std::make_pair(dt, s.sort)).second)
        {
          throw UnsupportedError("selector '" + s.name + "' declared twice");
        }
      }
    }
  }
}

void
Signature::apply(const Command& c)
{
  switch (c.kind)
  {
    case CommandKind::set_logic: set_logic(c.name); break;
    case CommandKind::declare_sort: declare_sort(c.name, c.count); break;
    case CommandKind::declare_fun: declare_fun(c.name, {c.params, c.sort}); break;
    case CommandKind::declare_datatypes: declare_datatypes(c.datatypes); break;
    default: break;
  }
}

bool
Signature::has_sort(const std::string& name) const
{
  return d_sorts.count(name) != 0;
}

const Sort*
Signature::sort_alias(const std::string& name) const
{
  auto it = d_aliases.find(name);
  return it == d_aliases.end() ? nullptr : &it->second;
}

const FunctionSig*
Signature::function(const std::string& name) const
{
  auto it = d_functions.find(name);
  return it == d_functions.end() ? nullptr : &it->second;
}

const Macro*
Signature::macro(const std::string& name) const
{
  auto it = d_macros.find(name);
  return it == d_macros.end() ? nullptr : &it->second;
}

const Sort*
Signature::constructor(const std::string& name) const
{
  auto it = d_constructors.find(name);
  return it == d_constructors.end() ? nullptr : &it->second;
}

const DatatypeDecl*
Signature::datatype(const std::string& name) const
{
  auto it = d_datatypes.find(name);
  return it == d_datatypes.end() ? nullptr : &it->second;
}

const std::pair<Sort, Sort>*
Signature::selector(const std::string& name) const
{
  auto it = d_selectors.find(name);
  return it == d_selectors.end() ? nullptr : &it->second;
}

bool
Signature::is_declared(const std::string& name) const
{
  return d_functions.count(name) || d_macros.count(name)
         || d_constructors.count(name) || d_selectors.count(name);
}

Signature
signature_of(const Script& script)
{
  Signature sig;
  for (const auto& c : script.commands()) sig.apply(c);
  return sig;
}

}  // namespace storm::smtlib
