#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "storm/smtlib/script.hpp"
#include "storm/smtlib/sort.hpp"
#include "storm/smtlib/term.hpp"

namespace storm::smtlib {

struct FunctionSig
{
  std::vector<Sort> params;
  Sort result;
};

/** A define-fun, expanded at every use. */
struct Macro
{
  std::vector<SortedVar> params;
  Sort result;
  TermPtr body;
};

/**
 * Symbol table of user declarations: uninterpreted sorts, datatypes,
 * declared functions and macros. Theory symbols are not stored here.
 */
class Signature
{
 public:
  void set_logic(std::string logic) { d_logic = std::move(logic); }
  const std::optional<std::string>& logic() const { return d_logic; }
  /// Numerals denote reals in logics with real but without integer
  /// arithmetic.
  bool numerals_are_real() const;

  void declare_sort(const std::string& name, std::uint64_t arity);
  void define_sort(const std::string& name, Sort sort);
  void declare_fun(const std::string& name, FunctionSig sig);
  void define_macro(const std::string& name, Macro macro);
  void declare_datatypes(const std::vector<DatatypeDecl>& decls);
  /// Register whatever a declaration command declares.
  void apply(const Command& declaration);

  bool has_sort(const std::string& name) const;
  const Sort* sort_alias(const std::string& name) const;
  const FunctionSig* function(const std::string& name) const;
  const Macro* macro(const std::string& name) const;
  /// Datatype sort constructed by a constructor.
  const Sort* constructor(const std::string& name) const;
  const DatatypeDecl* datatype(const std::string& name) const;
  /// (datatype sort, field sort) of a selector.
  const std::pair<Sort, Sort>* selector(const std::string& name) const;
  bool is_declared(const std::string& name) const;

  const std::map<std::string, FunctionSig>& functions() const
  {
    return d_functions;
  }
  const std::map<std::string, std::uint64_t>& sorts() const
  {
    return d_sorts;
  }

 private:
  std::optional<std::string> d_logic;
  std::map<std::string, std::uint64_t> d_sorts;
  std::map<std::string, Sort> d_aliases;
  std::map<std::string, FunctionSig> d_functions;
  std::map<std::string, Macro> d_macros;
  std::map<std::string, DatatypeDecl> d_datatypes;
  std::map<std::string, Sort> d_constructors;
  std::map<std::string, std::pair<Sort, Sort>> d_selectors;
};

/** Signature holding every declaration of the script. */
Signature signature_of(const Script& script);

}  // namespace storm::smtlib
