#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "storm/smtlib/term.hpp"

namespace storm::smtlib {

inline std::size_t
term_depth(const Term& t)
{
  return t.depth();
}

/** Function value of a model: body over bound parameters. */
struct FunctionValue
{
  std::vector<SortedVar> params;
  Sort result;
  TermPtr body;
};

/** Values for free symbols: constants by name, functions by name. */
struct Valuation
{
  std::map<std::string, TermPtr> constants;
  std::map<std::string, FunctionValue> functions;
};

/**
 * Replace every free symbol of t by its value and every application of a
 * valued function by its body instantiated with the arguments. Bound
 * variables are never replaced, and binders are renamed when needed to avoid
 * capturing variables of the inserted terms. Throws MissingBinding.
 */
TermPtr substitute(const TermPtr& t, const Valuation& values);

/**
 * Capture-avoiding replacement of free bound-variable occurrences (by name).
 */
TermPtr instantiate(const TermPtr& body,
                    const std::map<std::string, TermPtr>& replacements);

/** Remove every annotation node, keeping the annotated bodies. */
TermPtr strip_annotations(const TermPtr& t);

/**
 * Boolean subterms of t usable as stand-alone predicates, in pre-order
 * without structural duplicates. Annotations are stripped first and
 * subterms with free bound variables are skipped. t itself comes first.
 */
std::vector<TermPtr> enumerate_predicates(const TermPtr& t);

/** Names of free symbols (declared constants) occurring in t. */
std::set<std::string> free_symbols(const Term& t);

/** True if t references the constant or applies the function name. */
bool mentions_symbol(const Term& t, const std::string& name);

/** Names of bound variables occurring free in t. */
std::set<std::string> free_variables(const Term& t);

}  // namespace storm::smtlib
