#pragma once

#include <span>
#include <string_view>

#include "storm/smtlib/script.hpp"
#include "storm/smtlib/sexpr.hpp"
#include "storm/smtlib/signature.hpp"

namespace storm::smtlib {

struct ParseOptions
{
  /// Maximum ratio between the size of an assertion after let/define-fun
  /// expansion and its size as written.
  double expansion_cap = 10.0;
};

/**
 * Parse an SMT-LIB v2 script.
 *
 * let bindings and define-fun macros are expanded inline. Throws ParseError
 * for lexical and syntactic faults, SortError for ill-sorted terms and
 * UnsupportedError for constructs outside the supported command set.
 */
Script parse_script(std::string_view text, const ParseOptions& options = {});

/** Parse a sort in the context of sig. */
Sort parse_sort(const SExpr& e, const Signature& sig);

/**
 * Parse a single term in the context of sig. Variables in bound are in
 * scope as bound variables.
 */
TermPtr parse_term(const SExpr& e,
                   const Signature& sig,
                   std::span<const SortedVar> bound = {});
TermPtr parse_term(std::string_view text,
                   const Signature& sig,
                   std::span<const SortedVar> bound = {});

}  // namespace storm::smtlib
