#pragma once

#include <optional>
#include <span>

#include "storm/smtlib/signature.hpp"
#include "storm/smtlib/term.hpp"

namespace storm::smtlib::detail {

/**
 * Result sort of applying a theory or datatype operator to args.
 * Returns nullopt when op is not a known operator; throws SortError when it
 * is known but the arguments are ill-sorted.
 */
std::optional<Sort> theory_sort(const Identifier& op,
                                std::span<const TermPtr> args,
                                const Signature& sig);

/** Sorts a and b agree, treating Int and Real as compatible. */
bool compatible(const Sort& a, const Sort& b);

}  // namespace storm::smtlib::detail
