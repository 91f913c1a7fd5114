#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "storm/smtlib/sort.hpp"

namespace storm::smtlib {

enum class TermKind : std::uint8_t
{
  /// Literal: numeral, decimal, bitvector, string, true/false, (_ bvN w).
  constant,
  /// Reference to a declared nullary function.
  symbol,
  /// Reference to a variable bound by an enclosing quantifier or lambda.
  variable,
  /// Operator application; nullary applications are theory constants such
  /// as re.none or datatype constructors such as nil.
  application,
  /// forall / exists / lambda.
  quantifier,
  /// (! body :attr ...).
  annotation,
};

/** Operator name with optional indices "(_ f i ...)" or qualifier "(as f S)". */
struct Identifier
{
  std::string name;
  std::vector<std::string> indices;
  std::optional<Sort> qualifier;

  bool operator==(const Identifier&) const = default;
};

struct SortedVar
{
  std::string name;
  Sort sort;

  bool operator==(const SortedVar&) const = default;
};

/** Attribute of an annotation; value is canonical S-expression text. */
struct Attribute
{
  std::string keyword;
  std::string value;

  bool operator==(const Attribute&) const = default;
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

/**
 * Immutable SMT-LIB term. Depth, tree size and a structural hash are
 * computed once at construction. Children are shared pointers, so
 * subterms may be shared freely between terms, scripts and threads.
 */
class Term
{
  struct Token
  {
  };

 public:
  Term(Token,
       TermKind kind,
       Identifier op,
       Sort sort,
       std::vector<TermPtr> args,
       std::vector<SortedVar> vars,
       std::vector<Attribute> attributes);

  static TermPtr constant(std::string literal, Sort sort);
  static TermPtr symbol(std::string name, Sort sort);
  static TermPtr variable(std::string name, Sort sort);
  static TermPtr app(Identifier op, Sort sort, std::vector<TermPtr> args);
  static TermPtr app(std::string op, Sort sort, std::vector<TermPtr> args);
  static TermPtr quantifier(std::string binder,
                            std::vector<SortedVar> vars,
                            TermPtr body,
                            Sort sort);
  static TermPtr annotated(TermPtr body, std::vector<Attribute> attributes);

  TermKind kind() const { return d_kind; }
  const Sort& sort() const { return d_sort; }
  /// 1 for leaves, 1 + max(children) otherwise; annotations are transparent.
  std::size_t depth() const { return d_depth; }
  /// Number of nodes of the tree (shared subterms counted per occurrence).
  std::size_t size() const { return d_size; }
  std::size_t hash() const { return d_hash; }

  /// Operator of an application; literal text of a constant; name of a
  /// symbol or variable; binder of a quantifier.
  const Identifier& op() const { return d_op; }
  const std::string& name() const { return d_op.name; }
  const std::vector<TermPtr>& args() const { return d_args; }
  /// Body of a quantifier or annotation.
  const TermPtr& body() const { return d_args.front(); }
  const std::vector<SortedVar>& vars() const { return d_vars; }
  const std::vector<Attribute>& attributes() const { return d_attributes; }

  bool is_app(std::string_view name) const
  {
    return d_kind == TermKind::application && d_op.name == name
           && d_op.indices.empty() && !d_op.qualifier;
  }
  bool is_leaf() const { return d_args.empty(); }

 private:
  TermKind d_kind;
  Identifier d_op;
  Sort d_sort;
  std::vector<TermPtr> d_args;
  std::vector<SortedVar> d_vars;
  std::vector<Attribute> d_attributes;
  std::size_t d_depth;
  std::size_t d_size;
  std::size_t d_hash;
};

/** Structural equality. */
bool operator==(const Term& a, const Term& b);

/** Hash/equality functors for containers keyed by term structure. */
struct TermHash
{
  std::size_t operator()(const TermPtr& t) const { return t->hash(); }
};
struct TermEqual
{
  bool operator()(const TermPtr& a, const TermPtr& b) const
  {
    return a == b || *a == *b;
  }
};

/** Recompute depth from scratch, ignoring the cached value. */
std::size_t recompute_depth(const Term& t);

TermPtr make_true();
TermPtr make_false();
TermPtr make_not(TermPtr t);
TermPtr make_and(TermPtr a, TermPtr b);
TermPtr make_and(std::vector<TermPtr> conjuncts);

/** SMT-LIB rendering of a term on a single line. */
std::string to_string(const Term& t);
std::string to_string(const Identifier& id);

}  // namespace storm::smtlib
