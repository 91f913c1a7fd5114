#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace storm::smtlib {

/**
 * Untyped S-expression as produced by the SMT-LIB lexer. Symbols keep their
 * unquoted content; string literals keep their surrounding quotes and escapes
 * so that they print back verbatim.
 */
struct SExpr
{
  enum class Kind
  {
    symbol,
    keyword,
    numeral,
    decimal,
    hexadecimal,
    binary,
    string,
    list,
  };

  Kind kind = Kind::list;
  std::string text;
  std::vector<SExpr> children;
  std::size_t line = 0;
  std::size_t column = 0;
  /** Symbol was written as |...|. */
  bool quoted = false;

  bool is_list() const { return kind == Kind::list; }
  bool is_symbol() const { return kind == Kind::symbol; }
  bool is_symbol(std::string_view s) const
  {
    return kind == Kind::symbol && text == s;
  }
  bool is_atom() const { return kind != Kind::list; }
  std::size_t size() const { return children.size(); }
  const SExpr& operator[](std::size_t i) const { return children[i]; }
  /** Number of nodes in the tree. */
  std::size_t node_count() const;
};

/** Parse every top-level S-expression of text. Throws ParseError. */
std::vector<SExpr> read_sexprs(std::string_view text);

/** Canonical single-line rendering. */
std::string to_string(const SExpr& e);

/** Render a symbol, adding |...| quotes when it is not a simple symbol. */
std::string quote_symbol(std::string_view name);

bool is_simple_symbol(std::string_view name);

}  // namespace storm::smtlib
