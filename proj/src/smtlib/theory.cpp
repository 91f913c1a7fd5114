#include "theory.hpp"

#include <charconv>
#include <limits>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "storm/error.hpp"

namespace storm::smtlib::detail {

namespace {

[[noreturn]] void
sort_error(const Identifier& op, const std::string& msg)
{
  throw SortError("'" + to_string(op) + "': " + msg);
}

std::uint64_t
index_value(const Identifier& op, std::size_t i)
{
  if (i >= op.indices.size()) sort_error(op, "missing index");
  const std::string& s = op.indices[i];
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
  {
    sort_error(op, "index must be a numeral");
  }
  return v;
}

void
expect_arity(const Identifier& op,
             std::span<const TermPtr> args,
             std::size_t min,
             std::size_t max)
{
  if (args.size() < min || args.size() > max)
  {
    sort_error(op, "wrong number of arguments (" + std::to_string(args.size())
                       + ")");
  }
}

void
expect_all(const Identifier& op,
           std::span<const TermPtr> args,
           const Sort& sort)
{
  for (const auto& a : args)
  {
    if (!(a->sort() == sort))
    {
      sort_error(op, "expected " + to_string(sort) + " argument, got "
                         + to_string(a->sort()));
    }
  }
}

Sort
numeric_result(const Identifier& op, std::span<const TermPtr> args)
{
  bool real = false;
  for (const auto& a : args)
  {
    if (!a->sort().is_numeric())
    {
      sort_error(op, "expected numeric argument, got " + to_string(a->sort()));
    }
    real = real || a->sort().is_real();
  }
  return real ? Sort::real() : Sort::integer();
}

std::uint64_t
same_bitvec(const Identifier& op, std::span<const TermPtr> args)
{
  if (args.empty()) sort_error(op, "missing arguments");
  if (!args[0]->sort().is_bitvec()) sort_error(op, "expected bitvector");
  for (const auto& a : args)
  {
    if (!(a->sort() == args[0]->sort()))
    {
      sort_error(op, "bitvector widths differ");
    }
  }
  return args[0]->sort().width();
}

enum class Rule
{
  bool_unary,
  bool_nary,
  bool_chain,
  equality,
  ite,
  arith_nary,
  arith_minus,
  arith_div_real,
  arith_int_binary,
  arith_int_unary,
  arith_compare,
  to_real,
  to_int,
  is_int,
  bv_unary,
  bv_binary,
  bv_nary,
  bv_compare,
  bv_comp,
  bv_concat,
  bv_to_int,
  str_concat,
  str_len,
  str_compare,
  str_at,
  str_substr,
  str_predicate,
  str_indexof,
  str_replace,
  str_replace_re,
  str_is_digit,
  str_to_int,
  str_from_int,
  str_in_re,
  str_to_re,
  re_nary,
  re_unary,
  re_binary,
  re_range,
  re_const,
  re_loop_legacy,
  select,
  store,
};

const std::unordered_map<std::string, Rule>&
rules()
{
  static const std::unordered_map<std::string, Rule> table = {
      {"not", Rule::bool_unary},
      {"and", Rule::bool_nary},
      {"or", Rule::bool_nary},
      {"xor", Rule::bool_chain},
      {"=>", Rule::bool_chain},
      {"=", Rule::equality},
      {"distinct", Rule::equality},
      {"ite", Rule::ite},
      {"+", Rule::arith_nary},
      {"*", Rule::arith_nary},
      {"-", Rule::arith_minus},
      {"/", Rule::arith_div_real},
      {"div", Rule::arith_int_binary},
      {"mod", Rule::arith_int_binary},
      {"rem", Rule::arith_int_binary},
      {"abs", Rule::arith_int_unary},
      {"<=", Rule::arith_compare},
      {"<", Rule::arith_compare},
      {">=", Rule::arith_compare},
      {">", Rule::arith_compare},
      {"to_real", Rule::to_real},
      {"to_int", Rule::to_int},
      {"is_int", Rule::is_int},
      {"bvnot", Rule::bv_unary},
      {"bvneg", Rule::bv_unary},
      {"bvand", Rule::bv_nary},
      {"bvor", Rule::bv_nary},
      {"bvxor", Rule::bv_nary},
      {"bvadd", Rule::bv_nary},
      {"bvmul", Rule::bv_nary},
      {"bvsub", Rule::bv_binary},
      {"bvnand", Rule::bv_binary},
      {"bvnor", Rule::bv_binary},
      {"bvxnor", Rule::bv_binary},
      {"bvudiv", Rule::bv_binary},
      {"bvurem", Rule::bv_binary},
      {"bvsdiv", Rule::bv_binary},
      {"bvsrem", Rule::bv_binary},
      {"bvsmod", Rule::bv_binary},
      {"bvshl", Rule::bv_binary},
      {"bvlshr", Rule::bv_binary},
      {"bvashr", Rule::bv_binary},
      {"bvult", Rule::bv_compare},
      {"bvule", Rule::bv_compare},
      {"bvugt", Rule::bv_compare},
      {"bvuge", Rule::bv_compare},
      {"bvslt", Rule::bv_compare},
      {"bvsle", Rule::bv_compare},
      {"bvsgt", Rule::bv_compare},
      {"bvsge", Rule::bv_compare},
      {"bvcomp", Rule::bv_comp},
      {"concat", Rule::bv_concat},
      {"bv2nat", Rule::bv_to_int},
      {"bv2int", Rule::bv_to_int},
      {"str.++", Rule::str_concat},
      {"str.len", Rule::str_len},
      {"str.<", Rule::str_compare},
      {"str.<=", Rule::str_compare},
      {"str.at", Rule::str_at},
      {"str.substr", Rule::str_substr},
      {"str.prefixof", Rule::str_predicate},
      {"str.suffixof", Rule::str_predicate},
      {"str.contains", Rule::str_predicate},
      {"str.indexof", Rule::str_indexof},
      {"str.replace", Rule::str_replace},
      {"str.replace_all", Rule::str_replace},
      {"str.replace_re", Rule::str_replace_re},
      {"str.replace_re_all", Rule::str_replace_re},
      {"str.is_digit", Rule::str_is_digit},
      {"str.to_code", Rule::str_to_int},
      {"str.to_int", Rule::str_to_int},
      {"str.to.int", Rule::str_to_int},
      {"str.from_code", Rule::str_from_int},
      {"str.from_int", Rule::str_from_int},
      {"int.to.str", Rule::str_from_int},
      {"str.in_re", Rule::str_in_re},
      {"str.in.re", Rule::str_in_re},
      {"str.to_re", Rule::str_to_re},
      {"str.to.re", Rule::str_to_re},
      {"re.++", Rule::re_nary},
      {"re.union", Rule::re_nary},
      {"re.inter", Rule::re_nary},
      {"re.*", Rule::re_unary},
      {"re.+", Rule::re_unary},
      {"re.opt", Rule::re_unary},
      {"re.comp", Rule::re_unary},
      {"re.diff", Rule::re_binary},
      {"re.range", Rule::re_range},
      {"re.none", Rule::re_const},
      {"re.all", Rule::re_const},
      {"re.allchar", Rule::re_const},
      {"re.nostr", Rule::re_const},
      {"re.loop", Rule::re_loop_legacy},
      {"select", Rule::select},
      {"store", Rule::store},
  };
  return table;
}

std::optional<Sort>
indexed_sort(const Identifier& op, std::span<const TermPtr> args)
{
  const std::string& n = op.name;
  if (n == "extract")
  {
    expect_arity(op, args, 1, 1);
    std::uint64_t w = same_bitvec(op, args);
    std::uint64_t hi = index_value(op, 0), lo = index_value(op, 1);
    if (!(hi < w && lo <= hi)) sort_error(op, "extract bounds out of range");
    return Sort::bitvec(hi - lo + 1);
  }
  if (n == "zero_extend" || n == "sign_extend")
  {
    expect_arity(op, args, 1, 1);
    return Sort::bitvec(same_bitvec(op, args) + index_value(op, 0));
  }
  if (n == "repeat")
  {
    expect_arity(op, args, 1, 1);
    std::uint64_t k = index_value(op, 0);
    if (k == 0) sort_error(op, "repeat count must be positive");
    return Sort::bitvec(same_bitvec(op, args) * k);
  }
  if (n == "rotate_left" || n == "rotate_right")
  {
    expect_arity(op, args, 1, 1);
    index_value(op, 0);
    return Sort::bitvec(same_bitvec(op, args));
  }
  if (n == "int2bv" || n == "nat2bv")
  {
    expect_arity(op, args, 1, 1);
    expect_all(op, args, Sort::integer());
    std::uint64_t w = index_value(op, 0);
    if (w == 0) sort_error(op, "bitvector width must be positive");
    return Sort::bitvec(w);
  }
  if (n == "re.loop")
  {
    expect_arity(op, args, 1, 1);
    expect_all(op, args, Sort::reglan());
    index_value(op, 0);
    if (op.indices.size() > 1) index_value(op, 1);
    return Sort::reglan();
  }
  if (n == "re.^")
  {
    expect_arity(op, args, 1, 1);
    expect_all(op, args, Sort::reglan());
    index_value(op, 0);
    return Sort::reglan();
  }
  return std::nullopt;
}

}  // namespace

bool
compatible(const Sort& a, const Sort& b)
{
  return a == b || (a.is_numeric() && b.is_numeric());
}

std::optional<Sort>
theory_sort(const Identifier& op,
            std::span<const TermPtr> args,
            const Signature& sig)
{
  if (op.qualifier)
  {
    // ((as const (Array I E)) e)
    if (op.name == "const" && op.indices.empty())
    {
      const Sort& s = *op.qualifier;
      if (!s.is_array()) sort_error(op, "const requires an array sort");
      expect_arity(op, args, 1, 1);
      if (!compatible(args[0]->sort(), s.args.back()))
      {
        sort_error(op, "element sort mismatch");
      }
      return s;
    }
    return std::nullopt;
  }
  if (!op.indices.empty())
  {
    if (op.name == "is")
    {
      expect_arity(op, args, 1, 1);
      const Sort* dt = sig.constructor(op.indices[0]);
      if (!dt) sort_error(op, "unknown constructor");
      if (!(args[0]->sort() == *dt)) sort_error(op, "tester sort mismatch");
      return Sort::boolean();
    }
    return indexed_sort(op, args);
  }

  // Datatype constructors, selectors and legacy is-C testers.
  if (const Sort* dt = sig.constructor(op.name))
  {
    const DatatypeDecl* decl = sig.datatype(dt->name);
    for (const auto& c : decl->constructors)
    {
      if (c.name != op.name) continue;
      expect_arity(op, args, c.selectors.size(), c.selectors.size());
      for (std::size_t i = 0; i < args.size(); ++i)
      {
        if (!compatible(args[i]->sort(), c.selectors[i].sort))
        {
          sort_error(op, "constructor argument sort mismatch");
        }
      }
    }
    return *dt;
  }
  if (const auto* sel = sig.selector(op.name))
  {
    expect_arity(op, args, 1, 1);
    if (!(args[0]->sort() == sel->first)) sort_error(op, "selector sort mismatch");
    return sel->second;
  }
  if (op.name.rfind("is-", 0) == 0 && sig.constructor(op.name.substr(3)))
  {
    expect_arity(op, args, 1, 1);
    if (!(args[0]->sort() == *sig.constructor(op.name.substr(3))))
    {
      sort_error(op, "tester sort mismatch");
    }
    return Sort::boolean();
  }

  auto it = rules().find(op.name);
  if (it == rules().end()) return std::nullopt;

  const auto none = std::numeric_limits<std::size_t>::max();
  switch (it->second)
  {
    case Rule::bool_unary:
      expect_arity(op, args, 1, 1);
      expect_all(op, args, Sort::boolean());
      return Sort::boolean();
    case Rule::bool_nary:
      expect_arity(op, args, 1, none);
      expect_all(op, args, Sort::boolean());
      return Sort::boolean();
    case Rule::bool_chain:
      expect_arity(op, args, 2, none);
      expect_all(op, args, Sort::boolean());
      return Sort::boolean();
    case Rule::equality:
      expect_arity(op, args, 2, none);
      for (const auto& a : args)
      {
        if (!compatible(a->sort(), args[0]->sort()))
        {
          sort_error(op, "arguments have different sorts ("
                             + to_string(args[0]->sort()) + " vs "
                             + to_string(a->sort()) + ")");
        }
      }
      return Sort::boolean();
    case Rule::ite:
      expect_arity(op, args, 3, 3);
      if (!args[0]->sort().is_bool()) sort_error(op, "condition must be Bool");
      if (!compatible(args[1]->sort(), args[2]->sort()))
      {
        sort_error(op, "branches have different sorts");
      }
      if (args[1]->sort().is_numeric() && args[2]->sort().is_numeric())
      {
        return numeric_result(op, args.subspan(1));
      }
      return args[1]->sort();
    case Rule::arith_nary:
      expect_arity(op, args, 2, none);
      return numeric_result(op, args);
    case Rule::arith_minus:
      expect_arity(op, args, 1, none);
      return numeric_result(op, args);
    case Rule::arith_div_real:
      expect_arity(op, args, 2, none);
      numeric_result(op, args);
      return Sort::real();
    case Rule::arith_int_binary:
      expect_arity(op, args, 2, none);
      expect_all(op, args, Sort::integer());
      return Sort::integer();
    case Rule::arith_int_unary:
      expect_arity(op, args, 1, 1);
      return numeric_result(op, args);
    case Rule::arith_compare:
      expect_arity(op, args, 2, none);
      numeric_result(op, args);
      return Sort::boolean();
    case Rule::to_real:
      expect_arity(op, args, 1, 1);
      numeric_result(op, args);
      return Sort::real();
    case Rule::to_int:
      expect_arity(op, args, 1, 1);
      numeric_result(op, args);
      return Sort::integer();
    case Rule::is_int:
      expect_arity(op, args, 1, 1);
      numeric_result(op, args);
      return Sort::boolean();
    case Rule::bv_unary:
      expect_arity(op, args, 1, 1);
      return Sort::bitvec(same_bitvec(op, args));
    case Rule::bv_binary:
      expect_arity(op, args, 2, 2);
      return Sort::bitvec(same_bitvec(op, args));
    case Rule::bv_nary:
      expect_arity(op, args, 2, none);
      return Sort::bitvec(same_bitvec(op, args));
    case Rule::bv_compare:
      expect_arity(op, args, 2, 2);
      same_bitvec(op, args);
      return Sort::boolean();
    case Rule::bv_comp:
      expect_arity(op, args, 2, 2);
      same_bitvec(op, args);
      return Sort::bitvec(1);
    case Rule::bv_concat:
    {
      expect_arity(op, args, 2, none);
      std::uint64_t w = 0;
      for (const auto& a : args)
      {
        if (!a->sort().is_bitvec()) sort_error(op, "expected bitvector");
        w += a->sort().width();
      }
      return Sort::bitvec(w);
    }
    case Rule::bv_to_int:
      expect_arity(op, args, 1, 1);
      same_bitvec(op, args);
      return Sort::integer();
    case Rule::str_concat:
      expect_arity(op, args, 2, none);
      expect_all(op, args, Sort::string());
      return Sort::string();
    case Rule::str_len:
      expect_arity(op, args, 1, 1);
      expect_all(op, args, Sort::string());
      return Sort::integer();
    case Rule::str_compare:
      expect_arity(op, args, 2, 2);
      expect_all(op, args, Sort::string());
      return Sort::boolean();
    case Rule::str_at:
      expect_arity(op, args, 2, 2);
      expect_all(op, args.first(1), Sort::string());
      expect_all(op, args.subspan(1), Sort::integer());
      return Sort::string();
    case Rule::str_substr:
      expect_arity(op, args, 3, 3);
      expect_all(op, args.first(1), Sort::string());
      expect_all(op, args.subspan(1), Sort::integer());
      return Sort::string();
    case Rule::str_predicate:
      expect_arity(op, args, 2, 2);
      expect_all(op, args, Sort::string());
      return Sort::boolean();
    case Rule::str_indexof:
      expect_arity(op, args, 3, 3);
      expect_all(op, args.first(2), Sort::string());
      expect_all(op, args.subspan(2), Sort::integer());
      return Sort::integer();
    case Rule::str_replace:
      expect_arity(op, args, 3, 3);
      expect_all(op, args, Sort::string());
      return Sort::string();
    case Rule::str_replace_re:
      expect_arity(op, args, 3, 3);
      expect_all(op, args.first(1), Sort::string());
      expect_all(op, args.subspan(1, 1), Sort::reglan());
      expect_all(op, args.subspan(2), Sort::string());
      return Sort::string();
    case Rule::str_is_digit:
      expect_arity(op, args, 1, 1);
      expect_all(op, args, Sort::string());
      return Sort::boolean();
    case Rule::str_to_int:
      expect_arity(op, args, 1, 1);
      expect_all(op, args, Sort::string());
      return Sort::integer();
    case Rule::str_from_int:
      expect_arity(op, args, 1, 1);
      expect_all(op, args, Sort::integer());
      return Sort::string();
    case Rule::str_in_re:
      expect_arity(op, args, 2, 2);
      expect_all(op, args.first(1), Sort::string());
      expect_all(op, args.subspan(1), Sort::reglan());
      return Sort::boolean();
    case Rule::str_to_re:
      expect_arity(op, args, 1, 1);
      expect_all(op, args, Sort::string());
      return Sort::reglan();
    case Rule::re_nary:
      expect_arity(op, args, 1, none);
      expect_all(op, args, Sort::reglan());
      return Sort::reglan();
    case Rule::re_unary:
      expect_arity(op, args, 1, 1);
      expect_all(op, args, Sort::reglan());
      return Sort::reglan();
    case Rule::re_binary:
      expect_arity(op, args, 2, 2);
      expect_all(op, args, Sort::reglan());
      return Sort::reglan();
    case Rule::re_range:
      expect_arity(op, args, 2, 2);
      expect_all(op, args, Sort::string());
      return Sort::reglan();
    case Rule::re_const:
      expect_arity(op, args, 0, 0);
      return Sort::reglan();
    case Rule::re_loop_legacy:
      expect_arity(op, args, 2, 3);
      expect_all(op, args.first(1), Sort::reglan());
      expect_all(op, args.subspan(1), Sort::integer());
      return Sort::reglan();
    case Rule::select:
    {
      if (args.empty() || !args[0]->sort().is_array())
      {
        sort_error(op, "first argument must be an array");
      }
      const Sort& a = args[0]->sort();
      expect_arity(op, args, a.args.size(), a.args.size());
      for (std::size_t i = 1; i < args.size(); ++i)
      {
        if (!compatible(args[i]->sort(), a.args[i - 1]))
        {
          sort_error(op, "index sort mismatch");
        }
      }
      return a.args.back();
    }
    case Rule::store:
    {
      if (args.empty() || !args[0]->sort().is_array())
      {
        sort_error(op, "first argument must be an array");
      }
      const Sort& a = args[0]->sort();
      expect_arity(op, args, a.args.size() + 1, a.args.size() + 1);
      for (std::size_t i = 1; i < args.size(); ++i)
      {
        if (!compatible(args[i]->sort(), a.args[i - 1]))
        {
          sort_error(op, "store argument sort mismatch");
        }
      }
      return a;
    }
  }
  return std::nullopt;
}

}  // namespace storm::smtlib::detail
