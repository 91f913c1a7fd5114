#include "storm/smtlib/term.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

#include "storm/smtlib/sexpr.hpp"

namespace storm::smtlib {

namespace {

std::size_t
combine(std::size_t seed, std::size_t v)
{
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t
hash_identifier(const Identifier& id)
{
  std::size_t h = std::hash<std::string>{}(id.name);
  for (const auto& i : id.indices) h = combine(h, std::hash<std::string>{}(i));
  if (id.qualifier) h = combine(h, hash_value(*id.qualifier));
  return h;
}

}  // namespace

Term::Term(Token,
           TermKind kind,
           Identifier op,
           Sort sort,
           std::vector<TermPtr> args,
           std::vector<SortedVar> vars,
           std::vector<Attribute> attributes)
    : d_kind(kind),
      d_op(std::move(op)),
      d_sort(std::move(sort)),
      d_args(std::move(args)),
      d_vars(std::move(vars)),
      d_attributes(std::move(attributes))
{
  std::size_t max_child = 0;
  d_size = 1;
  d_hash = combine(static_cast<std::size_t>(d_kind), hash_identifier(d_op));
  d_hash = combine(d_hash, hash_value(d_sort));
  for (const auto& a : d_args)
  {
    max_child = std::max(max_child, a->depth());
    d_size = a->size() > SIZE_MAX - d_size ? SIZE_MAX : d_size + a->size();
    d_hash = combine(d_hash, a->hash());
  }
  for (const auto& v : d_vars)
  {
    d_hash = combine(d_hash, std::hash<std::string>{}(v.name));
    d_hash = combine(d_hash, hash_value(v.sort));
  }
  for (const auto& at : d_attributes)
  {
    d_hash = combine(d_hash, std::hash<std::string>{}(at.keyword));
    d_hash = combine(d_hash, std::hash<std::string>{}(at.value));
  }
  if (d_kind == TermKind::annotation)
  {
    d_depth = max_child;
  }
  else
  {
    d_depth = 1 + max_child;
  }
}

TermPtr
Term::constant(std::string literal, Sort sort)
{
  return std::make_shared<const Term>(Token{},
                                      TermKind::constant,
                                      Identifier{std::move(literal), {}, {}},
                                      std::move(sort),
                                      std::vector<TermPtr>{},
                                      std::vector<SortedVar>{},
                                      std::vector<Attribute>{});
}

TermPtr
Term::symbol(std::string name, Sort sort)
{
  return std::make_shared<const Term>(Token{},
                                      TermKind::symbol,
                                      Identifier{std::move(name), {}, {}},
                                      std::move(sort),
                                      std::vector<TermPtr>{},
                                      std::vector<SortedVar>{},
                                      std::vector<Attribute>{});
}

TermPtr
Term::variable(std::string name, Sort sort)
{
  return std::make_shared<const Term>(Token{},
                                      TermKind::variable,
                                      Identifier{std::move(name), {}, {}},
                                      std::move(sort),
                                      std::vector<TermPtr>{},
                                      std::vector<SortedVar>{},
                                      std::vector<Attribute>{});
}

TermPtr
Term::app(Identifier op, Sort sort, std::vector<TermPtr> args)
{
  return std::make_shared<const Term>(Token{},
                                      TermKind::application,
                                      std::move(op),
                                      std::move(sort),
                                      std::move(args),
                                      std::vector<SortedVar>{},
                                      std::vector<Attribute>{});
}

TermPtr
Term::app(std::string op, Sort sort, std::vector<TermPtr> args)
{
  return app(Identifier{std::move(op), {}, {}}, std::move(sort), std::move(args));
}

TermPtr
Term::quantifier(std::string binder,
                 std::vector<SortedVar> vars,
                 TermPtr body,
                 Sort sort)
{
  return std::make_shared<const Term>(Token{},
                                      TermKind::quantifier,
                                      Identifier{std::move(binder), {}, {}},
                                      std::move(sort),
                                      std::vector<TermPtr>{std::move(body)},
                                      std::move(vars),
                                      std::vector<Attribute>{});
}

TermPtr
Term::annotated(TermPtr body, std::vector<Attribute> attributes)
{
  Sort sort = body->sort();
  return std::make_shared<const Term>(Token{},
                                      TermKind::annotation,
                                      Identifier{"!", {}, {}},
                                      std::move(sort),
                                      std::vector<TermPtr>{std::move(body)},
                                      std::vector<SortedVar>{},
                                      std::move(attributes));
}

bool
operator==(const Term& a, const Term& b)
{
  if (&a == &b) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()
      || a.args().size() != b.args().size())
  {
    return false;
  }
  if (!(a.op() == b.op()) || !(a.sort() == b.sort()) || a.vars() != b.vars()
      || a.attributes() != b.attributes())
  {
    return false;
  }
  for (std::size_t i = 0; i < a.args().size(); ++i)
  {
    const auto& x = a.args()[i];
    const auto& y = b.args()[i];
    if (x != y && !(*x == *y)) return false;
  }
  return true;
}

std::size_t
recompute_depth(const Term& t)
{
  std::size_t max_child = 0;
  for (const auto& a : t.args())
  {
    max_child = std::max(max_child, recompute_depth(*a));
  }
  return t.kind() == TermKind::annotation ? max_child : 1 + max_child;
}

TermPtr
make_true()
{
  static const TermPtr t = Term::constant("true", Sort::boolean());
  return t;
}

TermPtr
make_false()
{
  static const TermPtr f = Term::constant("false", Sort::boolean());
  return f;
}

TermPtr
make_not(TermPtr t)
{
  return Term::app("not", Sort::boolean(), {std::move(t)});
}

TermPtr
make_and(TermPtr a, TermPtr b)
{
  return Term::app("and", Sort::boolean(), {std::move(a), std::move(b)});
}

TermPtr
make_and(std::vector<TermPtr> conjuncts)
{
  if (conjuncts.empty()) return make_true();
  if (conjuncts.size() == 1) return conjuncts.front();
  return Term::app("and", Sort::boolean(), std::move(conjuncts));
}

std::string
to_string(const Identifier& id)
{
  std::string name = quote_symbol(id.name);
  if (!id.indices.empty())
  {
    name = "(_ " + name;
    for (const auto& i : id.indices) name += " " + i;
    name += ")";
  }
  if (id.qualifier)
  {
    name = "(as " + name + " " + to_string(*id.qualifier) + ")";
  }
  return name;
}

namespace {

void
render(const Term& t, std::string& out)
{
  switch (t.kind())
  {
    case TermKind::constant: out += t.name(); return;
    case TermKind::symbol:
    case TermKind::variable: out += quote_symbol(t.name()); return;
    case TermKind::application:
      if (t.args().empty())
      {
        out += to_string(t.op());
        return;
      }
      out += '(';
      out += to_string(t.op());
      for (const auto& a : t.args())
      {
        out += ' ';
        render(*a, out);
      }
      out += ')';
      return;
    case TermKind::quantifier:
      out += '(';
      out += t.name();
      out += " (";
      for (std::size_t i = 0; i < t.vars().size(); ++i)
      {
        if (i) out += ' ';
        out += '(';
        out += quote_symbol(t.vars()[i].name);
        out += ' ';
        out += to_string(t.vars()[i].sort);
        out += ')';
      }
      out += ") ";
      render(*t.body(), out);
      out += ')';
      return;
    case TermKind::annotation:
      out += "(! ";
      render(*t.body(), out);
      for (const auto& at : t.attributes())
      {
        out += ' ';
        out += at.keyword;
        if (!at.value.empty())
        {
          out += ' ';
          out += at.value;
        }
      }
      out += ')';
      return;
  }
}

}  // namespace

std::string
to_string(const Term& t)
{
  std::string out;
  render(t, out);
  return out;
}

}  // namespace storm::smtlib
