#include "storm/smtlib/term_ops.hpp"

#include <unordered_map>
#include <unordered_set>

#include "storm/error.hpp"

namespace storm::smtlib {

namespace {

using Memo = std::unordered_map<const Term*, TermPtr>;

TermPtr
rebuild(const TermPtr& t, std::vector<TermPtr> args, bool changed)
{
  if (!changed) return t;
  switch (t->kind())
  {
    case TermKind::application: return Term::app(t->op(), t->sort(), std::move(args));
    case TermKind::quantifier:
      return Term::quantifier(t->name(), t->vars(), std::move(args.front()), t->sort());
    case TermKind::annotation:
      return Term::annotated(std::move(args.front()), t->attributes());
    default: return t;
  }
}

class FreeVariables
{
 public:
  const std::set<std::string>& of(const Term& t)
  {
    auto it = d_memo.find(&t);
    if (it != d_memo.end()) return it->second;
    std::set<std::string> result;
    if (t.kind() == TermKind::variable)
    {
      result.insert(t.name());
    }
    else
    {
      for (const auto& a : t.args())
      {
        const auto& sub = of(*a);
        result.insert(sub.begin(), sub.end());
      }
      if (t.kind() == TermKind::quantifier)
      {
        for (const auto& v : t.vars()) result.erase(v.name);
      }
    }
    return d_memo.emplace(&t, std::move(result)).first->second;
  }

 private:
  std::unordered_map<const Term*, std::set<std::string>> d_memo;
};

class Instantiator
{
 public:
  TermPtr run(const TermPtr& t, const std::map<std::string, TermPtr>& repl)
  {
    Memo memo;
    return visit(t, repl, memo);
  }

 private:
  TermPtr visit(const TermPtr& t,
                const std::map<std::string, TermPtr>& repl,
                Memo& memo)
  {
    if (repl.empty()) return t;
    auto it = memo.find(t.get());
    if (it != memo.end()) return it->second;
    TermPtr result;
    if (t->kind() == TermKind::variable)
    {
      auto r = repl.find(t->name());
      result = r == repl.end() ? t : r->second;
    }
    else if (t->kind() == TermKind::quantifier)
    {
      result = visit_binder(t, repl);
    }
    else
    {
      std::vector<TermPtr> args;
      bool changed = false;
      for (const auto& a : t->args())
      {
        args.push_back(visit(a, repl, memo));
        changed = changed || args.back() != a;
      }
      result = rebuild(t, std::move(args), changed);
    }
    memo.emplace(t.get(), result);
    return result;
  }

  TermPtr visit_binder(const TermPtr& t, const std::map<std::string, TermPtr>& repl)
  {
    std::map<std::string, TermPtr> inner = repl;
    for (const auto& v : t->vars()) inner.erase(v.name);
    std::set<std::string> incoming;
    for (const auto& [name, value] : inner)
    {
      const auto& fv = d_free.of(*value);
      incoming.insert(fv.begin(), fv.end());
    }
    std::vector<SortedVar> vars = t->vars();
    bool renamed = false;
    for (auto& v : vars)
    {
      if (!incoming.count(v.name)) continue;
      std::string fresh;
      do
      {
        fresh = v.name + "!" + std::to_string(d_counter++);
      } while (incoming.count(fresh));
      inner[v.name] = Term::variable(fresh, v.sort);
      v.name = fresh;
      renamed = true;
    }
    Memo memo;
    TermPtr body = visit(t->body(), inner, memo);
    if (!renamed && body == t->body()) return t;
    return Term::quantifier(t->name(), std::move(vars), std::move(body), t->sort());
  }

  FreeVariables d_free;
  std::size_t d_counter = 0;
};

class Substituter
{
 public:
  explicit Substituter(const Valuation& values) : d_values(values)
  {
    FreeVariables fv;
    for (const auto& [name, value] : values.constants)
    {
      const auto& vs = fv.of(*value);
      d_incoming.insert(vs.begin(), vs.end());
    }
  }

  TermPtr visit(const TermPtr& t)
  {
    auto it = d_memo.find(t.get());
    if (it != d_memo.end()) return it->second;
    TermPtr result;
    if (t->kind() == TermKind::quantifier && captures(*t))
    {
      result = visit(rename_binders(t));
    }
    else if (t->kind() == TermKind::symbol)
    {
      auto c = d_values.constants.find(t->name());
      if (c == d_values.constants.end()) throw MissingBinding(t->name());
      result = c->second;
    }
    else
    {
      std::vector<TermPtr> args;
      bool changed = false;
      for (const auto& a : t->args())
      {
        args.push_back(visit(a));
        changed = changed || args.back() != a;
      }
      const FunctionValue* f = nullptr;
      if (t->kind() == TermKind::application && t->op().indices.empty()
          && !t->op().qualifier)
      {
        auto fit = d_values.functions.find(t->name());
        if (fit != d_values.functions.end()) f = &fit->second;
      }
      if (f)
      {
        std::map<std::string, TermPtr> repl;
        for (std::size_t i = 0; i < f->params.size() && i < args.size(); ++i)
        {
          repl[f->params[i].name] = args[i];
        }
        result = Instantiator().run(f->body, repl);
      }
      else
      {
        result = rebuild(t, std::move(args), changed);
      }
    }
    d_memo.emplace(t.get(), result);
    return result;
  }

 private:
  bool captures(const Term& q) const
  {
    for (const auto& v : q.vars())
      if (d_incoming.count(v.name)) return true;
    return false;
  }

  TermPtr rename_binders(const TermPtr& q)
  {
    std::map<std::string, TermPtr> repl;
    std::vector<SortedVar> vars = q->vars();
    for (auto& v : vars)
    {
      if (!d_incoming.count(v.name)) continue;
      std::string fresh;
      do
      {
        fresh = v.name + "!" + std::to_string(d_counter++);
      } while (d_incoming.count(fresh));
      repl[v.name] = Term::variable(fresh, v.sort);
      v.name = fresh;
    }
    auto body = Instantiator().run(q->body(), repl);
    auto renamed = Term::quantifier(q->name(), std::move(vars), std::move(body), q->sort());
    d_keep.push_back(renamed);
    return renamed;
  }

  const Valuation& d_values;
  Memo d_memo;
  std::set<std::string> d_incoming;
  std::size_t d_counter = 0;
  // memo keys are raw pointers; keep renamed binders alive
  std::vector<TermPtr> d_keep;
};

TermPtr
strip(const TermPtr& t, Memo& memo)
{
  auto it = memo.find(t.get());
  if (it != memo.end()) return it->second;
  TermPtr result;
  if (t->kind() == TermKind::annotation)
  {
    result = strip(t->body(), memo);
  }
  else
  {
    std::vector<TermPtr> args;
    bool changed = false;
    for (const auto& a : t->args())
    {
      args.push_back(strip(a, memo));
      changed = changed || args.back() != a;
    }
    result = rebuild(t, std::move(args), changed);
  }
  memo.emplace(t.get(), result);
  return result;
}

}  // namespace

TermPtr
substitute(const TermPtr& t, const Valuation& values)
{
  return Substituter(values).visit(t);
}

TermPtr
instantiate(const TermPtr& body, const std::map<std::string, TermPtr>& replacements)
{
  return Instantiator().run(body, replacements);
}

TermPtr
strip_annotations(const TermPtr& t)
{
  Memo memo;
  return strip(t, memo);
}

std::vector<TermPtr>
enumerate_predicates(const TermPtr& root)
{
  TermPtr t = strip_annotations(root);
  std::vector<TermPtr> result;
  std::unordered_set<TermPtr, TermHash, TermEqual> seen;
  FreeVariables free;
  std::vector<TermPtr> stack{t};
  while (!stack.empty())
  {
    TermPtr cur = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(cur).second) continue;
    if (cur->sort().is_bool() && free.of(*cur).empty()) result.push_back(cur);
    const auto& args = cur->args();
    for (auto it = args.rbegin(); it != args.rend(); ++it) stack.push_back(*it);
  }
  return result;
}

std::set<std::string>
free_symbols(const Term& t)
{
  std::set<std::string> result;
  std::unordered_set<const Term*> seen;
  std::vector<const Term*> stack{&t};
  while (!stack.empty())
  {
    const Term* cur = stack.back();
    stack.pop_back();
    if (!seen.insert(cur).second) continue;
    if (cur->kind() == TermKind::symbol) result.insert(cur->name());
    for (const auto& a : cur->args()) stack.push_back(a.get());
  }
  return result;
}

bool
mentions_symbol(const Term& t, const std::string& name)
{
  std::unordered_set<const Term*> seen;
  std::vector<const Term*> stack{&t};
  while (!stack.empty())
  {
    const Term* cur = stack.back();
    stack.pop_back();
    if (!seen.insert(cur).second) continue;
    if ((cur->kind() == TermKind::symbol || cur->kind() == TermKind::application)
        && cur->name() == name && cur->op().indices.empty())
    {
      return true;
    }
    for (const auto& a : cur->args()) stack.push_back(a.get());
  }
  return false;
}

std::set<std::string>
free_variables(const Term& t)
{
  FreeVariables fv;
  return fv.of(t);
}

}  // namespace storm::smtlib
