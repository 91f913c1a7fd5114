#include "storm/smtlib/parser.hpp"

#include <charconv>
#include <map>

#include "storm/error.hpp"
#include "storm/smtlib/term_ops.hpp"
#include "theory.hpp"

namespace storm::smtlib {

namespace {

std::string
where(const SExpr& e)
{
  return std::to_string(e.line) + ":" + std::to_string(e.column) + ": ";
}

[[noreturn]] void
syntax_error(const SExpr& e, const std::string& msg)
{
  throw ParseError(e.line, e.column, msg);
}

std::uint64_t
numeral(const SExpr& e)
{
  if (e.kind != SExpr::Kind::numeral) syntax_error(e, "expected numeral");
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(e.text.data(), e.text.data() + e.text.size(), v);
  if (ec != std::errc()) syntax_error(e, "numeral out of range");
  return v;
}

const std::string&
symbol_text(const SExpr& e)
{
  if (!e.is_symbol()) syntax_error(e, "expected symbol");
  return e.text;
}

bool
is_fp_sort_name(const std::string& n)
{
  return n == "FloatingPoint" || n == "RoundingMode" || n == "Float16"
         || n == "Float32" || n == "Float64" || n == "Float128";
}

class TermParser
{
 public:
  TermParser(const Signature& sig, std::span<const SortedVar> bound)
      : d_sig(sig)
  {
    for (const auto& v : bound)
    {
      d_scope.emplace_back(v.name, Term::variable(v.name, v.sort));
    }
  }

  TermPtr parse(const SExpr& e)
  {
    if (e.is_atom()) return parse_atom(e);
    if (e.size() == 0) syntax_error(e, "empty term");
    const SExpr& head = e[0];
    if (head.is_symbol() && !head.quoted)
    {
      const std::string& h = head.text;
      if (h == "_") return parse_indexed_constant(e);
      if (h == "as") return parse_qualified_constant(e);
      if (h == "let") return parse_let(e);
      if (h == "forall" || h == "exists" || h == "lambda")
      {
        return parse_binder(e);
      }
      if (h == "!") return parse_annotation(e);
      if (h == "match")
      {
        throw UnsupportedError(where(e) + "match expressions are not supported");
      }
    }
    return parse_application(e);
  }

 private:
  const TermPtr* lookup_scope(const std::string& name) const
  {
    for (auto it = d_scope.rbegin(); it != d_scope.rend(); ++it)
    {
      if (it->first == name) return &it->second;
    }
    return nullptr;
  }

  TermPtr parse_atom(const SExpr& e)
  {
    switch (e.kind)
    {
      case SExpr::Kind::numeral:
        return Term::constant(e.text,
                              d_sig.numerals_are_real() ? Sort::real()
                                                        : Sort::integer());
      case SExpr::Kind::decimal: return Term::constant(e.text, Sort::real());
      case SExpr::Kind::hexadecimal:
        return Term::constant(e.text, Sort::bitvec(4 * (e.text.size() - 2)));
      case SExpr::Kind::binary:
        return Term::constant(e.text, Sort::bitvec(e.text.size() - 2));
      case SExpr::Kind::string: return Term::constant(e.text, Sort::string());
      case SExpr::Kind::keyword: syntax_error(e, "unexpected keyword");
      case SExpr::Kind::symbol: return parse_symbol(e);
      case SExpr::Kind::list: break;
    }
    syntax_error(e, "unexpected expression");
  }

  TermPtr parse_symbol(const SExpr& e)
  {
    const std::string& name = e.text;
    if (const TermPtr* t = lookup_scope(name)) return *t;
    if (!e.quoted && (name == "true" || name == "false"))
    {
      return name == "true" ? make_true() : make_false();
    }
    if (const FunctionSig* f = d_sig.function(name))
    {
      if (!f->params.empty())
      {
        throw SortError(where(e) + "function '" + name
                        + "' used without arguments");
      }
      return Term::symbol(name, f->result);
    }
    if (const Macro* m = d_sig.macro(name))
    {
      if (!m->params.empty())
      {
        throw SortError(where(e) + "function '" + name
                        + "' used without arguments");
      }
      return m->body;
    }
    return build_application(e, Identifier{name, {}, {}}, {});
  }

  Identifier parse_identifier(const SExpr& e)
  {
    if (e.is_symbol()) return Identifier{e.text, {}, {}};
    if (e.is_list() && e.size() >= 3 && e[0].is_symbol("_"))
    {
      Identifier id{symbol_text(e[1]), {}, {}};
      for (std::size_t i = 2; i < e.size(); ++i)
      {
        if (!e[i].is_atom() || e[i].kind == SExpr::Kind::string)
        {
          syntax_error(e[i], "malformed index");
        }
        id.indices.push_back(e[i].is_symbol() ? quote_symbol(e[i].text)
                                              : e[i].text);
      }
      return id;
    }
    if (e.is_list() && e.size() == 3 && e[0].is_symbol("as"))
    {
      Identifier id = parse_identifier(e[1]);
      id.qualifier = parse_sort(e[2], d_sig);
      return id;
    }
    syntax_error(e, "malformed identifier");
  }

  TermPtr parse_indexed_constant(const SExpr& e)
  {
    Identifier id = parse_identifier(e);
    if (id.name.size() > 2 && id.name.rfind("bv", 0) == 0
        && id.name.find_first_not_of("0123456789", 2) == std::string::npos
        && id.indices.size() == 1)
    {
      std::uint64_t w = 0;
      std::from_chars(id.indices[0].data(),
                      id.indices[0].data() + id.indices[0].size(),
                      w);
      if (w == 0) throw SortError(where(e) + "bitvector width must be positive");
      return Term::constant(to_string(e), Sort::bitvec(w));
    }
    if (id.name == "as-array" && id.indices.size() == 1)
    {
      const FunctionSig* f = d_sig.function(id.indices[0]);
      if (!f || f->params.empty())
      {
        throw SortError(where(e) + "as-array of unknown function");
      }
      Sort s;
      s.name = "Array";
      s.args = f->params;
      s.args.push_back(f->result);
      return Term::app(id, s, {});
    }
    return build_application(e, id, {});
  }

  TermPtr parse_qualified_constant(const SExpr& e)
  {
    if (e.size() != 3) syntax_error(e, "malformed qualified identifier");
    Sort s = parse_sort(e[2], d_sig);
    TermPtr inner;
    if (e[1].is_symbol() && e[1].text != "const")
    {
      inner = parse(e[1]);
    }
    else
    {
      throw UnsupportedError(where(e) + "qualified identifier '" + to_string(e)
                             + "'");
    }
    if (!(inner->sort() == s))
    {
      throw SortError(where(e) + "qualified identifier sort mismatch");
    }
    return inner;
  }

  TermPtr parse_let(const SExpr& e)
  {
    if (e.size() != 3 || !e[1].is_list()) syntax_error(e, "malformed let");
    std::vector<std::pair<std::string, TermPtr>> bindings;
    for (const auto& b : e[1].children)
    {
      if (!b.is_list() || b.size() != 2) syntax_error(b, "malformed binding");
      bindings.emplace_back(symbol_text(b[0]), parse(b[1]));
    }
    std::size_t mark = d_scope.size();
    for (auto& b : bindings) d_scope.push_back(std::move(b));
    TermPtr body = parse(e[2]);
    d_scope.resize(mark);
    return body;
  }

  std::vector<SortedVar> parse_sorted_vars(const SExpr& e)
  {
    if (!e.is_list()) syntax_error(e, "expected sorted variable list");
    std::vector<SortedVar> vars;
    for (const auto& v : e.children)
    {
      if (!v.is_list() || v.size() != 2) syntax_error(v, "malformed variable");
      vars.push_back({symbol_text(v[0]), parse_sort(v[1], d_sig)});
    }
    return vars;
  }

  TermPtr parse_binder(const SExpr& e)
  {
    if (e.size() != 3) syntax_error(e, "malformed binder");
    const std::string& binder = e[0].text;
    std::vector<SortedVar> vars = parse_sorted_vars(e[1]);
    if (vars.empty()) syntax_error(e, "binder without variables");
    std::size_t mark = d_scope.size();
    for (const auto& v : vars)
    {
      d_scope.emplace_back(v.name, Term::variable(v.name, v.sort));
    }
    TermPtr body = parse(e[2]);
    d_scope.resize(mark);
    Sort sort = Sort::boolean();
    if (binder == "lambda")
    {
      sort.name = "Array";
      for (const auto& v : vars) sort.args.push_back(v.sort);
      sort.args.push_back(body->sort());
    }
    else if (!body->sort().is_bool())
    {
      throw SortError(where(e) + "quantifier body must be Bool");
    }
    return Term::quantifier(binder, std::move(vars), std::move(body), sort);
  }

  TermPtr parse_annotation(const SExpr& e)
  {
    if (e.size() < 3) syntax_error(e, "annotation without attributes");
    TermPtr body = parse(e[1]);
    std::vector<Attribute> attrs;
    for (std::size_t i = 2; i < e.size(); ++i)
    {
      if (e[i].kind != SExpr::Kind::keyword) syntax_error(e[i], "expected keyword");
      Attribute a{e[i].text, {}};
      if (i + 1 < e.size() && e[i + 1].kind != SExpr::Kind::keyword)
      {
        a.value = to_string(e[++i]);
      }
      attrs.push_back(std::move(a));
    }
    return Term::annotated(std::move(body), std::move(attrs));
  }

  TermPtr parse_application(const SExpr& e)
  {
    if (e.size() < 2) syntax_error(e, "application without arguments");
    Identifier id = parse_identifier(e[0]);
    std::vector<TermPtr> args;
    args.reserve(e.size() - 1);
    for (std::size_t i = 1; i < e.size(); ++i) args.push_back(parse(e[i]));

    if (id.indices.empty() && !id.qualifier)
    {
      if (lookup_scope(id.name))
      {
        throw UnsupportedError(where(e) + "higher-order application of '"
                               + id.name + "'");
      }
      if (const Macro* m = d_sig.macro(id.name))
      {
        check_arguments(e, id.name, m->params, args);
        std::map<std::string, TermPtr> repl;
        for (std::size_t i = 0; i < args.size(); ++i)
        {
          repl[m->params[i].name] = args[i];
        }
        return instantiate(m->body, repl);
      }
      if (const FunctionSig* f = d_sig.function(id.name))
      {
        std::vector<SortedVar> params;
        for (const auto& p : f->params) params.push_back({"", p});
        check_arguments(e, id.name, params, args);
        return Term::app(std::move(id), f->result, std::move(args));
      }
    }
    return build_application(e, std::move(id), std::move(args));
  }

  void check_arguments(const SExpr& e,
                       const std::string& name,
                       const std::vector<SortedVar>& params,
                       const std::vector<TermPtr>& args)
  {
    if (params.size() != args.size())
    {
      throw SortError(where(e) + "'" + name + "' expects "
                      + std::to_string(params.size()) + " arguments");
    }
    for (std::size_t i = 0; i < args.size(); ++i)
    {
      if (!detail::compatible(params[i].sort, args[i]->sort()))
      {
        throw SortError(where(e) + "argument " + std::to_string(i + 1)
                        + " of '" + name + "' has sort "
                        + to_string(args[i]->sort()) + ", expected "
                        + to_string(params[i].sort));
      }
    }
  }

  TermPtr build_application(const SExpr& e,
                            Identifier id,
                            std::vector<TermPtr> args)
  {
    std::optional<Sort> sort;
    try
    {
      sort = detail::theory_sort(id, args, d_sig);
    }
    catch (const SortError& err)
    {
      throw SortError(where(e) + err.what());
    }
    if (!sort)
    {
      if (id.name.rfind("fp", 0) == 0 || id.name.rfind("to_fp", 0) == 0)
      {
        throw UnsupportedError(where(e) + "floating-point operator '"
                               + to_string(id) + "'");
      }
      throw UnsupportedError(where(e) + "unknown symbol '" + to_string(id)
                             + "'");
    }
    return Term::app(std::move(id), std::move(*sort), std::move(args));
  }

  const Signature& d_sig;
  std::vector<std::pair<std::string, TermPtr>> d_scope;
};

class ScriptParser
{
 public:
  explicit ScriptParser(const ParseOptions& options) : d_options(options) {}

  Script run(std::string_view text)
  {
    for (const auto& e : read_sexprs(text)) command(e);
    return Script(std::move(d_commands));
  }

 private:
  void command(const SExpr& e)
  {
    if (!e.is_list() || e.size() == 0 || !e[0].is_symbol())
    {
      syntax_error(e, "expected command");
    }
    const std::string& h = e[0].text;
    if (h == "set-logic")
    {
      expect_size(e, 2);
      if (d_sig.logic()) syntax_error(e, "set-logic given twice");
      d_sig.set_logic(symbol_text(e[1]));
      d_commands.push_back(Command::set_logic(e[1].text));
    }
    else if (h == "set-option" || h == "set-info")
    {
      if (e.size() < 2 || e.size() > 3 || e[1].kind != SExpr::Kind::keyword)
      {
        syntax_error(e, "malformed " + h);
      }
      std::string value = e.size() == 3 ? to_string(e[2]) : "";
      d_commands.push_back(h == "set-option"
                               ? Command::set_option(e[1].text, value)
                               : Command::set_info(e[1].text, value));
    }
    else if (h == "declare-sort")
    {
      if (e.size() != 2 && e.size() != 3) syntax_error(e, "malformed declare-sort");
      std::uint64_t arity = e.size() == 3 ? numeral(e[2]) : 0;
      d_sig.declare_sort(symbol_text(e[1]), arity);
      d_commands.push_back(Command::declare_sort(e[1].text, arity));
    }
    else if (h == "define-sort")
    {
      expect_size(e, 4);
      if (!e[2].is_list() || e[2].size() != 0)
      {
        throw UnsupportedError(where(e) + "parametric define-sort");
      }
      d_sig.define_sort(symbol_text(e[1]), parse_sort(e[3], d_sig));
    }
    else if (h == "declare-const")
    {
      expect_size(e, 3);
      Sort s = parse_sort(e[2], d_sig);
      d_sig.declare_fun(symbol_text(e[1]), {{}, s});
      d_commands.push_back(Command::declare_const(e[1].text, s));
    }
    else if (h == "declare-fun")
    {
      expect_size(e, 4);
      if (!e[2].is_list()) syntax_error(e[2], "expected parameter sorts");
      std::vector<Sort> params;
      for (const auto& p : e[2].children) params.push_back(parse_sort(p, d_sig));
      Sort s = parse_sort(e[3], d_sig);
      d_sig.declare_fun(symbol_text(e[1]), {params, s});
      d_commands.push_back(Command::declare_fun(e[1].text, params, s));
    }
    else if (h == "define-fun")
    {
      expect_size(e, 5);
      if (!e[2].is_list()) syntax_error(e[2], "expected parameters");
      std::vector<SortedVar> params;
      for (const auto& p : e[2].children)
      {
        if (!p.is_list() || p.size() != 2) syntax_error(p, "malformed parameter");
        params.push_back({symbol_text(p[0]), parse_sort(p[1], d_sig)});
      }
      Sort s = parse_sort(e[3], d_sig);
      TermPtr body = TermParser(d_sig, params).parse(e[4]);
      if (!detail::compatible(body->sort(), s))
      {
        throw SortError(where(e) + "body of '" + e[1].text + "' has sort "
                        + to_string(body->sort()));
      }
      d_sig.define_macro(symbol_text(e[1]), {params, s, body});
    }
    else if (h == "declare-datatypes" || h == "declare-datatype")
    {
      declare_datatypes(e);
    }
    else if (h == "assert")
    {
      expect_size(e, 2);
      TermPtr t = TermParser(d_sig, {}).parse(e[1]);
      if (!t->sort().is_bool())
      {
        throw SortError(where(e) + "assertion of sort " + to_string(t->sort()));
      }
      double limit = d_options.expansion_cap
                     * static_cast<double>(e[1].node_count());
      if (static_cast<double>(t->size()) > limit)
      {
        throw UnsupportedError(where(e)
                               + "let/define-fun expansion exceeds size cap");
      }
      d_commands.push_back(Command::assertion(std::move(t)));
    }
    else if (h == "check-sat")
    {
      expect_size(e, 1);
      d_commands.push_back(Command::check_sat());
    }
    else if (h == "push" || h == "pop")
    {
      if (e.size() > 2) syntax_error(e, "malformed " + h);
      std::uint64_t n = e.size() == 2 ? numeral(e[1]) : 1;
      if (h == "push")
      {
        d_level += n;
        d_commands.push_back(Command::push(n));
      }
      else
      {
        if (n > d_level) syntax_error(e, "pop below the assertion stack base");
        d_level -= n;
        d_commands.push_back(Command::pop(n));
      }
    }
    else if (h == "get-model")
    {
      expect_size(e, 1);
      d_commands.push_back(Command::get_model());
    }
    else if (h == "exit")
    {
      expect_size(e, 1);
      d_commands.push_back(Command::exit());
    }
    else if (h == "define-fun-rec" || h == "define-funs-rec"
             || h == "declare-codatatypes" || h == "reset"
             || h == "reset-assertions" || h == "define-const")
    {
      throw UnsupportedError(where(e) + "command '" + h + "' is not supported");
    }
    else
    {
      d_commands.push_back(Command::passthrough(h, to_string(e)));
    }
  }

  void expect_size(const SExpr& e, std::size_t n)
  {
    if (e.size() != n) syntax_error(e, "malformed " + e[0].text);
  }

  Constructor parse_constructor(const SExpr& c, const Signature& scope)
  {
    if (c.is_symbol()) return {c.text, {}};
    if (!c.is_list() || c.size() == 0) syntax_error(c, "malformed constructor");
    Constructor ctor{symbol_text(c[0]), {}};
    for (std::size_t i = 1; i < c.size(); ++i)
    {
      const SExpr& s = c[i];
      if (!s.is_list() || s.size() != 2) syntax_error(s, "malformed selector");
      ctor.selectors.push_back({symbol_text(s[0]), parse_sort(s[1], scope)});
    }
    return ctor;
  }

  void declare_datatypes(const SExpr& e)
  {
    std::vector<std::string> names;
    std::vector<const SExpr*> bodies;
    std::vector<SExpr> legacy_bodies;
    if (e[0].text == "declare-datatype")
    {
      expect_size(e, 3);
      names.push_back(symbol_text(e[1]));
      bodies.push_back(&e[2]);
    }
    else
    {
      expect_size(e, 3);
      if (!e[1].is_list() || !e[2].is_list()) syntax_error(e, "malformed declare-datatypes");
      if (e[1].size() == 0)
      {
        // Legacy form: (declare-datatypes () ((D c1 c2 ...) ...)).
        for (const auto& d : e[2].children)
        {
          if (!d.is_list() || d.size() < 2) syntax_error(d, "malformed datatype");
          names.push_back(symbol_text(d[0]));
          SExpr body;
          body.children.assign(d.children.begin() + 1, d.children.end());
          legacy_bodies.push_back(std::move(body));
        }
        for (const auto& b : legacy_bodies) bodies.push_back(&b);
      }
      else
      {
        if (e[1].size() != e[2].size()) syntax_error(e, "datatype count mismatch");
        for (std::size_t i = 0; i < e[1].size(); ++i)
        {
          const SExpr& d = e[1][i];
          if (!d.is_list() || d.size() != 2) syntax_error(d, "malformed sort declaration");
          if (numeral(d[1]) != 0)
          {
            throw UnsupportedError(where(d) + "parametric datatypes");
          }
          names.push_back(symbol_text(d[0]));
          bodies.push_back(&e[2][i]);
        }
      }
    }
    Signature scope = d_sig;
    for (const auto& n : names) scope.declare_sort(n, 0);
    std::vector<DatatypeDecl> decls;
    for (std::size_t i = 0; i < names.size(); ++i)
    {
      const SExpr& body = *bodies[i];
      if (!body.is_list() || body.size() == 0) syntax_error(body, "datatype without constructors");
      if (body.size() > 0 && body[0].is_symbol("par"))
      {
        throw UnsupportedError(where(body) + "parametric datatypes");
      }
      DatatypeDecl d{names[i], {}};
      for (const auto& c : body.children)
      {
        d.constructors.push_back(parse_constructor(c, scope));
      }
      decls.push_back(std::move(d));
    }
    d_sig.declare_datatypes(decls);
    d_commands.push_back(Command::declare_datatypes(std::move(decls)));
  }

  ParseOptions d_options;
  Signature d_sig;
  std::vector<Command> d_commands;
  std::uint64_t d_level = 0;
};

}  // namespace

Sort
parse_sort(const SExpr& e, const Signature& sig)
{
  if (e.is_symbol())
  {
    const std::string& n = e.text;
    if (n == "Bool") return Sort::boolean();
    if (n == "Int") return Sort::integer();
    if (n == "Real") return Sort::real();
    if (n == "String") return Sort::string();
    if (n == "RegLan") return Sort::reglan();
    if (const Sort* alias = sig.sort_alias(n)) return *alias;
    if (sig.has_sort(n)) return Sort::named(n);
    if (is_fp_sort_name(n)) throw UnsupportedError(where(e) + "floating-point sorts");
    throw UnsupportedError(where(e) + "unknown sort '" + n + "'");
  }
  if (e.is_list() && e.size() >= 3 && e[0].is_symbol("_"))
  {
    const std::string& n = symbol_text(e[1]);
    if (n == "BitVec" && e.size() == 3)
    {
      std::uint64_t w = numeral(e[2]);
      if (w == 0) throw SortError(where(e) + "bitvector width must be positive");
      return Sort::bitvec(w);
    }
    if (is_fp_sort_name(n)) throw UnsupportedError(where(e) + "floating-point sorts");
    throw UnsupportedError(where(e) + "unknown indexed sort '" + to_string(e) + "'");
  }
  if (e.is_list() && e.size() >= 3 && e[0].is_symbol("Array"))
  {
    Sort s;
    s.name = "Array";
    for (std::size_t i = 1; i < e.size(); ++i) s.args.push_back(parse_sort(e[i], sig));
    return s;
  }
  if (e.is_list() && e.size() > 0 && e[0].is_symbol())
  {
    throw UnsupportedError(where(e) + "unsupported sort '" + to_string(e) + "'");
  }
  syntax_error(e, "malformed sort");
}

TermPtr
parse_term(const SExpr& e, const Signature& sig, std::span<const SortedVar> bound)
{
  return TermParser(sig, bound).parse(e);
}

TermPtr
parse_term(std::string_view text,
           const Signature& sig,
           std::span<const SortedVar> bound)
{
  auto exprs = read_sexprs(text);
  if (exprs.size() != 1) throw ParseError(1, 1, "expected exactly one term");
  return parse_term(exprs.front(), sig, bound);
}

Script
parse_script(std::string_view text, const ParseOptions& options)
{
  return ScriptParser(options).run(text);
}

}  // namespace storm::smtlib
