#include "storm/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "storm/error.hpp"
#include "storm/process.hpp"
#include "storm/smtlib/parser.hpp"
#include "storm/smtlib/printer.hpp"
#include "storm/smtlib/sexpr.hpp"
#include "storm/smtlib/signature.hpp"

namespace storm {

using smtlib::Command;
using smtlib::SExpr;
using smtlib::Signature;
using smtlib::Sort;
using smtlib::Term;
using smtlib::TermPtr;

namespace {

struct SessionLost
{
};
struct SessionTimeout
{
};

std::string
replace_all(std::string s, const std::string& from, const std::string& to)
{
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos)
  {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

std::string
strip_cr(std::string s)
{
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

std::vector<Verdict>
verdict_lines(const std::vector<std::string>& lines)
{
  std::vector<Verdict> v;
  for (const auto& l : lines)
  {
    if (l == "sat") v.push_back(Verdict::sat);
    else if (l == "unsat") v.push_back(Verdict::unsat);
    else if (l == "unknown" || l == "timeout") v.push_back(Verdict::unknown);
  }
  return v;
}

void
collect_symbols(const SExpr& e, std::set<std::string>& out)
{
  if (e.is_symbol())
  {
    out.insert(e.text);
    return;
  }
  for (const auto& c : e.children) collect_symbols(c, out);
}

}  // namespace

std::string_view
to_string(TruthValue v)
{
  switch (v)
  {
    case TruthValue::False: return "F";
    case TruthValue::True: return "T";
    case TruthValue::Undetermined: return "?";
  }
  return "?";
}

class OracleClient::Session
{
 public:
  explicit Session(const std::vector<std::string>& argv) : d_proc(argv) {}

  /** Send commands and return the output lines they produced. */
  std::vector<std::string> exchange(const std::string& commands, Clock::time_point deadline)
  {
    std::string tag = "storm-sync-" + std::to_string(++d_sync);
    std::string text = commands + "(echo \"" + tag + "\")\n";
    if (!d_proc.write(text, deadline))
    {
      if (Clock::now() >= deadline) throw SessionTimeout{};
      throw SessionLost{};
    }
    std::vector<std::string> lines;
    while (true)
    {
      auto line = d_proc.read_line(deadline);
      if (!line)
      {
        if (Clock::now() >= deadline) throw SessionTimeout{};
        throw SessionLost{};
      }
      std::string l = strip_cr(std::move(*line));
      if (l == tag) return lines;
      lines.push_back(std::move(l));
    }
  }

 private:
  Subprocess d_proc;
  std::uint64_t d_sync = 0;
};

OracleClient::OracleClient(SolverProfile profile, OracleOptions options)
    : d_profile(std::move(profile)), d_options(options)
{
}

OracleClient::~OracleClient() = default;

OracleClient::Session&
OracleClient::session()
{
  if (!d_session)
  {
    std::vector<std::string> argv{d_profile.binary};
    argv.insert(argv.end(), d_profile.pipe_args.begin(), d_profile.pipe_args.end());
    try
    {
      d_session = std::make_unique<Session>(argv);
    }
    catch (const SpawnError& e)
    {
      throw OracleUnavailable("cannot start oracle '" + d_profile.binary + "': " + e.what());
    }
    d_loaded.clear();
  }
  return *d_session;
}

void
OracleClient::drop_session()
{
  d_session.reset();
  d_loaded.clear();
}

namespace {

std::string
session_options(const SolverProfile& p, std::uint64_t seed, double timeout_seconds)
{
  std::string out;
  auto ms = std::to_string(static_cast<long long>(timeout_seconds * 1000));
  auto sd = std::to_string(seed & 0x7fffffffULL);
  for (const auto& o : p.session_options)
  {
    out += replace_all(replace_all(o, "{seed}", sd), "{timeout_ms}", ms);
    out += "\n";
  }
  return out;
}

/** Model entries and the bookkeeping needed to turn them into an Assignment. */
class ModelBuilder
{
 public:
  ModelBuilder(const smtlib::Script& seed) : d_seed_sig(signature_of(seed)), d_sig(d_seed_sig)
  {
    for (const auto& c : seed.commands())
    {
      if (c.kind == smtlib::CommandKind::declare_sort
          || c.kind == smtlib::CommandKind::declare_datatypes)
      {
        d_sort_decls.push_back(smtlib::print_command(c));
      }
    }
  }

  void read(const std::string& model_text)
  {
    d_model = smtlib::read_sexprs(model_text);
    std::vector<const SExpr*> items;
    for (const auto& t : d_model)
    {
      if (!t.is_list()) continue;
      for (const auto& c : t.children)
      {
        if (c.is_list()) items.push_back(&c);
      }
    }
    // declarations first so every body can refer to any entry
    for (const SExpr* e : items)
    {
      const SExpr& d = *e;
      if (d.size() == 4 && d[0].is_symbol("declare-fun") && d[1].is_symbol()
          && d[2].is_list() && d[2].size() == 0)
      {
        Sort s = smtlib::parse_sort(d[3], d_sig);
        if (!d_sig.is_declared(d[1].text))
        {
          d_sig.declare_fun(d[1].text, {{}, s});
        }
        d_universe[to_string(s)].push_back(Term::symbol(d[1].text, s));
      }
      else if (d.size() == 5 && d[0].is_symbol("define-fun") && d[1].is_symbol()
               && d[2].is_list())
      {
        smtlib::FunctionSig sig;
        std::vector<smtlib::SortedVar> params;
        for (const auto& p : d[2].children)
        {
          if (!p.is_list() || p.size() != 2) throw OracleUnavailable("malformed model");
          params.push_back({p[0].text, smtlib::parse_sort(p[1], d_sig)});
          sig.params.push_back(params.back().sort);
        }
        sig.result = smtlib::parse_sort(d[3], d_sig);
        bool seed_symbol = d_seed_sig.function(d[1].text) != nullptr;
        if (!seed_symbol && !d_sig.is_declared(d[1].text)) d_sig.declare_fun(d[1].text, sig);
        d_defs.push_back({d[1].text, std::move(params), sig.result, e, seed_symbol, nullptr});
      }
    }
    for (auto& def : d_defs)
    {
      if (!def.seed_symbol) continue;
      try
      {
        def.body = smtlib::parse_term((*def.expr)[4], d_sig, def.params);
      }
      catch (const Error&)
      {
        def.body = nullptr;
      }
    }
  }

  Assignment build(const std::string& oracle_id, std::uint64_t seed, bool negation)
  {
    Assignment m;
    m.oracle_id = oracle_id;
    m.rng_seed = seed;
    m.from_negation = negation;

    std::map<std::string, const Def*> by_name;
    for (const auto& d : d_defs) by_name.emplace(d.name, &d);

    for (const auto& [name, sig] : d_seed_sig.functions())
    {
      auto it = by_name.find(name);
      const Def* def = it != by_name.end() && it->second->body ? it->second : nullptr;
      if (def && def->body->sort() != sig.result) def = nullptr;
      if (sig.params.empty())
      {
        TermPtr v = def ? def->body : default_value(sig.result, 0);
        m.values.constants[name] = v;
      }
      else
      {
        smtlib::FunctionValue f;
        if (def)
        {
          f.params = def->params;
          f.body = def->body;
        }
        else
        {
          for (std::size_t i = 0; i < sig.params.size(); ++i)
          {
            f.params.push_back({"x!" + std::to_string(i), sig.params[i]});
          }
          f.body = default_value(sig.result, 0);
        }
        f.result = sig.result;
        m.values.functions[name] = std::move(f);
      }
    }

    // definitions go out in dependency order; aux entries only if reachable
    std::vector<std::string> order;
    std::set<std::string> done;
    std::set<std::string> visiting;
    std::function<void(const std::string&)> visit = [&](const std::string& name) {
      if (done.count(name) || visiting.count(name)) return;
      visiting.insert(name);
      auto it = by_name.find(name);
      std::set<std::string> refs;
      bool use_model = false;
      if (d_seed_sig.function(name))
      {
        use_model = it != by_name.end() && it->second->body && uses_model_entry(name, m);
      }
      else if (it != by_name.end())
      {
        use_model = true;
      }
      if (use_model) collect_symbols((*it->second->expr)[4], refs);
      for (const auto& r : refs)
      {
        if (r != name && by_name.count(r)) visit(r);
      }
      visiting.erase(name);
      done.insert(name);
      order.push_back(name);
    };
    for (const auto& [name, sig] : d_seed_sig.functions()) visit(name);

    for (auto& [sort, elems] : d_universe)
    {
      for (const auto& e : elems) m.values.constants.emplace(e->name(), e);
    }

    m.preamble = d_sort_decls;
    for (const auto& [sort, elems] : d_universe)
    {
      if (elems.empty()) continue;
      const Sort& s = elems.front()->sort();
      for (const auto& e : elems)
      {
        m.preamble.push_back(smtlib::print_command(Command::declare_const(e->name(), s)));
      }
      std::string ss = to_string(s);
      if (elems.size() > 1)
      {
        std::string d = "(assert (distinct";
        for (const auto& e : elems) d += " " + to_string(*e);
        m.preamble.push_back(d + "))");
      }
      std::string c = "(assert (forall ((storm!x " + ss + ")) (or";
      for (const auto& e : elems) c += " (= storm!x " + to_string(*e) + ")";
      m.preamble.push_back(c + " false)))");
    }
    for (const auto& name : order)
    {
      const smtlib::FunctionSig* sig = d_seed_sig.function(name);
      if (sig)
      {
        std::vector<smtlib::SortedVar> params;
        TermPtr body;
        if (sig->params.empty())
        {
          body = m.values.constants.at(name);
        }
        else
        {
          const auto& f = m.values.functions.at(name);
          params = f.params;
          body = f.body;
        }
        std::string text = "(define-fun " + smtlib::quote_symbol(name) + " (";
        for (std::size_t i = 0; i < params.size(); ++i)
        {
          if (i) text += " ";
          text += "(" + smtlib::quote_symbol(params[i].name) + " " + to_string(params[i].sort)
                  + ")";
        }
        text += ") " + to_string(sig->result) + " " + to_string(*body) + ")";
        m.preamble.push_back(std::move(text));
      }
      else if (auto it = by_name.find(name); it != by_name.end())
      {
        m.preamble.push_back(to_string(*it->second->expr));
      }
    }
    return m;
  }

 private:
  struct Def
  {
    std::string name;
    std::vector<smtlib::SortedVar> params;
    Sort result;
    const SExpr* expr;
    bool seed_symbol;
    TermPtr body;
  };

  bool uses_model_entry(const std::string& name, const Assignment& m) const
  {
    for (const auto& d : d_defs)
    {
      if (d.name != name || !d.body) continue;
      auto c = m.values.constants.find(name);
      if (c != m.values.constants.end()) return c->second == d.body;
      auto f = m.values.functions.find(name);
      if (f != m.values.functions.end()) return f->second.body == d.body;
    }
    return false;
  }

  TermPtr default_value(const Sort& s, int depth)
  {
    if (s.is_bool()) return smtlib::make_false();
    if (s.is_int()) return Term::constant("0", s);
    if (s.is_real()) return Term::constant("0.0", s);
    if (s.is_bitvec()) return Term::constant("(_ bv0 " + std::to_string(s.width()) + ")", s);
    if (s.name == "String" && s.args.empty()) return Term::constant("\"\"", s);
    if (s.name == "RegLan") return Term::app("re.none", s, {});
    if (s.is_array())
    {
      smtlib::Identifier id{"const", {}, s};
      return Term::app(id, s, {default_value(s.args.back(), depth + 1)});
    }
    if (const auto* dt = d_sig.datatype(s.name); dt && s.args.empty())
    {
      const smtlib::Constructor* pick = nullptr;
      for (const auto& c : dt->constructors)
      {
        if (c.selectors.empty())
        {
          pick = &c;
          break;
        }
      }
      if (!pick && !dt->constructors.empty() && depth < 16) pick = &dt->constructors.front();
      if (!pick) throw SeedRejected("no default value for datatype " + s.name);
      std::vector<TermPtr> args;
      for (const auto& sel : pick->selectors) args.push_back(default_value(sel.sort, depth + 1));
      return Term::app(pick->name, s, std::move(args));
    }
    if (d_sig.has_sort(s.name) && s.args.empty())
    {
      auto& elems = d_universe[to_string(s)];
      if (elems.empty())
      {
        std::string w = "storm!witness!" + s.name;
        d_sig.declare_fun(w, {{}, s});
        elems.push_back(Term::symbol(w, s));
      }
      return elems.front();
    }
    throw SeedRejected("no default value for sort " + to_string(s));
  }

  std::vector<SExpr> d_model;
  Signature d_seed_sig;
  Signature d_sig;
  std::vector<std::string> d_sort_decls;
  std::map<std::string, std::vector<TermPtr>> d_universe;
  std::vector<Def> d_defs;
};

}  // namespace

Assignment
OracleClient::generate_assignment(const smtlib::Script& s, std::uint64_t rng_seed)
{
  std::string setup = session_options(d_profile, rng_seed, d_options.timeout_seconds);
  setup += "(set-option :produce-models true)\n";
  for (const auto& c : s.commands())
  {
    if (c.is_declaration()) setup += smtlib::print_command(c) + "\n";
  }
  TermPtr conj = smtlib::make_and(s.assertions());
  auto deadline = [&] {
    return Clock::now()
           + std::chrono::milliseconds(
               static_cast<long long>(d_options.timeout_seconds * 1000) + 5000);
  };

  for (bool negation : {false, true})
  {
    // a fresh process per attempt keeps models independent of earlier queries
    drop_session();
    std::string q = setup;
    q += "(assert " + to_string(negation ? *smtlib::make_not(conj) : *conj) + ")\n";
    q += "(check-sat)\n";
    try
    {
      ++d_queries;
      auto v = verdict_lines(session().exchange(q, deadline()));
      if (v.size() != 1 || v.front() != Verdict::sat) continue;
      auto lines = session().exchange("(get-model)\n", deadline());
      std::string text;
      for (const auto& l : lines) text += l + "\n";
      ModelBuilder builder(s);
      builder.read(text);
      drop_session();
      return builder.build(d_profile.id, rng_seed, negation);
    }
    catch (const SessionTimeout&)
    {
      drop_session();
    }
    catch (const SessionLost&)
    {
      drop_session();
    }
    catch (const ParseError& e)
    {
      drop_session();
      throw OracleUnavailable(std::string("unreadable model: ") + e.what());
    }
  }
  drop_session();
  throw SeedRejected("oracle found no model for the assertions or their negation");
}

void
OracleClient::load(const Assignment& m)
{
  std::string text = "(reset)\n" + session_options(d_profile, m.rng_seed, d_options.timeout_seconds);
  for (const auto& p : m.preamble) text += p + "\n";
  Session& s = session();
  if (d_loaded == text) return;
  try
  {
    s.exchange(text, Clock::now() + std::chrono::seconds(30));
  }
  catch (const SessionTimeout&)
  {
    drop_session();
    throw OracleUnavailable("oracle did not accept the assignment");
  }
  catch (const SessionLost&)
  {
    drop_session();
    throw OracleUnavailable("oracle exited while loading the assignment");
  }
  d_loaded = std::move(text);
}

TruthValue
OracleClient::evaluate(const TermPtr& pred, const Assignment& m)
{
  return evaluate_all({pred}, m).front();
}

std::vector<TruthValue>
OracleClient::evaluate_all(const std::vector<TermPtr>& preds, const Assignment& m)
{
  std::vector<TruthValue> result;
  result.reserve(preds.size());
  for (const auto& pred : preds)
  {
    TermPtr g = smtlib::substitute(pred, m.values);
    std::string gt = to_string(*g);
    load(m);
    std::string q = "(push 1)\n(assert " + gt + ")\n(check-sat)\n(pop 1)\n(push 1)\n(assert (not "
                    + gt + "))\n(check-sat)\n(pop 1)\n";
    auto deadline = Clock::now()
                    + std::chrono::milliseconds(
                        static_cast<long long>(d_options.timeout_seconds * 2000) + 5000);
    TruthValue t = TruthValue::Undetermined;
    try
    {
      d_queries += 2;
      auto v = verdict_lines(session().exchange(q, deadline));
      if (v.size() == 2)
      {
        if (v[0] == Verdict::sat && v[1] == Verdict::unsat) t = TruthValue::True;
        else if (v[0] == Verdict::unsat && v[1] == Verdict::sat) t = TruthValue::False;
      }
    }
    catch (const SessionTimeout&)
    {
      drop_session();
    }
    catch (const SessionLost&)
    {
      drop_session();
    }
    result.push_back(t);
  }
  return result;
}

Verdict
OracleClient::check_ground_truth(const Instance& i)
{
  SolverProfile p = d_profile;
  p.timeout_seconds = d_options.timeout_seconds;
  SolverOutcome o;
  try
  {
    o = run_solver(p, i, RunMode::pipe);
  }
  catch (const SpawnError& e)
  {
    throw OracleUnavailable(e.what());
  }
  if (o.verdict == Verdict::crash)
  {
    throw OracleUnavailable("oracle crashed: " + o.stderr_excerpt);
  }
  return o.verdict;
}

}  // namespace storm
