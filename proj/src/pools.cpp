#include "storm/pools.hpp"

#include <algorithm>

#include "storm/error.hpp"
#include "storm/smtlib/term_ops.hpp"

namespace storm {

using smtlib::TermPtr;

bool
Pool::insert(TermPtr term, TruthValue value)
{
  if (value == TruthValue::Undetermined) return false;
  auto [it, fresh] = d_index.emplace(term, d_entries.size());
  if (!fresh) return false;
  d_entries.push_back({std::move(term), value});
  return true;
}

std::optional<TruthValue>
Pool::find(const TermPtr& term) const
{
  auto it = d_index.find(term);
  if (it == d_index.end()) return std::nullopt;
  return d_entries[it->second].value;
}

std::size_t
Pool::max_depth() const
{
  std::size_t d = 0;
  for (const auto& e : d_entries) d = std::max(d, e.term->depth());
  return d;
}

std::string
Pool::dump() const
{
  std::string out;
  for (const auto& e : d_entries)
  {
    out += to_string(e.value);
    out += ' ';
    out += to_string(*e.term);
    out += '\n';
  }
  return out;
}

PredicateEvaluator
oracle_evaluator(OracleClient& oracle, const Assignment& m)
{
  return [&oracle, &m](const std::vector<TermPtr>& preds) { return oracle.evaluate_all(preds, m); };
}

Pool
populate_initial_pool(const smtlib::Script& s, std::size_t d_max, const PredicateEvaluator& evaluate)
{
  Pool seen;
  std::vector<TermPtr> preds;
  for (const auto& a : s.assertions())
  {
    for (auto& p : smtlib::enumerate_predicates(a))
    {
      if (p->depth() > d_max) continue;
      if (seen.insert(p, TruthValue::True)) preds.push_back(std::move(p));
    }
  }
  Pool pool(PoolKind::initial);
  if (!preds.empty())
  {
    auto values = evaluate(preds);
    for (std::size_t i = 0; i < preds.size() && i < values.size(); ++i)
    {
      pool.insert(preds[i], values[i]);
    }
  }
  if (pool.empty()) throw EmptyPool("no predicate with a determined valuation");
  return pool;
}

Pool
populate_initial_pool(const smtlib::Script& s,
                      std::size_t d_max,
                      const Assignment& m,
                      OracleClient& oracle)
{
  return populate_initial_pool(s, d_max, oracle_evaluator(oracle, m));
}

BoolOp
rand_op(Rng& rng)
{
  return rng.below(2) == 0 ? BoolOp::AND : BoolOp::NOT;
}

const PoolEntry&
rand_formula(const Pool& p_init, const Pool& p_constr, Rng& rng)
{
  if (p_constr.empty() || rng.below(10) < 3)
  {
    return p_init[rng.below(p_init.size())];
  }
  return p_constr[rng.below(p_constr.size())];
}

Pool
populate_construction_pool(const Pool& p_init, std::size_t nc, std::size_t d_max, Rng& rng)
{
  Pool pool(PoolKind::construction);
  std::size_t attempts = 0;
  const std::size_t limit = stall_factor * nc;
  while (pool.size() < nc)
  {
    if (attempts++ >= limit)
    {
      pool.set_stalled(true);
      break;
    }
    BoolOp op = rand_op(rng);
    const PoolEntry& f1 = rand_formula(p_init, pool, rng);
    TermPtr t;
    TruthValue v;
    if (op == BoolOp::AND)
    {
      const PoolEntry& f2 = rand_formula(p_init, pool, rng);
      v = truth(f1.value == TruthValue::True && f2.value == TruthValue::True);
      t = smtlib::make_and(f1.term, f2.term);
    }
    else
    {
      v = truth(f1.value == TruthValue::False);
      t = smtlib::make_not(f1.term);
    }
    if (t->depth() <= d_max) pool.insert(std::move(t), v);
  }
  return pool;
}

}  // namespace storm
