#include "storm/instancegen.hpp"

#include <algorithm>

#include "storm/error.hpp"

namespace storm {

using smtlib::Command;
using smtlib::TermPtr;

void
FuzzConfig::validate() const
{
  if (nm && *nm > 100000000) throw ConfigError("nm is too large");
  if (d_max < 1) throw ConfigError("d_max must be at least 1");
  if (a_max < 1) throw ConfigError("a_max must be at least 1");
  if (nc_range.first > nc_range.second) throw ConfigError("empty nc range");
  if (nm_range.first > nm_range.second) throw ConfigError("empty nm range");
}

std::size_t
scale_budget(std::size_t pool_size, std::pair<std::size_t, std::size_t> range)
{
  std::size_t c = std::clamp(pool_size, scale_pool_min, scale_pool_max);
  return range.first
         + (range.second - range.first) * (c - scale_pool_min) / (scale_pool_max - scale_pool_min);
}

Command
provenance_info(const Provenance& p)
{
  std::string id;
  for (char c : p.seed_id)
  {
    id += c;
    if (c == '"') id += '"';
  }
  return Command::set_info(":storm-provenance", "\"seed=" + id + " rng=" + std::to_string(p.rng_seed)
                                                    + " iter=" + std::to_string(p.iteration) + "\"");
}

namespace {

Instance
start_instance(const std::vector<Command>& header, const Provenance& provenance)
{
  Instance inst;
  inst.header = header;
  inst.header.push_back(provenance_info(provenance));
  inst.provenance = provenance;
  return inst;
}

Command
draw_assertion(const Pool& p_init, const Pool& p_constr, Rng& rng)
{
  const PoolEntry& e = rand_formula(p_init, p_constr, rng);
  TermPtr t = e.value == TruthValue::False ? smtlib::make_not(e.term) : e.term;
  return Command::assertion(std::move(t));
}

}  // namespace

Instance
generate_instance(const std::vector<Command>& header,
                  const Pool& p_init,
                  const Pool& p_constr,
                  std::size_t a_max,
                  Rng& rng,
                  const Provenance& provenance)
{
  Instance inst = start_instance(header, provenance);
  std::size_t ac = rng.next() % a_max + 1;
  for (std::size_t i = 0; i < ac; ++i) inst.body.push_back(draw_assertion(p_init, p_constr, rng));
  inst.body.push_back(Command::check_sat());
  return inst;
}

Instance
generate_incremental_instance(const std::vector<Command>& header,
                              const Pool& p_init,
                              const Pool& p_constr,
                              std::size_t a_max,
                              Rng& rng,
                              const Provenance& provenance)
{
  Instance inst = start_instance(header, provenance);
  std::size_t ac = rng.next() % a_max + 1;
  std::size_t depth = rng.between(1, 4);
  std::size_t checks = rng.between(1, 4);

  std::vector<std::size_t> per_check(checks, 0);
  for (std::size_t i = 0; i < ac; ++i) ++per_check[rng.below(checks)];

  std::size_t level = 0;
  for (std::size_t j = 0; j < checks; ++j)
  {
    std::size_t target = j == 0 ? depth : rng.between(0, depth);
    while (level > target)
    {
      inst.body.push_back(Command::pop(1));
      --level;
    }
    std::size_t low = level;
    std::vector<std::size_t> per_level(target - low + 1, 0);
    for (std::size_t i = 0; i < per_check[j]; ++i) ++per_level[rng.below(per_level.size())];
    for (std::size_t l = low; l <= target; ++l)
    {
      for (std::size_t i = 0; i < per_level[l - low]; ++i)
      {
        inst.body.push_back(draw_assertion(p_init, p_constr, rng));
      }
      if (l < target)
      {
        inst.body.push_back(Command::push(1));
        ++level;
      }
    }
    inst.body.push_back(Command::check_sat());
  }
  while (level > 0)
  {
    inst.body.push_back(Command::pop(1));
    --level;
  }
  return inst;
}

std::vector<const FuzzHit*>
FuzzResult::unsat_hits() const
{
  std::vector<const FuzzHit*> out;
  for (const auto& h : hits)
  {
    if (h.bug_class == BugClass::A) out.push_back(&h);
  }
  return out;
}

FuzzResult
fuzz(const smtlib::Script& seed,
     const FuzzConfig& cfg,
     const PredicateEvaluator& evaluate,
     InstanceRunner& runner,
     const std::string& seed_id,
     const std::vector<std::string>& decidable_logics)
{
  cfg.validate();
  Pool p_init = populate_initial_pool(seed, cfg.d_max, evaluate);
  return fuzz(seed, cfg, p_init, runner, seed_id, decidable_logics);
}

FuzzResult
fuzz(const smtlib::Script& seed,
     const FuzzConfig& cfg,
     const Pool& p_init,
     InstanceRunner& runner,
     const std::string& seed_id,
     const std::vector<std::string>& decidable_logics)
{
  cfg.validate();
  FuzzResult result;
  result.initial_pool = p_init.size();
  result.nc = cfg.nc ? *cfg.nc : scale_budget(p_init.size(), cfg.nc_range);
  result.nm = cfg.nm ? *cfg.nm : scale_budget(p_init.size(), cfg.nm_range);

  Rng rng(cfg.rng_seed);
  Pool p_constr = populate_construction_pool(p_init, result.nc, cfg.d_max, rng);
  result.construction_pool = p_constr.size();
  result.stalled = p_constr.stalled();

  std::vector<Command> header = instance_header(seed);
  std::size_t unsat = 0;
  for (std::size_t iter = 0; iter < result.nm; ++iter)
  {
    Provenance prov{seed_id, cfg.rng_seed, iter};
    Instance inst = cfg.incremental
                        ? generate_incremental_instance(header, p_init, p_constr, cfg.a_max, rng, prov)
                        : generate_instance(header, p_init, p_constr, cfg.a_max, rng, prov);
    SolverOutcome outcome = runner.run(inst);
    auto cls = classify(outcome, inst.logic(), decidable_logics);
    if (cls)
    {
      result.hits.push_back({iter, *cls, inst, outcome});
      if (*cls == BugClass::A) ++unsat;
    }
    result.runs.push_back({iter, std::move(outcome)});
    if (cfg.stop_after && unsat >= cfg.stop_after) break;
  }
  return result;
}

}  // namespace storm
