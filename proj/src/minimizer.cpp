#include "storm/minimizer.hpp"

#include <algorithm>
#include <optional>
#include <tuple>

#include "storm/error.hpp"
#include "storm/smtlib/printer.hpp"

namespace storm {

using smtlib::Script;

InstanceStats
stats_of(const Script& s)
{
  InstanceStats st;
  st.bytes = smtlib::print_script(s).size();
  for (const auto& a : s.assertions())
  {
    ++st.assertions;
    st.depth = std::max(st.depth, a->depth());
  }
  return st;
}

std::string_view
to_string(Stage s)
{
  return s == Stage::assertions ? "assertions" : "depth";
}

namespace {

struct Candidate
{
  Script script;
  std::size_t metric;
  std::string text;
};

/** Smallest unsat hit by metric, then byte length, then text. */
std::optional<Script>
select_smallest(const FuzzResult& r, Stage stage)
{
  std::optional<Candidate> best;
  for (const FuzzHit* h : r.unsat_hits())
  {
    Script s = h->instance.to_script();
    std::string text = smtlib::print_script(s);
    std::size_t metric = stage == Stage::assertions ? h->instance.assertion_count()
                                                    : h->instance.max_depth();
    if (!best
        || std::make_tuple(metric, text.size(), std::cref(text))
               < std::make_tuple(best->metric, best->text.size(), std::cref(best->text)))
    {
      best = Candidate{std::move(s), metric, std::move(text)};
    }
  }
  if (!best) return std::nullopt;
  return std::move(best->script);
}

FuzzResult
guarded(const Fuzzer& fuzzer, const Script& s, const FuzzConfig& cfg)
{
  try
  {
    return fuzzer(s, cfg);
  }
  catch (const EmptyPool&)
  {
  }
  catch (const SeedRejected&)
  {
  }
  return {};
}

Script
search(Script s,
       FuzzConfig cfg,
       std::size_t lo,
       std::size_t hi,
       Stage stage,
       const Fuzzer& fuzzer,
       std::vector<StageStep>* trace)
{
  while (hi > lo)
  {
    std::size_t bound = (lo + hi) / 2;
    (stage == Stage::assertions ? cfg.a_max : cfg.d_max) = bound;
    FuzzResult r = guarded(fuzzer, s, cfg);
    auto next = select_smallest(r, stage);
    if (trace) trace->push_back({stage, lo, hi, bound, next.has_value(), r.unsat_hits().size()});
    if (next)
    {
      s = std::move(*next);
      hi = bound;
    }
    else
    {
      lo = bound + 1;
    }
  }
  return s;
}

}  // namespace

Script
minimize_depth(const Script& s,
               const FuzzConfig& cfg,
               std::size_t d_min,
               std::size_t d_max,
               const Fuzzer& fuzzer,
               std::vector<StageStep>* trace)
{
  return search(s, cfg, d_min, d_max, Stage::depth, fuzzer, trace);
}

Script
minimize_assertions(const Script& s,
                    const FuzzConfig& cfg,
                    std::size_t a_min,
                    std::size_t a_max,
                    const Fuzzer& fuzzer,
                    std::vector<StageStep>* trace)
{
  return search(s, cfg, a_min, a_max, Stage::assertions, fuzzer, trace);
}

MinimizationResult
minimize(const Script& bug,
         const FuzzConfig& cfg,
         const Fuzzer& fuzzer,
         InstanceRunner& target,
         const MinimizeOptions& options)
{
  MinimizationResult result;
  result.original = stats_of(bug);

  std::vector<Script> chain{bug};
  FuzzConfig stage_cfg = cfg;
  std::vector<Stage> order{Stage::assertions, Stage::depth};
  if (options.depth_first) std::swap(order[0], order[1]);
  for (std::size_t i = 0; i < order.size(); ++i)
  {
    stage_cfg.rng_seed = cfg.rng_seed + i;
    std::size_t before = result.trace.size();
    Script next;
    if (order[i] == Stage::assertions)
    {
      next = minimize_assertions(chain.back(), stage_cfg, 1, cfg.a_max, fuzzer, &result.trace);
      stage_cfg.a_max = std::clamp<std::size_t>(stats_of(next).assertions, 1, cfg.a_max);
    }
    else
    {
      next = minimize_depth(chain.back(), stage_cfg, 1, cfg.d_max, fuzzer, &result.trace);
      stage_cfg.d_max = std::clamp<std::size_t>(stats_of(next).depth, 1, cfg.d_max);
    }
    if (result.trace.size() > before && !(next == chain.back())) chain.push_back(next);
  }
  result.fuzz_calls = result.trace.size();

  Script final = chain.back();
  if (options.post_pass) final = options.post_pass(final);
  chain.push_back(final);

  for (auto it = chain.rbegin(); it != chain.rend(); ++it)
  {
    SolverOutcome o = target.run(instance_from_script(*it));
    if (o.verdict == Verdict::unsat)
    {
      result.script = *it;
      result.reproduced = true;
      result.final_outcome = std::move(o);
      break;
    }
    if (it == chain.rbegin())
    {
      result.final_outcome = o;
    }
  }
  if (!result.reproduced) result.script = chain.back();
  result.minimized = stats_of(result.script);
  return result;
}

}  // namespace storm
