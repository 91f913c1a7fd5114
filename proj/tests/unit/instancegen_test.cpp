#include <gtest/gtest.h>

#include "storm/error.hpp"
#include "storm/instancegen.hpp"
#include "storm/smtlib/parser.hpp"
#include "storm/smtlib/printer.hpp"
#include "replay.hpp"
#include "truth_table.hpp"

using namespace storm;
using namespace storm::smtlib;

namespace {

constexpr auto T = TruthValue::True;
constexpr auto F = TruthValue::False;

Script
bool_seed()
{
  return parse_script(
      "(set-logic QF_UF)(set-info :status sat)(declare-const p0 Bool)(declare-const p1 Bool)"
      "(declare-const p2 Bool)(assert (or p0 (and p1 (not p2))))(assert (xor p0 p2))(check-sat)");
}

const test::Env seed_env{{"p0", true}, {"p1", false}, {"p2", false}};

PredicateEvaluator
table_evaluator(const test::Env& env)
{
  return [env](const std::vector<TermPtr>& preds) {
    std::vector<TruthValue> out;
    for (const auto& p : preds) out.push_back(truth(test::eval_bool(*p, env)));
    return out;
  };
}

class CountingRunner : public InstanceRunner
{
 public:
  explicit CountingRunner(Verdict v = Verdict::sat) : d_verdict(v) {}
  SolverOutcome run(const Instance&) override
  {
    ++calls;
    SolverOutcome o;
    o.verdict = d_verdict;
    o.verdicts = {d_verdict};
    return o;
  }
  std::size_t calls = 0;

 private:
  Verdict d_verdict;
};

}  // namespace

TEST(Generate, TrueDrawsAreUnmodifiedFalseDrawsNegated)
{
  Pool init;
  auto a = Term::symbol("a", Sort::boolean());
  init.insert(a, T);
  Pool constr(PoolKind::construction);
  Rng rng(1);
  auto inst = generate_instance({}, init, constr, 4, rng);
  for (const auto& c : inst.body)
    if (c.kind == CommandKind::assertion) EXPECT_EQ(*c.term, *a);

  Pool finit;
  finit.insert(a, F);
  Rng rng2(1);
  auto neg = generate_instance({}, finit, constr, 4, rng2);
  for (const auto& c : neg.body)
    if (c.kind == CommandKind::assertion) EXPECT_EQ(print_command(c), "(assert (not a))");
}

TEST(Generate, SingleAssertionBound)
{
  auto init = populate_initial_pool(bool_seed(), 64, table_evaluator(seed_env));
  Rng rng(2);
  auto constr = populate_construction_pool(init, 100, 64, rng);
  for (int i = 0; i < 200; ++i)
  {
    auto inst = generate_instance(instance_header(bool_seed()), init, constr, 1, rng);
    EXPECT_EQ(inst.assertion_count(), 1u);
    EXPECT_EQ(inst.check_point_count(), 1u);
  }
}

TEST(Generate, HeaderAndProvenance)
{
  auto seed = bool_seed();
  auto init = populate_initial_pool(seed, 64, table_evaluator(seed_env));
  Pool constr(PoolKind::construction);
  Rng rng(3);
  auto inst = generate_instance(instance_header(seed), init, constr, 8, rng, {"s1", 77, 5});
  auto text = inst.to_smt2();
  EXPECT_EQ(text.rfind("(set-logic QF_UF)\n", 0), 0u);
  EXPECT_EQ(text.find(":status"), std::string::npos);
  EXPECT_NE(text.find("(set-info :storm-provenance \"seed=s1 rng=77 iter=5\")"), std::string::npos);
  EXPECT_EQ(parse_script(text), inst.to_script());
}

TEST(Generate, EveryInstanceTrueUnderAssignment)
{
  auto init = populate_initial_pool(bool_seed(), 64, table_evaluator(seed_env));
  Rng rng(4);
  auto constr = populate_construction_pool(init, 300, 64, rng);
  for (int i = 0; i < 500; ++i)
  {
    auto inst = generate_instance({}, init, constr, 64, rng);
    EXPECT_FALSE(inst.has_push_pop());
    auto r = test::replay(inst, seed_env);
    ASSERT_EQ(r.checks.size(), 1u);
    EXPECT_TRUE(r.checks[0]);
    EXPECT_GE(inst.assertion_count(), 1u);
    EXPECT_LE(inst.assertion_count(), 64u);
  }
}

TEST(Incremental, HandWrittenSequence)
{
  auto s = parse_script(
      "(declare-const f Bool)(declare-const g Bool)"
      "(assert f)(push 1)(assert g)(check-sat)(pop 1)(check-sat)");
  auto inst = instance_from_script(s);
  auto r = test::replay(inst, {{"f", true}, {"g", true}});
  EXPECT_EQ(r.checks, (std::vector<bool>{true, true}));
  EXPECT_FALSE(r.underflow);
}

TEST(Incremental, BalancedAndTrue)
{
  auto init = populate_initial_pool(bool_seed(), 64, table_evaluator(seed_env));
  Rng rng(5);
  auto constr = populate_construction_pool(init, 300, 64, rng);
  std::size_t deepest = 0;
  for (int i = 0; i < 10000; ++i)
  {
    auto inst = generate_incremental_instance({}, init, constr, 16, rng);
    auto r = test::replay(inst, seed_env);
    ASSERT_FALSE(r.underflow);
    ASSERT_EQ(r.final_level, 0u);
    ASSERT_GE(r.checks.size(), 1u);
    ASSERT_LE(r.checks.size(), 4u);
    for (bool c : r.checks) ASSERT_TRUE(c);
    ASSERT_GE(r.max_level, 1u);
    ASSERT_LE(r.max_level, 4u);
    deepest = std::max(deepest, r.max_level);
  }
  EXPECT_EQ(deepest, 4u);
}

TEST(Scale, Interpolation)
{
  EXPECT_EQ(scale_budget(0, {200, 1500}), 200u);
  EXPECT_EQ(scale_budget(10, {200, 1500}), 200u);
  EXPECT_EQ(scale_budget(2000, {200, 1500}), 1500u);
  EXPECT_EQ(scale_budget(99999, {300, 1000}), 1000u);
  // 10 + 1990/2 = 1005 lies halfway
  EXPECT_EQ(scale_budget(1005, {300, 1000}), 650u);
}

TEST(Fuzz, ZeroInstancesRunsNothing)
{
  FuzzConfig cfg;
  cfg.nc = 10;
  cfg.nm = 0;
  CountingRunner runner;
  auto r = fuzz(bool_seed(), cfg, table_evaluator(seed_env), runner);
  EXPECT_TRUE(r.runs.empty());
  EXPECT_TRUE(r.hits.empty());
  EXPECT_EQ(runner.calls, 0u);
}

TEST(Fuzz, HitsFollowClassification)
{
  FuzzConfig cfg;
  cfg.nc = 20;
  cfg.nm = 5;
  CountingRunner unsat(Verdict::unsat);
  auto r = fuzz(bool_seed(), cfg, table_evaluator(seed_env), unsat);
  EXPECT_EQ(r.runs.size(), 5u);
  EXPECT_EQ(r.hits.size(), 5u);
  EXPECT_EQ(r.unsat_hits().size(), 5u);

  CountingRunner unknown(Verdict::unknown);
  auto u = fuzz(bool_seed(), cfg, table_evaluator(seed_env), unknown);
  ASSERT_EQ(u.hits.size(), 5u);
  EXPECT_EQ(u.hits[0].bug_class, BugClass::C);
  EXPECT_TRUE(u.unsat_hits().empty());

  cfg.stop_after = 2;
  CountingRunner stop(Verdict::unsat);
  auto s = fuzz(bool_seed(), cfg, table_evaluator(seed_env), stop);
  EXPECT_EQ(stop.calls, 2u);
}

TEST(Fuzz, ScaledBudgets)
{
  FuzzConfig cfg;
  CountingRunner runner;
  auto r = fuzz(bool_seed(), cfg, table_evaluator(seed_env), runner);
  EXPECT_EQ(r.nc, 200u);
  EXPECT_EQ(r.nm, 300u);
  EXPECT_EQ(runner.calls, 300u);
}

class RecordingRunner : public InstanceRunner
{
 public:
  SolverOutcome run(const Instance& i) override
  {
    texts.push_back(i.to_smt2());
    return {};
  }
  std::vector<std::string> texts;
};

TEST(Fuzz, Deterministic)
{
  FuzzConfig cfg;
  cfg.nc = 50;
  cfg.nm = 30;
  cfg.rng_seed = 1234;
  cfg.incremental = true;
  RecordingRunner a, b;
  fuzz(bool_seed(), cfg, table_evaluator(seed_env), a);
  fuzz(bool_seed(), cfg, table_evaluator(seed_env), b);
  EXPECT_EQ(a.texts, b.texts);
  cfg.rng_seed = 1235;
  RecordingRunner c;
  fuzz(bool_seed(), cfg, table_evaluator(seed_env), c);
  EXPECT_NE(a.texts, c.texts);
}

TEST(Config, Validation)
{
  FuzzConfig cfg;
  cfg.a_max = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.a_max = 1;
  cfg.d_max = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.d_max = 1;
  EXPECT_NO_THROW(cfg.validate());
}
