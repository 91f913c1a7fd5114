#include <gtest/gtest.h>

#include "paths.hpp"
#include "storm/error.hpp"
#include "storm/oracle.hpp"
#include "storm/smtlib/parser.hpp"
#include "storm/smtlib/signature.hpp"
#include "truth_table.hpp"

using namespace storm;
using namespace storm::smtlib;

namespace {

OracleClient&
oracle()
{
  static OracleClient client(SolverProfile::z3(test::z3_binary));
  return client;
}

Assignment
bool_assignment(const test::Env& env)
{
  Assignment m;
  for (const auto& [name, value] : env) m.values.constants[name] = value ? make_true() : make_false();
  return m;
}

std::string
bool_decls(std::size_t n)
{
  std::string d;
  for (const auto& p : test::atom_names(n)) d += "(declare-const " + p + " Bool)";
  return d;
}

}  // namespace

TEST(Assignment, ContradictionTakesNegationPath)
{
  auto s = parse_script("(declare-const a Bool)(assert a)(assert (not a))(check-sat)");
  auto m = oracle().generate_assignment(s, 1);
  EXPECT_TRUE(m.from_negation);
  EXPECT_EQ(m.values.constants.count("a"), 1u);
  EXPECT_EQ(m.rng_seed, 1u);
}

TEST(Assignment, ModelSatisfiesAssertion)
{
  auto s = parse_script("(declare-const x Int)(assert (> x 3))(check-sat)");
  auto m = oracle().generate_assignment(s, 2);
  EXPECT_FALSE(m.from_negation);
  auto x = m.values.constants.at("x");
  ASSERT_EQ(x->kind(), TermKind::constant);
  EXPECT_GT(std::stoll(x->name()), 3);
  EXPECT_EQ(oracle().evaluate(s.assertions()[0], m), TruthValue::True);
}

TEST(Assignment, NoAssertionsGivesDefaults)
{
  auto s = parse_script(
      "(declare-const b Bool)(declare-const i Int)(declare-const v (_ BitVec 4))"
      "(declare-const s String)(check-sat)");
  auto m = oracle().generate_assignment(s, 3);
  EXPECT_EQ(to_string(*m.values.constants.at("b")), "false");
  EXPECT_EQ(to_string(*m.values.constants.at("i")), "0");
  auto sig = signature_of(s);
  EXPECT_EQ(oracle().evaluate(parse_term("(= v #x0)", sig), m), TruthValue::True);
  EXPECT_EQ(to_string(*m.values.constants.at("s")), "\"\"");
}

TEST(Assignment, Deterministic)
{
  auto s = parse_script(
      "(declare-const x Int)(declare-const y Int)(assert (> (+ x y) 10))(assert (< x y))");
  auto a = oracle().generate_assignment(s, 42);
  auto b = oracle().generate_assignment(s, 42);
  ASSERT_EQ(a.values.constants.size(), b.values.constants.size());
  for (const auto& [k, v] : a.values.constants) EXPECT_EQ(*v, *b.values.constants.at(k)) << k;
  EXPECT_EQ(a.preamble, b.preamble);
}

TEST(Assignment, CoversUninterpretedSortsAndFunctions)
{
  auto s = parse_script(
      "(declare-sort U 0)(declare-fun f (U) U)(declare-const u U)(declare-const w U)"
      "(declare-fun g (Int) Int)(assert (distinct (f u) w))(assert (> (g 3) (g 4)))");
  auto m = oracle().generate_assignment(s, 5);
  for (const auto& t : s.assertions()) EXPECT_EQ(oracle().evaluate(t, m), TruthValue::True);
  EXPECT_EQ(oracle().evaluate(parse_script("(declare-sort U 0)(declare-const u U)(declare-const w U)"
                                           "(declare-fun f (U) U)(assert (= (f u) w))")
                                  .assertions()[0],
                              m),
            TruthValue::False);
}

TEST(Assignment, MissingOracleBinary)
{
  OracleClient bad(SolverProfile::z3("/nonexistent/storm-no-such-solver"));
  auto s = parse_script("(declare-const a Bool)(assert a)");
  EXPECT_THROW(bad.generate_assignment(s, 1), OracleUnavailable);
}

TEST(Evaluate, Disjunction)
{
  auto sig = signature_of(parse_script("(declare-const a Bool)(declare-const b Bool)"));
  auto m = bool_assignment({{"a", false}, {"b", true}});
  EXPECT_EQ(oracle().evaluate(parse_term("(or a b)", sig), m), TruthValue::True);
}

TEST(Evaluate, GroundArithmetic)
{
  Signature sig;
  EXPECT_EQ(oracle().evaluate(parse_term("(and (> 5 3) (not (> 2 3)))", sig), Assignment{}),
            TruthValue::True);
  EXPECT_EQ(oracle().evaluate(parse_term("(> 2 3)", sig), Assignment{}), TruthValue::False);
}

TEST(Evaluate, QuantifiedClosedPredicate)
{
  auto s = parse_script("(declare-const x Int)(assert (forall ((y Int)) (or (< y x) (>= y x))))");
  auto m = oracle().generate_assignment(s, 9);
  EXPECT_EQ(oracle().evaluate(s.assertions()[0], m), TruthValue::True);
}

TEST(Evaluate, AgreesWithTruthTable)
{
  Rng rng(2024);
  auto before = oracle().query_count();
  for (int i = 0; i < 200; ++i)
  {
    std::size_t n = 1 + rng.below(8);
    auto t = test::random_skeleton(rng, n, 12);
    auto env = test::row_env(n, rng.below(std::uint64_t{1} << n));
    auto expected = truth(test::eval_bool(*t, env));
    EXPECT_EQ(oracle().evaluate(t, bool_assignment(env)), expected) << to_string(*t);
  }
  EXPECT_GE(oracle().query_count() - before, 200u);
}

TEST(Evaluate, BatchMatchesSingle)
{
  auto sig = signature_of(parse_script(bool_decls(3)));
  std::vector<TermPtr> preds{parse_term("(and p0 p1)", sig), parse_term("(xor p1 p2)", sig),
                             parse_term("(=> p0 p2)", sig)};
  auto m = bool_assignment({{"p0", true}, {"p1", false}, {"p2", true}});
  EXPECT_EQ(oracle().evaluate_all(preds, m),
            (std::vector<TruthValue>{TruthValue::False, TruthValue::True, TruthValue::True}));
}

TEST(GroundTruth, TrueAndFalse)
{
  auto sat = instance_from_script(parse_script("(assert true)(check-sat)"));
  auto unsat = instance_from_script(parse_script("(assert false)(check-sat)"));
  EXPECT_EQ(oracle().check_ground_truth(sat), Verdict::sat);
  EXPECT_EQ(oracle().check_ground_truth(unsat), Verdict::unsat);
}
