#include <gtest/gtest.h>

#include <sys/stat.h>

#include "paths.hpp"
#include "storm/error.hpp"
#include "storm/mock.hpp"
#include "storm/smtlib/parser.hpp"
#include "storm/solver.hpp"

using namespace storm;

namespace {

class Mock : public ::testing::Test
{
 protected:
  Mock() : d_dir("mock") {}

  SolverOutcome run(const std::string& spec, const std::string& text, RunMode mode = RunMode::file)
  {
    auto path = d_dir / ("mock-" + std::to_string(d_count++));
    write_mock(parse_behavior(spec), path, test::storm_forge_binary);
    SolverProfile p;
    p.id = "mock";
    p.binary = path.string();
    p.args = {"{file}"};
    p.timeout_seconds = 20;
    return run_solver(p, instance_from_script(smtlib::parse_script(text)), mode);
  }

  test::TempDir d_dir;
  int d_count = 0;
};

const std::string decls =
    "(set-logic QF_LIA)(declare-const storm_marker Int)(declare-const y Int)";

}  // namespace

TEST(MockBehavior, Parse)
{
  auto b = parse_behavior("unsat-on-trigger:storm_marker:3:2");
  EXPECT_EQ(b.kind, MockBehavior::Kind::unsat_on_trigger);
  EXPECT_EQ(b.symbol, "storm_marker");
  EXPECT_EQ(b.min_asserts, 3u);
  EXPECT_EQ(b.min_depth, 2u);
  EXPECT_EQ(to_string(b), "unsat-on-trigger:storm_marker:3:2");
  EXPECT_EQ(parse_behavior("crash-on-trigger:x").min_asserts, 1u);
  EXPECT_EQ(parse_behavior("exit:7").code, 7);
  EXPECT_EQ(parse_behavior("honest-forward").binary, "z3");
  EXPECT_EQ(parse_behavior("honest-forward:/opt/z3").binary, "/opt/z3");
  EXPECT_EQ(parse_behavior("sleep-forever").kind, MockBehavior::Kind::sleep_forever);
}

TEST(MockBehavior, Malformed)
{
  EXPECT_THROW(parse_behavior("unsat-on-trigger"), ConfigError);
  EXPECT_THROW(parse_behavior("unsat-on-trigger:x:0"), ConfigError);
  EXPECT_THROW(parse_behavior("unsat-on-trigger:x:two"), ConfigError);
  EXPECT_THROW(parse_behavior("exit:300"), ConfigError);
  EXPECT_THROW(parse_behavior("unknown-always:1"), ConfigError);
  EXPECT_THROW(parse_behavior("explode"), ConfigError);
}

TEST_F(Mock, WrapperIsExecutable)
{
  auto path = d_dir / "w";
  write_mock(parse_behavior("unknown-always"), path, test::storm_forge_binary);
  struct stat st{};
  ASSERT_EQ(::stat(path.c_str(), &st), 0);
  EXPECT_TRUE(st.st_mode & S_IXUSR);
}

TEST_F(Mock, UnsatExactlyFromThreeMentions)
{
  std::string two = decls + "(assert (> storm_marker 0))(assert (< storm_marker 9))(assert (> y 0))(check-sat)";
  std::string three = decls
                      + "(assert (> storm_marker 0))(assert (< storm_marker 9))"
                        "(assert (> (+ y storm_marker) 0))(check-sat)";
  EXPECT_EQ(run("unsat-on-trigger:storm_marker:3:1", two).verdict, Verdict::sat);
  EXPECT_EQ(run("unsat-on-trigger:storm_marker:3:1", three).verdict, Verdict::unsat);
}

TEST_F(Mock, TriggerRespectsFrames)
{
  std::string text = decls
                     + "(assert (> storm_marker 0))(push 1)(assert (< storm_marker 9))"
                       "(assert (< storm_marker 8))(check-sat)(pop 1)(check-sat)";
  auto o = run("unsat-on-trigger:storm_marker:3:1", text, RunMode::pipe);
  EXPECT_EQ(o.verdicts, (std::vector<Verdict>{Verdict::unsat, Verdict::sat}));
}

TEST_F(Mock, TriggerRespectsDepth)
{
  std::string shallow = decls + "(assert (> storm_marker 0))(check-sat)";
  std::string deep = decls + "(assert (not (and (> storm_marker 0) (> y 0))))(check-sat)";
  EXPECT_EQ(run("unsat-on-trigger:storm_marker:1:4", shallow).verdict, Verdict::sat);
  EXPECT_EQ(run("unsat-on-trigger:storm_marker:1:4", deep).verdict, Verdict::unsat);
}

TEST_F(Mock, HonestForward)
{
  std::string text = "(assert true)(check-sat)";
  auto spec = "honest-forward:" + test::z3_binary;
  EXPECT_EQ(run(spec, text).verdict, Verdict::sat);
  EXPECT_EQ(run(spec, text, RunMode::pipe).verdict, Verdict::sat);
  EXPECT_EQ(run(spec, "(assert false)(check-sat)").verdict, Verdict::unsat);
}

TEST_F(Mock, UnknownAlwaysIsClassCOnDecidableLogics)
{
  auto o = run("unknown-always", decls + "(assert (> y 0))(check-sat)");
  EXPECT_EQ(o.verdict, Verdict::unknown);
  EXPECT_EQ(classify(o, "QF_LIA"), BugClass::C);
  EXPECT_EQ(classify(o, "QF_BV"), BugClass::C);
  EXPECT_EQ(classify(o, "LIA"), std::nullopt);
}

TEST_F(Mock, CrashOnTrigger)
{
  std::string calm = decls + "(assert (> y 0))(check-sat)";
  std::string hot = decls + "(assert (> storm_marker y))(check-sat)";
  EXPECT_EQ(run("crash-on-trigger:storm_marker", calm).verdict, Verdict::sat);
  auto o = run("crash-on-trigger:storm_marker", hot);
  EXPECT_EQ(o.verdict, Verdict::crash);
  EXPECT_EQ(o.exit_code, mock_crash_status);
}

TEST_F(Mock, ExitCode)
{
  auto o = run("exit:3", "(check-sat)");
  EXPECT_EQ(o.exit_code, 3);
  EXPECT_EQ(o.verdict, Verdict::crash);
}
