#include <gtest/gtest.h>

#include <csignal>
#include <thread>

#include "paths.hpp"
#include "storm/error.hpp"
#include "storm/mock.hpp"
#include "storm/process.hpp"
#include "storm/smtlib/parser.hpp"
#include "storm/solver.hpp"

using namespace storm;
using namespace std::chrono_literals;

namespace {

SolverOutcome
outcome(Verdict v)
{
  SolverOutcome o;
  o.verdict = v;
  return o;
}

Instance
inst(const std::string& text)
{
  return instance_from_script(smtlib::parse_script(text));
}

SolverProfile
mock_profile(const test::TempDir& dir, const std::string& spec, double timeout = 10)
{
  auto path = dir / "mock";
  write_mock(parse_behavior(spec), path, test::storm_forge_binary);
  SolverProfile p;
  p.id = "mock";
  p.binary = path.string();
  p.args = {"{file}"};
  p.timeout_seconds = timeout;
  return p;
}

}  // namespace

TEST(Verdicts, Parsing)
{
  EXPECT_EQ(parse_verdicts("sat\n"), std::vector<Verdict>{Verdict::sat});
  EXPECT_EQ(parse_verdicts("  unsat \r\nunknown\nsat"),
            (std::vector<Verdict>{Verdict::unsat, Verdict::unknown, Verdict::sat}));
  EXPECT_TRUE(parse_verdicts("(error \"line 1: unsatisfiable\")\nsaturday\n").empty());
  EXPECT_TRUE(parse_verdicts("").empty());
}

TEST(Verdicts, Names)
{
  for (auto v : {Verdict::sat, Verdict::unsat, Verdict::unknown, Verdict::crash, Verdict::timeout})
  {
    EXPECT_EQ(verdict_from_string(to_string(v)), v);
  }
  EXPECT_FALSE(verdict_from_string("maybe"));
}

TEST(Verdicts, WorstDominates)
{
  EXPECT_EQ(worst_verdict({Verdict::sat, Verdict::unknown}), Verdict::unknown);
  EXPECT_EQ(worst_verdict({Verdict::sat, Verdict::unsat, Verdict::unknown}), Verdict::unsat);
  EXPECT_EQ(worst_verdict({Verdict::sat, Verdict::sat}), Verdict::sat);
}

TEST(Interpret, Matrix)
{
  ProcessResult r;
  r.exit_code = 0;
  r.out = "sat\n";
  EXPECT_EQ(interpret_run(r, 1).verdict, Verdict::sat);
  r.out = "unsat\n";
  EXPECT_EQ(interpret_run(r, 1).verdict, Verdict::unsat);
  r.out = "";
  EXPECT_EQ(interpret_run(r, 1).verdict, Verdict::unknown);
  r.out = "sat\nunsat\n";
  EXPECT_EQ(interpret_run(r, 1).verdict, Verdict::sat);
  EXPECT_EQ(interpret_run(r, 2).verdict, Verdict::unsat);

  ProcessResult sig;
  sig.signal = SIGSEGV;
  sig.out = "sat\n";
  EXPECT_EQ(interpret_run(sig, 2).verdict, Verdict::crash);
  // an unsound answer outranks the crash that follows it
  sig.out = "unsat\n";
  EXPECT_EQ(interpret_run(sig, 2).verdict, Verdict::unsat);
  ProcessResult code;
  code.exit_code = 139;
  EXPECT_EQ(interpret_run(code, 1).verdict, Verdict::crash);
  ProcessResult slow;
  slow.timed_out = true;
  slow.out = "sat\n";
  EXPECT_EQ(interpret_run(slow, 1).verdict, Verdict::timeout);
  ProcessResult oom;
  oom.exit_code = 1;
  oom.err = "std::bad_alloc";
  EXPECT_EQ(interpret_run(oom, 1).verdict, Verdict::timeout);
}

TEST(Classify, Table)
{
  auto lia = std::optional<std::string>("QF_LIA");
  auto quant = std::optional<std::string>("UFLIA");
  EXPECT_EQ(classify(outcome(Verdict::unsat), lia), BugClass::A);
  EXPECT_EQ(classify(outcome(Verdict::unsat), quant), BugClass::A);
  EXPECT_EQ(classify(outcome(Verdict::unknown), lia), BugClass::C);
  EXPECT_EQ(classify(outcome(Verdict::unknown), quant), std::nullopt);
  EXPECT_EQ(classify(outcome(Verdict::unknown), std::nullopt), std::nullopt);
  EXPECT_EQ(classify(outcome(Verdict::crash), quant), BugClass::D);
  EXPECT_EQ(classify(outcome(Verdict::sat), lia), std::nullopt);
  EXPECT_EQ(classify(outcome(Verdict::timeout), lia), std::nullopt);
  EXPECT_EQ(classify(outcome(Verdict::unknown), quant, {"UF*"}), BugClass::C);
}

TEST(Profile, Validation)
{
  SolverProfile p;
  p.id = "x";
  p.binary = "x";
  p.args = {"-q"};
  EXPECT_THROW(p.validate(), ConfigError);
  p.args = {"{file}", "{file}"};
  EXPECT_THROW(p.validate(), ConfigError);
  p.args = {"--in={file}"};
  EXPECT_THROW(p.validate(), ConfigError);
  p.args = {"{file}"};
  EXPECT_NO_THROW(p.validate());
  p.args = {};
  EXPECT_NO_THROW(p.validate());
}

TEST(Profile, LogicPatterns)
{
  SolverProfile p;
  p.logics = {"QF_BV", "QF_*LIA"};
  EXPECT_TRUE(p.supports_logic("QF_BV"));
  EXPECT_TRUE(p.supports_logic("QF_UFLIA"));
  EXPECT_FALSE(p.supports_logic("QF_S"));
  EXPECT_TRUE(glob_match("*", "anything"));
}

TEST(Run, TrustedSolverFileAndPipe)
{
  auto z3 = SolverProfile::z3(test::z3_binary);
  auto t = inst("(declare-const a Bool)(assert a)(check-sat)");
  EXPECT_EQ(run_solver(z3, t, RunMode::file).verdict, Verdict::sat);
  EXPECT_EQ(run_solver(z3, t, RunMode::pipe).verdict, Verdict::sat);
  EXPECT_EQ(run_solver(z3, inst("(assert false)(check-sat)"), RunMode::file).verdict, Verdict::unsat);
  auto multi = inst("(declare-const a Bool)(assert a)(push 1)(assert (not a))(check-sat)(pop 1)(check-sat)");
  auto o = run_solver(z3, multi, RunMode::pipe);
  EXPECT_EQ(o.verdicts, (std::vector<Verdict>{Verdict::unsat, Verdict::sat}));
  EXPECT_EQ(o.verdict, Verdict::unsat);
}

TEST(Run, MissingBinary)
{
  SolverProfile p;
  p.id = "none";
  p.binary = "/nonexistent/storm-no-such-solver";
  p.args = {"{file}"};
  EXPECT_THROW(run_solver(p, inst("(check-sat)"), RunMode::file), SpawnError);
}

TEST(Run, CrashingMockIsClassD)
{
  test::TempDir dir("solver");
  auto p = mock_profile(dir, "exit:139");
  auto o = run_solver(p, inst("(assert true)(check-sat)"), RunMode::file);
  EXPECT_EQ(o.verdict, Verdict::crash);
  EXPECT_EQ(o.exit_code, 139);
  EXPECT_EQ(classify(o, "QF_LIA"), BugClass::D);
}

TEST(Run, TriggeredMockIsClassA)
{
  test::TempDir dir("solver");
  auto p = mock_profile(dir, "unsat-on-trigger:m:2");
  auto o = run_solver(p, inst("(declare-const m Bool)(assert m)(assert (not (not m)))(check-sat)"),
                      RunMode::file);
  EXPECT_EQ(o.verdict, Verdict::unsat);
  EXPECT_EQ(classify(o, "QF_UF"), BugClass::A);
}

TEST(Run, HangingMockTimesOut)
{
  test::TempDir dir("solver");
  auto p = mock_profile(dir, "sleep-forever", 0.5);
  auto start = Clock::now();
  auto o = run_solver(p, inst("(check-sat)"), RunMode::file);
  EXPECT_EQ(o.verdict, Verdict::timeout);
  EXPECT_LT(Clock::now() - start, 5s);
}

TEST(Process, CollectsOutputAndStatus)
{
  auto r = run_process({"/bin/sh", "-c", "cat; echo err >&2; exit 3"}, "hello\n", 5s);
  EXPECT_EQ(r.out, "hello\n");
  EXPECT_EQ(r.err, "err\n");
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_FALSE(r.timed_out);
}

TEST(Process, TimeoutKillsGroup)
{
  test::TempDir dir("proc");
  auto marker = dir / "child.pid";
  auto r = run_process({"/bin/sh", "-c", "sleep 100 & echo $! > " + marker.string() + "; wait"}, "",
                       300ms);
  EXPECT_TRUE(r.timed_out);
  auto pid = std::stoi(test::slurp(marker));
  // the grandchild is gone or a zombie awaiting init
  std::this_thread::sleep_for(100ms);
  auto stat = test::slurp("/proc/" + std::to_string(pid) + "/stat");
  if (!stat.empty()) EXPECT_NE(stat.find(") Z"), std::string::npos) << stat;
}
