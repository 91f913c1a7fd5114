#include "storm/solver.hpp"

#include <fnmatch.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <fstream>

#include "storm/error.hpp"

namespace storm {

namespace {

constexpr std::size_t excerpt_limit = 4096;

std::string
excerpt(const std::string& s)
{
  return s.size() <= excerpt_limit ? s : s.substr(0, excerpt_limit);
}

std::string
trim(std::string_view s)
{
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

int
severity(Verdict v)
{
  switch (v)
  {
    case Verdict::unsat: return 2;
    case Verdict::unknown: return 1;
    default: return 0;
  }
}

std::filesystem::path
temp_instance_path()
{
  static std::atomic<std::uint64_t> counter{0};
  return std::filesystem::temp_directory_path()
         / ("storm-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + ".smt2");
}

}  // namespace

std::string_view
to_string(Verdict v)
{
  switch (v)
  {
    case Verdict::sat: return "sat";
    case Verdict::unsat: return "unsat";
    case Verdict::unknown: return "unknown";
    case Verdict::crash: return "crash";
    case Verdict::timeout: return "timeout";
  }
  return "unknown";
}

std::optional<Verdict>
verdict_from_string(std::string_view s)
{
  if (s == "sat") return Verdict::sat;
  if (s == "unsat") return Verdict::unsat;
  if (s == "unknown") return Verdict::unknown;
  if (s == "crash") return Verdict::crash;
  if (s == "timeout") return Verdict::timeout;
  return std::nullopt;
}

std::string_view
to_string(BugClass c)
{
  switch (c)
  {
    case BugClass::A: return "A";
    case BugClass::C: return "C";
    case BugClass::D: return "D";
  }
  return "?";
}

bool
glob_match(const std::string& pattern, const std::string& text)
{
  return ::fnmatch(pattern.c_str(), text.c_str(), 0) == 0;
}

void
SolverProfile::validate() const
{
  if (id.empty()) throw ConfigError("solver profile without id");
  if (binary.empty()) throw ConfigError("solver '" + id + "' has no binary");
  if (!(timeout_seconds > 0)) throw ConfigError("solver '" + id + "': timeout must be positive");
  if (!args.empty())
  {
    auto n = std::count(args.begin(), args.end(), "{file}");
    if (n != 1)
    {
      throw ConfigError("solver '" + id + "': args must reference {file} exactly once");
    }
  }
  if (args.empty() && pipe_args.empty() && binary.empty())
  {
    throw ConfigError("solver '" + id + "' has no command line");
  }
}

bool
SolverProfile::supports_logic(const std::string& logic) const
{
  return std::any_of(logics.begin(), logics.end(), [&](const std::string& p) {
    return glob_match(p, logic);
  });
}

SolverProfile
SolverProfile::z3(std::string binary)
{
  SolverProfile p;
  p.id = "z3";
  p.binary = std::move(binary);
  p.args = {"-smt2", "{file}"};
  p.pipe_args = {"-in", "-smt2"};
  p.session_options = {"(set-option :smt.random_seed {seed})",
                       "(set-option :sat.random_seed {seed})",
                       "(set-option :timeout {timeout_ms})"};
  return p;
}

std::vector<Verdict>
parse_verdicts(std::string_view output)
{
  std::vector<Verdict> result;
  std::size_t pos = 0;
  while (pos <= output.size())
  {
    auto nl = output.find('\n', pos);
    if (nl == std::string_view::npos) nl = output.size();
    std::string line = trim(output.substr(pos, nl - pos));
    if (line == "sat") result.push_back(Verdict::sat);
    else if (line == "unsat") result.push_back(Verdict::unsat);
    else if (line == "unknown") result.push_back(Verdict::unknown);
    pos = nl + 1;
  }
  return result;
}

Verdict
worst_verdict(const std::vector<Verdict>& verdicts)
{
  Verdict worst = Verdict::sat;
  for (Verdict v : verdicts)
  {
    if (severity(v) > severity(worst)) worst = v;
  }
  return worst;
}

SolverOutcome
interpret_run(const ProcessResult& r, std::size_t check_points)
{
  SolverOutcome o;
  o.stdout_excerpt = excerpt(r.out);
  o.stderr_excerpt = excerpt(r.err);
  o.exit_code = r.exit_code;
  o.signal = r.signal;
  o.wall_seconds = r.wall_seconds;
  o.verdicts = parse_verdicts(r.out);
  bool died = r.signal != 0 || r.exit_code >= 128;
  bool unsat_seen = std::find(o.verdicts.begin(), o.verdicts.end(), Verdict::unsat) != o.verdicts.end();
  if (r.timed_out)
  {
    o.verdict = Verdict::timeout;
  }
  else if (died && !unsat_seen)
  {
    o.verdict = Verdict::crash;
  }
  else if (died)
  {
    o.verdict = Verdict::unsat;
  }
  else if (!o.verdicts.empty())
  {
    o.verdict = check_points <= 1 ? o.verdicts.front() : worst_verdict(o.verdicts);
  }
  else if (r.out.find("out of memory") != std::string::npos
           || r.err.find("out of memory") != std::string::npos
           || r.err.find("std::bad_alloc") != std::string::npos)
  {
    o.verdict = Verdict::timeout;
  }
  else if (r.exit_code != 0 || r.signal != 0)
  {
    o.verdict = Verdict::crash;
  }
  else
  {
    o.verdict = Verdict::unknown;
  }
  return o;
}

SolverOutcome
run_solver(const SolverProfile& profile,
           const Instance& instance,
           RunMode mode,
           const std::filesystem::path& file)
{
  std::string text = instance.to_smt2();
  std::vector<std::string> argv{profile.binary};
  std::string input;
  std::filesystem::path temp;
  if (mode == RunMode::pipe || profile.args.empty())
  {
    argv.insert(argv.end(), profile.pipe_args.begin(), profile.pipe_args.end());
    input = std::move(text);
  }
  else
  {
    std::filesystem::path path = file;
    if (path.empty())
    {
      temp = temp_instance_path();
      path = temp;
    }
    if (!std::filesystem::exists(path))
    {
      std::ofstream out(path, std::ios::binary);
      out << text;
    }
    for (const auto& a : profile.args) argv.push_back(a == "{file}" ? path.string() : a);
  }
  ProcessOptions options;
  options.memory_limit_mb = profile.memory_limit_mb;
  auto timeout = std::chrono::milliseconds(static_cast<long long>(profile.timeout_seconds * 1000));
  ProcessResult r;
  try
  {
    r = run_process(argv, input, timeout, options);
  }
  catch (...)
  {
    if (!temp.empty()) std::filesystem::remove(temp);
    throw;
  }
  if (!temp.empty()) std::filesystem::remove(temp);
  return interpret_run(r, instance.check_point_count());
}

std::optional<BugClass>
classify(const SolverOutcome& outcome,
         const std::optional<std::string>& logic,
         const std::vector<std::string>& decidable_logics)
{
  switch (outcome.verdict)
  {
    case Verdict::unsat: return BugClass::A;
    case Verdict::crash: return BugClass::D;
    case Verdict::unknown:
      if (logic && std::any_of(decidable_logics.begin(), decidable_logics.end(),
                               [&](const std::string& p) { return glob_match(p, *logic); }))
      {
        return BugClass::C;
      }
      return std::nullopt;
    case Verdict::sat:
    case Verdict::timeout: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace storm
