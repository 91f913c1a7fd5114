#include "storm/campaign.hpp"

#include <glob.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "storm/error.hpp"
#include "storm/rng.hpp"
#include "storm/smtlib/parser.hpp"
#include "storm/smtlib/printer.hpp"

namespace storm {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using smtlib::Script;

namespace {

std::string
trim(std::string_view s)
{
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string>
split_list(const std::string& v, char sep)
{
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, sep))
  {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::string>
split_words(const std::string& v)
{
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string w;
  while (ss >> w) out.push_back(w);
  return out;
}

template <typename T>
T
number(const std::string& key, const std::string& v)
{
  T out{};
  auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
  {
    throw ConfigError("bad value '" + v + "' for " + key);
  }
  return out;
}

double
real_number(const std::string& key, const std::string& v)
{
  char* end = nullptr;
  double d = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0') throw ConfigError("bad value '" + v + "' for " + key);
  return d;
}

bool
boolean(const std::string& key, const std::string& v)
{
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw ConfigError("bad value '" + v + "' for " + key);
}

std::string
resolve_path(const std::string& p, const fs::path& base)
{
  if (p.find('/') == std::string::npos) return p;
  fs::path path(p);
  if (path.is_relative()) path = base / path;
  return path.lexically_normal().string();
}

std::optional<std::string>
which(const std::string& binary)
{
  if (binary.find('/') != std::string::npos)
  {
    if (::access(binary.c_str(), X_OK) == 0) return fs::absolute(binary).lexically_normal().string();
    return std::nullopt;
  }
  const char* path = std::getenv("PATH");
  for (const auto& dir : split_list(path ? path : "", ':'))
  {
    fs::path candidate = fs::path(dir) / binary;
    if (::access(candidate.c_str(), X_OK) == 0 && !fs::is_directory(candidate))
    {
      return candidate.string();
    }
  }
  return std::nullopt;
}

void
apply_preset(SolverProfile& p, const std::string& preset)
{
  if (preset == "z3")
  {
    SolverProfile z = SolverProfile::z3(p.binary);
    p.args = z.args;
    p.pipe_args = z.pipe_args;
    p.session_options = z.session_options;
  }
  else if (preset == "generic")
  {
    p.args = {"{file}"};
    p.pipe_args = {};
  }
  else
  {
    throw ConfigError("unknown preset '" + preset + "'");
  }
}

void
solver_key(SolverProfile& p, const std::string& key, const std::string& v, const fs::path& base)
{
  if (key == "binary")
  {
    p.binary = resolve_path(v, base);
    if (fs::path(p.binary).filename() == "z3") apply_preset(p, "z3");
  }
  else if (key == "preset") apply_preset(p, v);
  else if (key == "args") p.args = split_words(v);
  else if (key == "pipe_args") p.pipe_args = split_words(v);
  else if (key == "incremental") p.incremental = boolean(key, v);
  else if (key == "timeout") p.timeout_seconds = real_number(key, v);
  else if (key == "memory_mb") p.memory_limit_mb = number<std::uint64_t>(key, v);
  else if (key == "logics") p.logics = split_list(v, ',');
  else if (key == "session_option") p.session_options.push_back(v);
  else throw ConfigError("unknown solver key '" + key + "'");
}

std::pair<std::size_t, std::size_t>&
range_end(CampaignConfig& c, const std::string& key, bool& low)
{
  low = key.size() > 4 && key.compare(key.size() - 4, 4, "_min") == 0;
  return key.rfind("nc_", 0) == 0 ? c.nc_range : c.nm_range;
}

void
campaign_key(CampaignConfig& c, const std::string& key, const std::string& v, const fs::path& base)
{
  if (key == "seeds")
  {
    for (const auto& s : split_list(v, ','))
    {
      fs::path p(s);
      c.seeds.push_back(p.is_relative() ? (base / p).lexically_normal().string() : s);
    }
  }
  else if (key == "out") c.out = fs::path(v).is_relative() ? base / v : fs::path(v);
  else if (key == "seed") c.master_seed = number<std::uint64_t>(key, v);
  else if (key == "d_max") c.d_max = number<std::size_t>(key, v);
  else if (key == "a_max") c.a_max = number<std::size_t>(key, v);
  else if (key == "nc") c.nc = number<std::size_t>(key, v);
  else if (key == "nm") c.nm = number<std::size_t>(key, v);
  else if (key == "nc_min" || key == "nc_max" || key == "nm_min" || key == "nm_max")
  {
    bool low = false;
    auto& r = range_end(c, key, low);
    (low ? r.first : r.second) = number<std::size_t>(key, v);
  }
  else if (key == "incremental") c.incremental = boolean(key, v);
  else if (key == "workers") c.workers = number<std::size_t>(key, v);
  else if (key == "stop_after_bugs") c.stop_after_bugs = number<std::size_t>(key, v);
  else if (key == "logics_allow") c.logic_allow = split_list(v, ',');
  else if (key == "logics_deny") c.logic_deny = split_list(v, ',');
  else if (key == "decidable_logics") c.decidable_logics = split_list(v, ',');
  else if (key == "minimize_bugs") c.minimize_bugs = number<std::size_t>(key, v);
  else if (key == "minimize_nm") c.minimize_nm = number<std::size_t>(key, v);
  else if (key == "record_timing") c.record_timing = boolean(key, v);
  else if (key == "oracle_timeout") c.oracle_timeout_seconds = real_number(key, v);
  else throw ConfigError("unknown campaign key '" + key + "'");
}

std::string
sanitize(const std::string& s)
{
  std::string out;
  for (char c : s)
  {
    bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    out += ok ? c : '_';
  }
  if (out.empty() || out == "." || out == "..") out = "seed";
  return out;
}

void
write_file(const fs::path& path, const std::string& content)
{
  fs::create_directories(path.parent_path());
  std::ostringstream tmp_name;
  tmp_name << path.filename().string() << ".tmp." << ::getpid() << "."
           << std::hash<std::thread::id>{}(std::this_thread::get_id());
  fs::path tmp = path.parent_path() / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

std::string
read_file(const fs::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json
tally_json(const Tally& t)
{
  return json{{"generated", t.generated}, {"sat", t.sat},         {"unsat", t.unsat},
              {"unknown", t.unknown},     {"crash", t.crash},     {"timeout", t.timeout}};
}

json
profile_json(const SolverProfile& p)
{
  return json{{"id", p.id},
              {"binary", p.binary},
              {"args", p.args},
              {"pipe_args", p.pipe_args},
              {"incremental", p.incremental},
              {"timeout", p.timeout_seconds},
              {"memory_mb", p.memory_limit_mb},
              {"logics", p.logics},
              {"session_options", p.session_options}};
}

SolverProfile
profile_from_json(const json& j)
{
  SolverProfile p;
  p.id = j.at("id").get<std::string>();
  p.binary = j.at("binary").get<std::string>();
  p.args = j.at("args").get<std::vector<std::string>>();
  p.pipe_args = j.at("pipe_args").get<std::vector<std::string>>();
  p.incremental = j.at("incremental").get<bool>();
  p.timeout_seconds = j.at("timeout").get<double>();
  p.memory_limit_mb = j.at("memory_mb").get<std::uint64_t>();
  p.logics = j.at("logics").get<std::vector<std::string>>();
  p.session_options = j.at("session_options").get<std::vector<std::string>>();
  return p;
}

json
stats_json(const InstanceStats& s)
{
  return json{{"bytes", s.bytes}, {"assertions", s.assertions}, {"depth", s.depth}};
}

json
trace_json(const MinimizationResult& r)
{
  json steps = json::array();
  for (const auto& s : r.trace)
  {
    steps.push_back(json{{"stage", std::string(to_string(s.stage))},
                         {"lo", s.lo},
                         {"hi", s.hi},
                         {"bound", s.bound},
                         {"found", s.found},
                         {"bugs", s.bugs}});
  }
  return json{{"original", stats_json(r.original)},
              {"minimized", stats_json(r.minimized)},
              {"fuzz_calls", r.fuzz_calls},
              {"reproduced", r.reproduced},
              {"final_verdict", std::string(to_string(r.final_outcome.verdict))},
              {"steps", steps}};
}

/** Script text without provenance metadata, for duplicate detection. */
std::uint64_t
structural_key(const Script& s)
{
  std::string text;
  for (const auto& c : s.commands())
  {
    if (c.kind == smtlib::CommandKind::set_info) continue;
    text += smtlib::print_command(c);
    text += '\n';
  }
  return stable_hash(text);
}

RunMode
mode_for(const SolverProfile& p, const Instance& i)
{
  return i.has_push_pop() && p.incremental ? RunMode::pipe : RunMode::file;
}

SolverOutcome
guarded_run(const SolverProfile& p, const Instance& i, RunMode mode, const fs::path& file = {})
{
  try
  {
    return run_solver(p, i, mode, file);
  }
  catch (const SpawnError& e)
  {
    SolverOutcome o;
    o.verdict = Verdict::crash;
    o.exit_code = 127;
    o.stderr_excerpt = e.what();
    return o;
  }
}

/** Writes each instance to its mutant file, then runs the solver on it. */
class CampaignRunner : public InstanceRunner
{
 public:
  CampaignRunner(const SolverProfile& p, fs::path dir) : d_profile(p), d_dir(std::move(dir)) {}

  SolverOutcome run(const Instance& i) override
  {
    fs::path file = d_dir / ("mutant-" + std::to_string(i.provenance.iteration) + ".smt2");
    write_file(file, i.to_smt2());
    return guarded_run(d_profile, i, mode_for(d_profile, i), file);
  }

 private:
  const SolverProfile& d_profile;
  fs::path d_dir;
};

/** Runs on temporary files; used while minimizing. */
class ScratchRunner : public InstanceRunner
{
 public:
  explicit ScratchRunner(const SolverProfile& p) : d_profile(p) {}

  SolverOutcome run(const Instance& i) override
  {
    return guarded_run(d_profile, i, mode_for(d_profile, i));
  }

 private:
  const SolverProfile& d_profile;
};

struct RunRecord
{
  std::size_t iteration;
  Verdict verdict;
  double wall;
  int exit_code;
};

struct TaskOutput
{
  TaskReport report;
  std::vector<RunRecord> runs;
  std::vector<BugEntry> bugs;
};

struct SeedState
{
  std::optional<Assignment> assignment;
  std::optional<Pool> pool;
  std::optional<std::string> error;
};

class Logger
{
 public:
  explicit Logger(bool quiet) : d_quiet(quiet) {}
  void operator()(const std::string& msg)
  {
    if (d_quiet) return;
    std::lock_guard<std::mutex> lock(d_mutex);
    std::cerr << "storm-forge: " << msg << "\n";
  }

 private:
  bool d_quiet;
  std::mutex d_mutex;
};

FuzzConfig
fuzz_config(const CampaignConfig& cfg, const std::string& seed_id)
{
  FuzzConfig fc;
  fc.nc = cfg.nc;
  fc.nm = cfg.nm;
  fc.d_max = cfg.d_max;
  fc.a_max = cfg.a_max;
  fc.incremental = cfg.incremental;
  fc.rng_seed = derive_seed(cfg.master_seed, "fuzz/" + seed_id);
  fc.nc_range = cfg.nc_range;
  fc.nm_range = cfg.nm_range;
  fc.stop_after = cfg.stop_after_bugs;
  return fc;
}

std::uint64_t
assignment_seed(const CampaignConfig& cfg, const std::string& seed_id)
{
  return derive_seed(cfg.master_seed, "assignment/" + seed_id);
}

json
bug_json(const BugEntry& b, const CampaignConfig* cfg, const SolverProfile& solver,
         const SolverProfile& oracle, double oracle_timeout, const FuzzConfig& fc,
         std::uint64_t assign_seed)
{
  const BugReport& r = b.report;
  json j{{"id", r.id},
         {"class", std::string(to_string(r.bug_class))},
         {"solver", r.solver_id},
         {"verdict", std::string(to_string(r.outcome.verdict))},
         {"exit_code", r.outcome.exit_code},
         {"signal", r.outcome.signal},
         {"seed", r.seed_id},
         {"seed_path", r.seed_path},
         {"rng_seed", r.rng_seed},
         {"iteration", r.iteration},
         {"instance_path", r.instance_path},
         {"minimized_path", r.minimized_path ? json(*r.minimized_path) : json(nullptr)},
         {"duplicate_of", b.duplicate_of ? json(*b.duplicate_of) : json(nullptr)},
         {"stdout", r.outcome.stdout_excerpt},
         {"stderr", r.outcome.stderr_excerpt}};
  if (b.minimization) j["minimization"] = trace_json(*b.minimization);
  j["replay"] = json{{"solver", profile_json(solver)},
                     {"oracle", profile_json(oracle)},
                     {"oracle_timeout", oracle_timeout},
                     {"assignment_seed", assign_seed},
                     {"d_max", fc.d_max},
                     {"a_max", fc.a_max},
                     {"nc", fc.nc ? json(*fc.nc) : json(nullptr)},
                     {"nm", fc.nm ? json(*fc.nm) : json(nullptr)},
                     {"incremental", fc.incremental},
                     {"decidable_logics", cfg ? cfg->decidable_logics : default_decidable_logics}};
  return j;
}

}  // namespace

void
Tally::add(Verdict v)
{
  ++generated;
  switch (v)
  {
    case Verdict::sat: ++sat; break;
    case Verdict::unsat: ++unsat; break;
    case Verdict::unknown: ++unknown; break;
    case Verdict::crash: ++crash; break;
    case Verdict::timeout: ++timeout; break;
  }
}

Tally&
Tally::operator+=(const Tally& o)
{
  generated += o.generated;
  sat += o.sat;
  unsat += o.unsat;
  unknown += o.unknown;
  crash += o.crash;
  timeout += o.timeout;
  return *this;
}

std::size_t
CampaignReport::unique_bugs() const
{
  return static_cast<std::size_t>(std::count_if(
      bugs.begin(), bugs.end(), [](const BugEntry& b) { return !b.duplicate_of; }));
}

void
CampaignConfig::validate() const
{
  if (seeds.empty()) throw ConfigError("no seeds configured");
  if (solvers.empty()) throw ConfigError("no solvers configured");
  std::set<std::string> ids;
  for (const auto& s : solvers)
  {
    s.validate();
    if (!ids.insert(s.id).second) throw ConfigError("duplicate solver id '" + s.id + "'");
    if (!which(s.binary)) throw ConfigError("solver binary not found: " + s.binary);
  }
  if (oracle.binary.empty()) throw ConfigError("no oracle configured");
  if (!which(oracle.binary)) throw ConfigError("oracle binary not found: " + oracle.binary);
  if (!(oracle_timeout_seconds > 0)) throw ConfigError("oracle_timeout must be positive");
  if (d_max < 1 || a_max < 1) throw ConfigError("d_max and a_max must be positive");
  if (nc_range.first > nc_range.second || nm_range.first > nm_range.second)
  {
    throw ConfigError("empty nc/nm range");
  }
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (out.empty()) throw ConfigError("no output directory");
}

CampaignConfig
parse_config(const std::string& text, const fs::path& base)
{
  CampaignConfig c;
  enum class Section
  {
    none,
    campaign,
    solver,
    oracle,
  } section = Section::none;
  std::stringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line))
  {
    ++lineno;
    std::string l = trim(line);
    if (l.empty() || l[0] == '#' || l[0] == ';') continue;
    if (l.front() == '[')
    {
      if (l.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": bad section");
      auto words = split_words(l.substr(1, l.size() - 2));
      if (words.size() == 1 && words[0] == "campaign") section = Section::campaign;
      else if (words.size() == 1 && words[0] == "oracle") section = Section::oracle;
      else if (words.size() == 2 && words[0] == "solver")
      {
        section = Section::solver;
        SolverProfile p;
        p.id = words[1];
        p.args = {"{file}"};
        c.solvers.push_back(p);
      }
      else
      {
        throw ConfigError("line " + std::to_string(lineno) + ": unknown section " + l);
      }
      continue;
    }
    auto eq = l.find('=');
    if (eq == std::string::npos)
    {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(l.substr(0, eq));
    std::string value = trim(l.substr(eq + 1));
    try
    {
      switch (section)
      {
        case Section::campaign: campaign_key(c, key, value, base); break;
        case Section::solver: solver_key(c.solvers.back(), key, value, base); break;
        case Section::oracle:
          if (key == "timeout") c.oracle_timeout_seconds = real_number(key, value);
          else solver_key(c.oracle, key, value, base);
          break;
        case Section::none:
          throw ConfigError("key outside of a section");
      }
    }
    catch (const ConfigError& e)
    {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return c;
}

CampaignConfig
load_config(const fs::path& path)
{
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
  return parse_config(ss.str(), base);
}

void
apply_environment(CampaignConfig& cfg)
{
  const char* o = std::getenv("STORM_ORACLE");
  if (o && *o)
  {
    cfg.oracle = SolverProfile::z3(o);
    cfg.oracle.id = fs::path(o).filename().string();
  }
}

std::vector<fs::path>
expand_seeds(const std::vector<std::string>& patterns)
{
  std::set<fs::path> found;
  for (const auto& p : patterns)
  {
    if (p.find_first_of("*?[") != std::string::npos)
    {
      glob_t g{};
      if (::glob(p.c_str(), 0, nullptr, &g) == 0)
      {
        for (std::size_t i = 0; i < g.gl_pathc; ++i)
        {
          fs::path f(g.gl_pathv[i]);
          if (fs::is_regular_file(f)) found.insert(f);
        }
      }
      ::globfree(&g);
    }
    else if (fs::is_directory(p))
    {
      for (const auto& e : fs::recursive_directory_iterator(p))
      {
        if (e.is_regular_file() && e.path().extension() == ".smt2") found.insert(e.path());
      }
    }
    else if (fs::is_regular_file(p))
    {
      found.insert(p);
    }
  }
  return {found.begin(), found.end()};
}

std::vector<const Seed*>
filter_seeds(const std::vector<Seed>& seeds,
             const SolverProfile& solver,
             const std::vector<std::string>& allow,
             const std::vector<std::string>& deny)
{
  auto any = [](const std::vector<std::string>& pats, const std::string& logic) {
    return std::any_of(pats.begin(), pats.end(),
                       [&](const std::string& p) { return glob_match(p, logic); });
  };
  std::vector<const Seed*> kept;
  for (const auto& s : seeds)
  {
    auto logic = s.script.logic();
    if (logic)
    {
      if (any(deny, *logic)) continue;
      if (!allow.empty() && !any(allow, *logic)) continue;
      if (!solver.supports_logic(*logic)) continue;
      kept.push_back(&s);
      continue;
    }
    SolverOutcome probe = guarded_run(solver, instance_from_script(s.script), RunMode::file);
    if (!probe.verdicts.empty()) kept.push_back(&s);
  }
  return kept;
}

CampaignReport
run_campaign(const CampaignConfig& cfg)
{
  auto t0 = Clock::now();
  cfg.validate();
  Logger log(cfg.quiet);
  CampaignReport report;

  auto files = expand_seeds(cfg.seeds);
  if (files.empty()) throw ConfigError("no seed files match the configured patterns");
  fs::create_directories(cfg.out);

  std::vector<Seed> seeds;
  std::set<std::string> used_ids;
  for (const auto& f : files)
  {
    std::string base = sanitize(f.stem().string());
    std::string id = base;
    for (int n = 2; used_ids.count(id); ++n) id = base + "-" + std::to_string(n);
    try
    {
      Script s = smtlib::parse_script(read_file(f));
      if (s.assertions().empty() && s.declarations().empty())
      {
        throw Error("seed has no declarations or assertions");
      }
      used_ids.insert(id);
      seeds.push_back({id, f, std::move(s)});
    }
    catch (const std::exception& e)
    {
      report.rejected_seeds.emplace_back(f.string(), e.what());
      log("skipping seed " + f.string() + ": " + e.what());
    }
  }

  std::vector<std::vector<const Seed*>> kept;
  for (const auto& solver : cfg.solvers)
  {
    kept.push_back(filter_seeds(seeds, solver, cfg.logic_allow, cfg.logic_deny));
  }

  struct Task
  {
    std::size_t seed;
    std::size_t solver;
  };
  std::vector<Task> tasks;
  std::vector<bool> seed_needed(seeds.size(), false);
  for (std::size_t i = 0; i < seeds.size(); ++i)
  {
    for (std::size_t j = 0; j < cfg.solvers.size(); ++j)
    {
      if (std::find(kept[j].begin(), kept[j].end(), &seeds[i]) != kept[j].end())
      {
        tasks.push_back({i, j});
        seed_needed[i] = true;
      }
    }
  }

  auto oracle_path = which(cfg.oracle.binary);
  for (const auto& s : cfg.solvers)
  {
    if (which(s.binary) == oracle_path) report.oracle_is_target = true;
  }
  if (report.oracle_is_target) log("warning: the oracle binary is also a solver under test");

  std::size_t nworkers = std::max<std::size_t>(1, cfg.workers);
  OracleOptions oracle_options{cfg.oracle_timeout_seconds};

  // phase 1 per seed: assignment and initial pool
  std::vector<SeedState> states(seeds.size());
  {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      OracleClient oracle(cfg.oracle, oracle_options);
      while (true)
      {
        std::size_t i = next++;
        if (i >= seeds.size()) break;
        if (!seed_needed[i]) continue;
        const Seed& s = seeds[i];
        try
        {
          Assignment m = oracle.generate_assignment(s.script, assignment_seed(cfg, s.id));
          states[i].pool = populate_initial_pool(s.script, cfg.d_max, m, oracle);
          states[i].assignment = std::move(m);
        }
        catch (const std::exception& e)
        {
          states[i].error = e.what();
          log("seed " + s.id + " skipped: " + e.what());
        }
      }
    };
    std::vector<std::thread> threads;
    for (std::size_t w = 1; w < nworkers; ++w) threads.emplace_back(work);
    work();
    for (auto& t : threads) t.join();
  }

  // phase 2 per (seed, solver) pair
  std::vector<TaskOutput> outputs(tasks.size());
  {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      std::unique_ptr<OracleClient> oracle;
      while (true)
      {
        std::size_t t = next++;
        if (t >= tasks.size()) break;
        const Seed& seed = seeds[tasks[t].seed];
        const SolverProfile& solver = cfg.solvers[tasks[t].solver];
        const SeedState& state = states[tasks[t].seed];
        TaskOutput& out = outputs[t];
        out.report.seed_id = seed.id;
        out.report.solver_id = solver.id;
        if (state.error)
        {
          out.report.skipped = *state.error;
          continue;
        }
        try
        {
          FuzzConfig fc = fuzz_config(cfg, seed.id);
          CampaignRunner runner(solver, cfg.out / seed.id);
          FuzzResult r = fuzz(seed.script, fc, *state.pool, runner, seed.id, cfg.decidable_logics);
          out.report.initial_pool = r.initial_pool;
          out.report.construction_pool = r.construction_pool;
          out.report.stalled = r.stalled;
          out.report.nc = r.nc;
          out.report.nm = r.nm;
          for (const auto& run : r.runs)
          {
            out.report.tally.add(run.outcome.verdict);
            out.runs.push_back({run.iteration, run.outcome.verdict, run.outcome.wall_seconds,
                                run.outcome.exit_code});
          }
          std::size_t minimized = 0;
          for (const auto& hit : r.hits)
          {
            BugEntry b;
            BugReport& br = b.report;
            br.bug_class = hit.bug_class;
            br.id = sanitize(solver.id + "-" + seed.id + "-" + std::to_string(hit.iteration));
            br.solver_id = solver.id;
            br.outcome = hit.outcome;
            br.seed_id = seed.id;
            br.seed_path = seed.path.string();
            br.rng_seed = fc.rng_seed;
            br.iteration = hit.iteration;
            br.instance_path = "bugs/" + br.id + "/instance.smt2";
            write_file(cfg.out / br.instance_path, hit.instance.to_smt2());
            if (hit.bug_class == BugClass::A && minimized < cfg.minimize_bugs)
            {
              ++minimized;
              if (!oracle) oracle = std::make_unique<OracleClient>(cfg.oracle, oracle_options);
              const Assignment& m = *state.assignment;
              OracleClient& oc = *oracle;
              ScratchRunner scratch(solver);
              Fuzzer fuzzer = [&](const Script& s, const FuzzConfig& c) {
                return fuzz(s, c, oracle_evaluator(oc, m), scratch, seed.id + "-min",
                            cfg.decidable_logics);
              };
              FuzzConfig mc = fc;
              mc.nc = r.nc;
              mc.nm = cfg.minimize_nm;
              mc.stop_after = 0;
              MinimizationResult res = minimize(hit.instance.to_script(), mc, fuzzer, scratch);
              br.minimized_path = "bugs/" + br.id + "/min.smt2";
              write_file(cfg.out / *br.minimized_path, smtlib::print_script(res.script));
              write_file(cfg.out / ("bugs/" + br.id + "/trace.json"), trace_json(res).dump(2) + "\n");
              if (!res.reproduced) log("bug " + br.id + ": minimized instance does not reproduce");
              b.minimization = std::move(res);
            }
            out.bugs.push_back(std::move(b));
          }
          log("seed " + seed.id + " x " + solver.id + ": " + std::to_string(r.runs.size())
              + " instances, " + std::to_string(r.hits.size()) + " bugs");
        }
        catch (const std::exception& e)
        {
          out.report.skipped = e.what();
          log("seed " + seed.id + " x " + solver.id + " skipped: " + e.what());
        }
      }
    };
    std::vector<std::thread> threads;
    for (std::size_t w = 1; w < nworkers; ++w) threads.emplace_back(work);
    work();
    for (auto& t : threads) t.join();
  }

  // aggregation in task order
  std::map<std::pair<std::string, std::uint64_t>, std::string> first_of;
  std::ofstream runs(cfg.out / "runs.jsonl", std::ios::binary | std::ios::trunc);
  for (std::size_t t = 0; t < tasks.size(); ++t)
  {
    TaskOutput& out = outputs[t];
    for (const auto& r : out.runs)
    {
      json j{{"seed", out.report.seed_id},
             {"iter", r.iteration},
             {"solver", out.report.solver_id},
             {"verdict", std::string(to_string(r.verdict))},
             {"wall_time", cfg.record_timing ? json(r.wall) : json(nullptr)},
             {"exit_code", r.exit_code},
             {"instance_path", out.report.seed_id + "/mutant-" + std::to_string(r.iteration) + ".smt2"}};
      runs << j.dump() << "\n";
    }
    report.total += out.report.tally;
    const SolverProfile& solver = cfg.solvers[tasks[t].solver];
    FuzzConfig fc = fuzz_config(cfg, out.report.seed_id);
    fc.nc = out.report.nc;
    fc.nm = cfg.minimize_nm;
    for (auto& b : out.bugs)
    {
      if (b.report.bug_class == BugClass::A)
      {
        Script s = b.minimization ? b.minimization->script
                                  : smtlib::parse_script(read_file(cfg.out / b.report.instance_path));
        auto key = std::make_pair(solver.id, structural_key(s));
        auto [it, fresh] = first_of.emplace(key, b.report.id);
        if (!fresh) b.duplicate_of = it->second;
      }
      json j = bug_json(b, &cfg, solver, cfg.oracle, cfg.oracle_timeout_seconds, fc,
                        assignment_seed(cfg, out.report.seed_id));
      write_file(cfg.out / ("bugs/" + b.report.id + "/report.json"), j.dump(2) + "\n");
      report.bugs.push_back(std::move(b));
    }
    report.tasks.push_back(std::move(out.report));
  }
  runs.close();
  report.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();

  json tasks_json = json::array();
  for (const auto& t : report.tasks)
  {
    tasks_json.push_back(json{{"seed", t.seed_id},
                              {"solver", t.solver_id},
                              {"tally", tally_json(t.tally)},
                              {"initial_pool", t.initial_pool},
                              {"construction_pool", t.construction_pool},
                              {"stalled", t.stalled},
                              {"nc", t.nc},
                              {"nm", t.nm},
                              {"skipped", t.skipped ? json(*t.skipped) : json(nullptr)}});
  }
  json bugs_json = json::array();
  for (const auto& b : report.bugs)
  {
    json j{{"id", b.report.id},
           {"class", std::string(to_string(b.report.bug_class))},
           {"solver", b.report.solver_id},
           {"seed", b.report.seed_id},
           {"iteration", b.report.iteration},
           {"verdict", std::string(to_string(b.report.outcome.verdict))},
           {"instance_path", b.report.instance_path},
           {"minimized_path",
            b.report.minimized_path ? json(*b.report.minimized_path) : json(nullptr)},
           {"duplicate_of", b.duplicate_of ? json(*b.duplicate_of) : json(nullptr)}};
    if (b.minimization) j["minimization"] = trace_json(*b.minimization);
    bugs_json.push_back(std::move(j));
  }
  json rejected = json::array();
  for (const auto& [path, why] : report.rejected_seeds)
  {
    rejected.push_back(json{{"path", path}, {"reason", why}});
  }
  json solvers = json::array();
  for (const auto& s : cfg.solvers) solvers.push_back(profile_json(s));
  json rj{{"master_seed", cfg.master_seed},
          {"oracle", profile_json(cfg.oracle)},
          {"oracle_is_target", report.oracle_is_target},
          {"solvers", solvers},
          {"incremental", cfg.incremental},
          {"incremental_verdicts", "worst"},
          {"totals", tally_json(report.total)},
          {"bugs_found", report.bugs.size()},
          {"unique_bugs", report.unique_bugs()},
          {"wall_time_seconds", report.wall_seconds},
          {"tasks", tasks_json},
          {"rejected_seeds", rejected},
          {"bugs", bugs_json}};
  write_file(cfg.out / "report.json", rj.dump(2) + "\n");

  std::ostringstream txt;
  txt << "storm-forge campaign report\n";
  txt << "master seed: " << cfg.master_seed << "\n";
  txt << "oracle: " << cfg.oracle.binary << (report.oracle_is_target ? " (also under test)" : "")
      << "\n";
  txt << "seeds: " << seeds.size() << " usable, " << report.rejected_seeds.size() << " rejected\n";
  txt << "instances: " << report.total.generated << " (sat " << report.total.sat << ", unsat "
      << report.total.unsat << ", unknown " << report.total.unknown << ", crash "
      << report.total.crash << ", timeout " << report.total.timeout << ")\n";
  txt << "bugs: " << report.bugs.size() << " (" << report.unique_bugs() << " unique)\n";
  txt << "wall time: " << report.wall_seconds << " s\n\n";
  for (const auto& t : report.tasks)
  {
    txt << t.seed_id << " x " << t.solver_id << ": ";
    if (t.skipped)
    {
      txt << "skipped (" << *t.skipped << ")\n";
      continue;
    }
    txt << t.tally.generated << " instances, sat " << t.tally.sat << ", unsat " << t.tally.unsat
        << ", unknown " << t.tally.unknown << ", crash " << t.tally.crash << ", timeout "
        << t.tally.timeout << "\n";
  }
  if (!report.bugs.empty()) txt << "\n";
  for (const auto& b : report.bugs)
  {
    txt << "[" << to_string(b.report.bug_class) << "] " << b.report.id << " "
        << to_string(b.report.outcome.verdict) << " " << b.report.instance_path;
    if (b.minimization)
    {
      const auto& m = *b.minimization;
      txt << " minimized " << m.original.bytes << "/" << m.original.assertions << "/"
          << m.original.depth << " -> " << m.minimized.bytes << "/" << m.minimized.assertions
          << "/" << m.minimized.depth << (m.reproduced ? "" : " (not reproduced)");
    }
    if (b.duplicate_of) txt << " duplicate of " << *b.duplicate_of;
    txt << "\n";
  }
  write_file(cfg.out / "report.txt", txt.str());
  return report;
}

MinimizationResult
minimize_report(const fs::path& report_json)
{
  json j;
  try
  {
    j = json::parse(read_file(report_json));
  }
  catch (const json::exception& e)
  {
    throw ConfigError("cannot read bug report: " + std::string(e.what()));
  }
  catch (const Error& e)
  {
    throw ConfigError(e.what());
  }
  try
  {
    fs::path dir = report_json.parent_path();
    if (dir.empty()) dir = ".";
    const json& replay = j.at("replay");
    SolverProfile solver = profile_from_json(replay.at("solver"));
    SolverProfile oracle_profile = profile_from_json(replay.at("oracle"));
    FuzzConfig fc;
    fc.d_max = replay.at("d_max").get<std::size_t>();
    fc.a_max = replay.at("a_max").get<std::size_t>();
    if (!replay.at("nc").is_null()) fc.nc = replay.at("nc").get<std::size_t>();
    if (!replay.at("nm").is_null()) fc.nm = replay.at("nm").get<std::size_t>();
    fc.incremental = replay.at("incremental").get<bool>();
    fc.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    auto decidable = replay.at("decidable_logics").get<std::vector<std::string>>();
    std::uint64_t assign = replay.at("assignment_seed").get<std::uint64_t>();
    std::string seed_id = j.at("seed").get<std::string>();

    Script bug = smtlib::parse_script(read_file(dir / "instance.smt2"));
    OracleClient oracle(oracle_profile, {replay.at("oracle_timeout").get<double>()});
    Assignment m = oracle.generate_assignment(bug, assign);
    ScratchRunner scratch(solver);
    Fuzzer fuzzer = [&](const Script& s, const FuzzConfig& c) {
      return fuzz(s, c, oracle_evaluator(oracle, m), scratch, seed_id + "-min", decidable);
    };
    MinimizationResult res = minimize(bug, fc, fuzzer, scratch);
    write_file(dir / "min.smt2", smtlib::print_script(res.script));
    write_file(dir / "trace.json", trace_json(res).dump(2) + "\n");
    std::string rel = "bugs/" + j.at("id").get<std::string>() + "/min.smt2";
    j["minimized_path"] = rel;
    j["minimization"] = trace_json(res);
    write_file(report_json, j.dump(2) + "\n");
    return res;
  }
  catch (const json::exception& e)
  {
    throw ConfigError("malformed bug report: " + std::string(e.what()));
  }
}

}  // namespace storm
