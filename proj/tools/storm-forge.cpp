#include <unistd.h>

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "storm/campaign.hpp"
#include "storm/error.hpp"
#include "storm/mock.hpp"

namespace {

std::filesystem::path
self_path(const char* argv0)
{
  std::error_code ec;
  auto p = std::filesystem::read_symlink("/proc/self/exe", ec);
  if (!ec) return p;
  return std::filesystem::absolute(argv0);
}

int
run(const std::string& config,
    const std::vector<std::string>& seeds,
    const std::string& solver,
    const std::optional<std::uint64_t>& seed,
    bool incremental,
    const std::optional<std::size_t>& workers,
    const std::string& out,
    const std::optional<std::size_t>& nm,
    bool timing,
    bool quiet)
{
  storm::CampaignConfig cfg = storm::load_config(config);
  storm::apply_environment(cfg);
  if (!seeds.empty()) cfg.seeds = seeds;
  if (!solver.empty())
  {
    std::vector<storm::SolverProfile> keep;
    for (const auto& s : cfg.solvers)
    {
      if (s.id == solver) keep.push_back(s);
    }
    if (keep.empty()) throw storm::ConfigError("no solver '" + solver + "' in " + config);
    cfg.solvers = keep;
  }
  if (seed) cfg.master_seed = *seed;
  if (incremental) cfg.incremental = true;
  if (workers) cfg.workers = *workers;
  if (!out.empty()) cfg.out = out;
  if (nm) cfg.nm = *nm;
  if (timing) cfg.record_timing = true;
  if (quiet) cfg.quiet = true;

  storm::CampaignReport report = storm::run_campaign(cfg);
  std::ifstream txt(cfg.out / "report.txt");
  if (!quiet) std::cout << txt.rdbuf();
  return report.bugs.empty() ? 0 : 1;
}

int
mock_serve(const std::string& behavior, const std::string& file)
{
  storm::MockBehavior b = storm::parse_behavior(behavior);
  std::string text;
  if (b.kind != storm::MockBehavior::Kind::sleep_forever
      && b.kind != storm::MockBehavior::Kind::exit_code
      && !(b.kind == storm::MockBehavior::Kind::honest_forward && !file.empty()))
  {
    std::ostringstream ss;
    if (file.empty())
    {
      ss << std::cin.rdbuf();
    }
    else
    {
      std::ifstream in(file, std::ios::binary);
      if (!in)
      {
        std::cout << "(error \"cannot open " << file << "\")" << std::endl;
        return 1;
      }
      ss << in.rdbuf();
    }
    text = ss.str();
  }
  return storm::mock_serve(b, text, file);
}

}  // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"Mutational fuzzer for SMT solvers"};
  app.require_subcommand(1);

  std::string config, out, solver;
  std::vector<std::string> seeds;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers, nm;
  bool incremental = false, timing = false, quiet = false;
  auto* run_cmd = app.add_subcommand("run", "Run a fuzzing campaign");
  run_cmd->add_option("--config", config, "Campaign file")->required();
  run_cmd->add_option("--seeds", seeds, "Seed files or globs (replace the configured ones)");
  run_cmd->add_option("--solver", solver, "Only fuzz this solver id");
  run_cmd->add_option("--seed", seed, "Master rng seed");
  run_cmd->add_flag("--incremental", incremental, "Generate push/pop instances");
  run_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  run_cmd->add_option("--out", out, "Output directory");
  run_cmd->add_option("--nm", nm, "Instances per seed and solver");
  run_cmd->add_flag("--timing", timing, "Record wall times in runs.jsonl");
  run_cmd->add_flag("--quiet", quiet, "No progress output");

  std::string bug;
  auto* min_cmd = app.add_subcommand("minimize", "Minimize a bug found by a campaign");
  min_cmd->add_option("--bug", bug, "bugs/<id>/report.json")->required();

  std::string behavior, mock_out;
  auto* mock_cmd = app.add_subcommand("mock", "Install a misbehaving mock solver");
  mock_cmd->add_option("--behavior", behavior, "Behavior spec")->required();
  mock_cmd->add_option("--out", mock_out, "Path of the executable to write")->required();

  std::string serve_behavior, serve_file;
  auto* serve_cmd = app.add_subcommand("mock-serve", "Act as a mock solver");
  serve_cmd->group("");
  serve_cmd->add_option("--behavior", serve_behavior)->required();
  serve_cmd->add_option("file", serve_file);
  serve_cmd->allow_extras();

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::signal(SIGPIPE, SIG_IGN);
  try
  {
    if (*run_cmd)
    {
      return run(config, seeds, solver, seed, incremental, workers, out, nm, timing, quiet);
    }
    if (*min_cmd)
    {
      auto res = storm::minimize_report(bug);
      std::cout << "minimized " << res.original.bytes << "/" << res.original.assertions << "/"
                << res.original.depth << " -> " << res.minimized.bytes << "/"
                << res.minimized.assertions << "/" << res.minimized.depth << " in "
                << res.fuzz_calls << " fuzz calls"
                << (res.reproduced ? "" : " (does not reproduce)") << "\n";
      return res.reproduced ? 0 : 1;
    }
    if (*mock_cmd)
    {
      storm::write_mock(storm::parse_behavior(behavior), mock_out, self_path(argv[0]));
      return 0;
    }
    if (*serve_cmd)
    {
      std::signal(SIGPIPE, SIG_DFL);
      return mock_serve(serve_behavior, serve_file);
    }
  }
  catch (const storm::ConfigError& e)
  {
    std::cerr << "storm-forge: " << e.what() << "\n";
    return 2;
  }
  catch (const std::exception& e)
  {
    std::cerr << "storm-forge: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
