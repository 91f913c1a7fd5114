#include "storm/mock.hpp"

#include <unistd.h>

#include <charconv>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <vector>

#include "storm/error.hpp"
#include "storm/smtlib/parser.hpp"
#include "storm/smtlib/term_ops.hpp"

namespace storm {

namespace {

std::vector<std::string>
split(std::string_view s, char sep)
{
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true)
  {
    auto next = s.find(sep, pos);
    parts.emplace_back(s.substr(pos, next == std::string_view::npos ? s.npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

std::size_t
positive(const std::string& s, std::string_view spec)
{
  std::size_t v = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size() || v == 0)
  {
    throw ConfigError("bad number '" + s + "' in mock behavior '" + std::string(spec) + "'");
  }
  return v;
}

std::string
shell_quote(const std::string& s)
{
  std::string out = "'";
  for (char c : s)
  {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

}  // namespace

MockBehavior
parse_behavior(std::string_view spec)
{
  auto parts = split(spec, ':');
  MockBehavior b;
  const std::string& head = parts[0];
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() - 1 < lo || parts.size() - 1 > hi)
    {
      throw ConfigError("wrong number of fields in mock behavior '" + std::string(spec) + "'");
    }
  };
  if (head == "honest-forward")
  {
    arity(0, 1);
    b.kind = MockBehavior::Kind::honest_forward;
    if (parts.size() > 1) b.binary = parts[1];
  }
  else if (head == "unsat-on-trigger")
  {
    arity(1, 3);
    b.kind = MockBehavior::Kind::unsat_on_trigger;
    b.symbol = parts[1];
    if (parts.size() > 2) b.min_asserts = positive(parts[2], spec);
    if (parts.size() > 3) b.min_depth = positive(parts[3], spec);
  }
  else if (head == "crash-on-trigger")
  {
    arity(1, 2);
    b.kind = MockBehavior::Kind::crash_on_trigger;
    b.symbol = parts[1];
    if (parts.size() > 2) b.min_asserts = positive(parts[2], spec);
  }
  else if (head == "unknown-always")
  {
    arity(0, 0);
    b.kind = MockBehavior::Kind::unknown_always;
  }
  else if (head == "sleep-forever")
  {
    arity(0, 0);
    b.kind = MockBehavior::Kind::sleep_forever;
  }
  else if (head == "exit")
  {
    arity(1, 1);
    b.kind = MockBehavior::Kind::exit_code;
    auto r = std::from_chars(parts[1].data(), parts[1].data() + parts[1].size(), b.code);
    if (r.ec != std::errc() || b.code < 0 || b.code > 255)
    {
      throw ConfigError("bad exit code in mock behavior '" + std::string(spec) + "'");
    }
  }
  else
  {
    throw ConfigError("unknown mock behavior '" + std::string(spec) + "'");
  }
  if ((b.kind == MockBehavior::Kind::unsat_on_trigger
       || b.kind == MockBehavior::Kind::crash_on_trigger)
      && b.symbol.empty())
  {
    throw ConfigError("mock behavior '" + std::string(spec) + "' needs a trigger symbol");
  }
  return b;
}

std::string
to_string(const MockBehavior& b)
{
  switch (b.kind)
  {
    case MockBehavior::Kind::honest_forward: return "honest-forward:" + b.binary;
    case MockBehavior::Kind::unsat_on_trigger:
      return "unsat-on-trigger:" + b.symbol + ":" + std::to_string(b.min_asserts) + ":"
             + std::to_string(b.min_depth);
    case MockBehavior::Kind::crash_on_trigger:
      return "crash-on-trigger:" + b.symbol + ":" + std::to_string(b.min_asserts);
    case MockBehavior::Kind::unknown_always: return "unknown-always";
    case MockBehavior::Kind::sleep_forever: return "sleep-forever";
    case MockBehavior::Kind::exit_code: return "exit:" + std::to_string(b.code);
  }
  return {};
}

int
mock_serve(const MockBehavior& b, const std::string& script_text, const std::string& file)
{
  using Kind = MockBehavior::Kind;
  if (b.kind == Kind::sleep_forever)
  {
    while (true) ::pause();
  }
  if (b.kind == Kind::exit_code) return b.code;
  if (b.kind == Kind::honest_forward)
  {
    std::vector<std::string> argv{b.binary, "-smt2"};
    if (file.empty())
    {
      // the script was consumed from stdin already; hand it over through a pipe
      int fds[2];
      if (::pipe(fds) != 0) return 1;
      pid_t pid = ::fork();
      if (pid == 0)
      {
        ::close(fds[0]);
        std::size_t done = 0;
        while (done < script_text.size())
        {
          auto n = ::write(fds[1], script_text.data() + done, script_text.size() - done);
          if (n <= 0) break;
          done += static_cast<std::size_t>(n);
        }
        ::_exit(0);
      }
      ::close(fds[1]);
      ::dup2(fds[0], 0);
      ::close(fds[0]);
      argv.push_back("-in");
    }
    else
    {
      argv.push_back(file);
    }
    std::vector<char*> args;
    for (auto& a : argv) args.push_back(a.data());
    args.push_back(nullptr);
    std::cout.flush();
    ::execvp(args[0], args.data());
    std::cerr << "cannot execute " << b.binary << "\n";
    return 127;
  }

  smtlib::Script script;
  try
  {
    script = smtlib::parse_script(script_text);
  }
  catch (const Error& e)
  {
    std::cout << "(error \"" << e.what() << "\")" << std::endl;
    return 1;
  }

  // assertions per open frame
  std::vector<std::vector<smtlib::TermPtr>> frames(1);
  auto triggered = [&] {
    std::size_t hits = 0;
    for (const auto& f : frames)
    {
      for (const auto& t : f)
      {
        if (t->depth() >= b.min_depth && smtlib::mentions_symbol(*t, b.symbol)) ++hits;
      }
    }
    return hits >= b.min_asserts;
  };
  for (const auto& c : script.commands())
  {
    switch (c.kind)
    {
      case smtlib::CommandKind::assertion: frames.back().push_back(c.term); break;
      case smtlib::CommandKind::push:
        for (std::uint64_t i = 0; i < c.count; ++i) frames.emplace_back();
        break;
      case smtlib::CommandKind::pop:
        for (std::uint64_t i = 0; i < c.count && frames.size() > 1; ++i) frames.pop_back();
        break;
      case smtlib::CommandKind::exit: return 0;
      default:
        if (!c.is_check_point()) break;
        if (b.kind == Kind::unknown_always)
        {
          std::cout << "unknown" << std::endl;
        }
        else if (b.kind == Kind::crash_on_trigger && triggered())
        {
          std::cout.flush();
          return mock_crash_status;
        }
        else if (b.kind == Kind::unsat_on_trigger && triggered())
        {
          std::cout << "unsat" << std::endl;
        }
        else
        {
          std::cout << "sat" << std::endl;
        }
    }
  }
  return 0;
}

void
write_mock(const MockBehavior& b,
           const std::filesystem::path& out,
           const std::filesystem::path& storm_forge)
{
  auto exe = std::filesystem::absolute(storm_forge);
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  {
    std::ofstream f(out, std::ios::trunc);
    if (!f) throw ConfigError("cannot write mock to " + out.string());
    f << "#!/bin/sh\nexec " << shell_quote(exe.string()) << " mock-serve --behavior "
      << shell_quote(to_string(b)) << " \"$@\"\n";
  }
  std::filesystem::permissions(out,
                               std::filesystem::perms::owner_all | std::filesystem::perms::group_read
                                   | std::filesystem::perms::group_exec
                                   | std::filesystem::perms::others_read
                                   | std::filesystem::perms::others_exec);
}

}  // namespace storm
