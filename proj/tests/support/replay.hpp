#pragma once

#include <algorithm>
#include <vector>

#include "storm/instance.hpp"
#include "truth_table.hpp"

namespace storm::test {

/// Outcome of walking an instance's push/pop frames.
struct Replay
{
  bool underflow = false;
  std::size_t max_level = 0;
  std::size_t final_level = 0;
  /// Truth of the active assertions at each check point.
  std::vector<bool> checks;
};

inline Replay
replay(const Instance& inst, const Env& env)
{
  using smtlib::CommandKind;
  Replay r;
  std::vector<std::vector<smtlib::TermPtr>> frames(1);
  for (const auto& c : inst.body)
  {
    switch (c.kind)
    {
      case CommandKind::assertion: frames.back().push_back(c.term); break;
      case CommandKind::push:
        for (std::uint64_t i = 0; i < c.count; ++i) frames.emplace_back();
        r.max_level = std::max(r.max_level, frames.size() - 1);
        break;
      case CommandKind::pop:
        for (std::uint64_t i = 0; i < c.count; ++i)
        {
          if (frames.size() == 1)
          {
            r.underflow = true;
            continue;
          }
          frames.pop_back();
        }
        break;
      case CommandKind::check_sat:
      {
        bool all = true;
        for (const auto& f : frames)
          for (const auto& t : f) all = all && eval_bool(*t, env);
        r.checks.push_back(all);
        break;
      }
      default: break;
    }
  }
  r.final_level = frames.size() - 1;
  return r;
}

}  // namespace storm::test
