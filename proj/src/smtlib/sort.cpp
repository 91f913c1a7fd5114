#include "storm/smtlib/sort.hpp"

#include <functional>

#include "storm/smtlib/sexpr.hpp"

namespace storm::smtlib {

std::string
to_string(const Sort& sort)
{
  std::string head = quote_symbol(sort.name);
  if (!sort.indices.empty())
  {
    head = "(_ " + head;
    for (auto i : sort.indices) head += " " + std::to_string(i);
    head += ")";
  }
  if (sort.args.empty()) return head;
  std::string out = "(" + head;
  for (const auto& a : sort.args) out += " " + to_string(a);
  return out + ")";
}

std::size_t
hash_value(const Sort& sort)
{
  std::size_t h = std::hash<std::string>{}(sort.name);
  for (auto i : sort.indices) h = h * 31 + std::hash<std::uint64_t>{}(i);
  for (const auto& a : sort.args) h = h * 131 + hash_value(a);
  return h;
}

}  // namespace storm::smtlib
