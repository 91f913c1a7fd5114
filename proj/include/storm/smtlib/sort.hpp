#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace storm::smtlib {

/**
 * An SMT-LIB sort: a name with numeral indices (e.g. the width of a
 * bitvector) and sort parameters (e.g. the index and element sorts of an
 * array). Equality is structural.
 */
struct Sort
{
  std::string name;
  std::vector<std::uint64_t> indices;
  std::vector<Sort> args;

  bool operator==(const Sort&) const = default;

  static Sort boolean() { return {"Bool", {}, {}}; }
  static Sort integer() { return {"Int", {}, {}}; }
  static Sort real() { return {"Real", {}, {}}; }
  static Sort string() { return {"String", {}, {}}; }
  static Sort reglan() { return {"RegLan", {}, {}}; }
  static Sort bitvec(std::uint64_t width) { return {"BitVec", {width}, {}}; }
  static Sort array(Sort index, Sort element)
  {
    return {"Array", {}, {std::move(index), std::move(element)}};
  }
  static Sort named(std::string name) { return {std::move(name), {}, {}}; }

  bool is_bool() const { return name == "Bool" && args.empty(); }
  bool is_int() const { return name == "Int" && args.empty(); }
  bool is_real() const { return name == "Real" && args.empty(); }
  bool is_numeric() const { return is_int() || is_real(); }
  bool is_bitvec() const { return name == "BitVec" && indices.size() == 1; }
  bool is_array() const { return name == "Array" && args.size() >= 2; }
  std::uint64_t width() const { return indices.at(0); }
};

/** SMT-LIB rendering, e.g. "(_ BitVec 8)" or "(Array Int Bool)". */
std::string to_string(const Sort& sort);

std::size_t hash_value(const Sort& sort);

}  // namespace storm::smtlib
