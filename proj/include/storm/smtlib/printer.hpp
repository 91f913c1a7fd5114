#pragma once

#include <iosfwd>
#include <string>

#include "storm/smtlib/script.hpp"

namespace storm::smtlib {

/** One command per line, terminated by a newline. */
std::string print_script(const Script& script);
std::string print_command(const Command& command);
void print_script(std::ostream& out, const Script& script);

}  // namespace storm::smtlib
