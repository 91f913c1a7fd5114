#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace storm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

/// Lexical or syntactic fault in SMT-LIB input.
class ParseError : public Error
{
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": "
              + message),
        d_line(line),
        d_column(column)
  {
  }

  std::size_t line() const { return d_line; }
  std::size_t column() const { return d_column; }

 private:
  std::size_t d_line;
  std::size_t d_column;
};

/// Ill-sorted term.
class SortError : public Error
{
 public:
  using Error::Error;
};

/// Well-formed input that uses a construct outside the supported grammar.
class UnsupportedError : public Error
{
 public:
  using Error::Error;
};

/// Substitution hit a free symbol the assignment does not cover.
class MissingBinding : public Error
{
 public:
  explicit MissingBinding(const std::string& symbol)
      : Error("no binding for symbol '" + symbol + "'"), d_symbol(symbol)
  {
  }
  const std::string& symbol() const { return d_symbol; }

 private:
  std::string d_symbol;
};

/// The oracle binary is missing, crashed or produced unusable output.
class OracleUnavailable : public Error
{
 public:
  using Error::Error;
};

/// Neither the assertions nor their negation produced a model.
class SeedRejected : public Error
{
 public:
  using Error::Error;
};

/// No predicate of the seed survived fragmentation.
class EmptyPool : public Error
{
 public:
  using Error::Error;
};

/// A solver process could not be started.
class SpawnError : public Error
{
 public:
  using Error::Error;
};

/// Invalid campaign configuration or command line.
class ConfigError : public Error
{
 public:
  using Error::Error;
};

}  // namespace storm
