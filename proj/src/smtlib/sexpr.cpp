#include "storm/smtlib/sexpr.hpp"

#include <cctype>

#include "storm/error.hpp"

namespace storm::smtlib {

namespace {

bool
is_symbol_char(char c)
{
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  switch (c)
  {
    case '~': case '!': case '@': case '$': case '%': case '^': case '&':
    case '*': case '_': case '-': case '+': case '=': case '<': case '>':
    case '.': case '?': case '/':
      return true;
    default: return false;
  }
}

bool
is_digit(char c)
{
  return c >= '0' && c <= '9';
}

class Lexer
{
 public:
  explicit Lexer(std::string_view text) : d_text(text) {}

  std::vector<SExpr> read_all()
  {
    std::vector<SExpr> result;
    for (;;)
    {
      skip_space();
      if (at_end()) break;
      result.push_back(read());
    }
    return result;
  }

 private:
  bool at_end() const { return d_pos >= d_text.size(); }
  char peek() const { return d_text[d_pos]; }

  void advance()
  {
    if (d_text[d_pos] == '\n')
    {
      ++d_line;
      d_column = 1;
    }
    else
    {
      ++d_column;
    }
    ++d_pos;
  }

  [[noreturn]] void fail(const std::string& msg) const
  {
    throw ParseError(d_line, d_column, msg);
  }

  void skip_space()
  {
    while (!at_end())
    {
      char c = peek();
      if (c == ';')
      {
        while (!at_end() && peek() != '\n') advance();
      }
      else if (std::isspace(static_cast<unsigned char>(c)))
      {
        advance();
      }
      else
      {
        break;
      }
    }
  }

  SExpr read()
  {
    // Iterative on lists so that deeply nested input cannot overflow the
    // stack of the lexer.
    std::vector<SExpr> stack;
    for (;;)
    {
      skip_space();
      if (at_end())
      {
        fail(stack.empty() ? "unexpected end of input"
                           : "unbalanced parenthesis");
      }
      char c = peek();
      if (c == '(')
      {
        SExpr list;
        list.kind = SExpr::Kind::list;
        list.line = d_line;
        list.column = d_column;
        advance();
        stack.push_back(std::move(list));
        continue;
      }
      SExpr done;
      if (c == ')')
      {
        if (stack.empty()) fail("unexpected ')'");
        advance();
        done = std::move(stack.back());
        stack.pop_back();
      }
      else
      {
        done = read_atom();
      }
      if (stack.empty()) return done;
      stack.back().children.push_back(std::move(done));
    }
  }

  SExpr read_atom()
  {
    SExpr e;
    e.line = d_line;
    e.column = d_column;
    std::size_t start = d_pos;
    char c = peek();
    if (c == '"')
    {
      advance();
      for (;;)
      {
        if (at_end()) fail("unterminated string literal");
        if (peek() == '"')
        {
          advance();
          if (!at_end() && peek() == '"')
          {
            advance();
            continue;
          }
          break;
        }
        advance();
      }
      e.kind = SExpr::Kind::string;
      e.text = std::string(d_text.substr(start, d_pos - start));
      return e;
    }
    if (c == '|')
    {
      advance();
      while (!at_end() && peek() != '|')
      {
        if (peek() == '\\') fail("backslash in quoted symbol");
        advance();
      }
      if (at_end()) fail("unterminated quoted symbol");
      advance();
      e.kind = SExpr::Kind::symbol;
      e.quoted = true;
      e.text = std::string(d_text.substr(start + 1, d_pos - start - 2));
      return e;
    }
    if (c == '#')
    {
      advance();
      if (at_end()) fail("incomplete literal");
      char base = peek();
      advance();
      std::size_t digits = 0;
      while (!at_end()
             && (base == 'x' ? std::isxdigit(static_cast<unsigned char>(peek()))
                             : (peek() == '0' || peek() == '1')))
      {
        advance();
        ++digits;
      }
      if ((base != 'x' && base != 'b') || digits == 0)
      {
        fail("malformed bitvector literal");
      }
      e.kind = base == 'x' ? SExpr::Kind::hexadecimal : SExpr::Kind::binary;
      e.text = std::string(d_text.substr(start, d_pos - start));
      return e;
    }
    if (c == ':')
    {
      advance();
      while (!at_end() && is_symbol_char(peek())) advance();
      if (d_pos - start == 1) fail("empty keyword");
      e.kind = SExpr::Kind::keyword;
      e.text = std::string(d_text.substr(start, d_pos - start));
      return e;
    }
    if (is_digit(c))
    {
      while (!at_end() && is_digit(peek())) advance();
      e.kind = SExpr::Kind::numeral;
      if (!at_end() && peek() == '.')
      {
        advance();
        std::size_t frac = 0;
        while (!at_end() && is_digit(peek()))
        {
          advance();
          ++frac;
        }
        if (frac == 0) fail("malformed decimal");
        e.kind = SExpr::Kind::decimal;
      }
      if (!at_end() && is_symbol_char(peek())) fail("malformed numeral");
      e.text = std::string(d_text.substr(start, d_pos - start));
      return e;
    }
    if (is_symbol_char(c))
    {
      while (!at_end() && is_symbol_char(peek())) advance();
      e.kind = SExpr::Kind::symbol;
      e.text = std::string(d_text.substr(start, d_pos - start));
      return e;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view d_text;
  std::size_t d_pos = 0;
  std::size_t d_line = 1;
  std::size_t d_column = 1;
};

void
render(const SExpr& e, std::string& out)
{
  if (e.is_symbol())
  {
    out += quote_symbol(e.text);
    return;
  }
  if (e.is_atom())
  {
    out += e.text;
    return;
  }
  out += '(';
  for (std::size_t i = 0; i < e.children.size(); ++i)
  {
    if (i) out += ' ';
    render(e.children[i], out);
  }
  out += ')';
}

}  // namespace

std::size_t
SExpr::node_count() const
{
  std::size_t n = 1;
  for (const auto& c : children) n += c.node_count();
  return n;
}

std::vector<SExpr>
read_sexprs(std::string_view text)
{
  return Lexer(text).read_all();
}

std::string
to_string(const SExpr& e)
{
  std::string out;
  render(e, out);
  return out;
}

bool
is_simple_symbol(std::string_view name)
{
  if (name.empty() || is_digit(name.front())) return false;
  for (char c : name)
  {
    if (!is_symbol_char(c)) return false;
  }
  return true;
}

std::string
quote_symbol(std::string_view name)
{
  if (is_simple_symbol(name)) return std::string(name);
  return "|" + std::string(name) + "|";
}

}  // namespace storm::smtlib
