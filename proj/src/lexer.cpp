#include "pickles/lexer.hpp"

#include <cctype>

namespace pickles {

namespace {

bool is_delim(char c) {
  switch (c) {
    case '"': case '{': case '}': case '[': case ']':
    case '(': case ')': case ',': case ':':
      return true;
    default:
      return std::isspace(static_cast<unsigned char>(c)) != 0;
  }
}

bool is_number(const std::string& w, bool* has_dot) {
  std::size_t i = w[0] == '-' ? 1 : 0;
  if (i >= w.size()) return false;
  bool digits = false, dot = false;
  for (; i < w.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(w[i]))) {
      digits = true;
    } else if (w[i] == '.' && !dot && digits) {
      dot = true;
      digits = false;  // require digits after the dot too
    } else {
      return false;
    }
  }
  *has_dot = dot;
  return digits;
}

}  // namespace

std::string TokenStream::rest_of_line(const Token& tok) const {
  if (tok.pos.line == 0 || tok.pos.line > static_cast<int>(lines.size())) return "";
  const std::string& line = lines[tok.pos.line - 1];
  std::string s = line.substr(tok.pos.col - 1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

TokenStream lex(const std::string& source) {
  TokenStream ts;
  std::string current;
  for (char c : source) {
    if (c == '\n') {
      ts.lines.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  ts.lines.push_back(current);

  for (std::size_t li = 0; li < ts.lines.size(); ++li) {
    const std::string& line = ts.lines[li];
    bool first_on_line = true;
    std::size_t i = 0;
    while (i < line.size()) {
      char c = line[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      Token t;
      t.pos = {static_cast<int>(li + 1), static_cast<int>(i + 1)};
      t.line_start = first_on_line;
      first_on_line = false;
      switch (c) {
        case '"': {
          std::size_t end = line.find('"', i + 1);
          if (end == std::string::npos)
            throw SyntaxError(t.pos, "unterminated quoted identifier");
          t.kind = Tok::Quoted;
          t.text = line.substr(i + 1, end - i - 1);
          i = end + 1;
          break;
        }
        case '{': t.kind = Tok::LBrace; t.text = "{"; ++i; break;
        case '}': t.kind = Tok::RBrace; t.text = "}"; ++i; break;
        case '[': t.kind = Tok::LBracket; t.text = "["; ++i; break;
        case ']': t.kind = Tok::RBracket; t.text = "]"; ++i; break;
        case '(': t.kind = Tok::LParen; t.text = "("; ++i; break;
        case ')': t.kind = Tok::RParen; t.text = ")"; ++i; break;
        case ',': t.kind = Tok::Comma; t.text = ","; ++i; break;
        case ':': t.kind = Tok::Colon; t.text = ":"; ++i; break;
        default: {
          std::size_t start = i;
          while (i < line.size() && !is_delim(line[i])) ++i;
          t.text = line.substr(start, i - start);
          bool dot = false;
          t.kind = is_number(t.text, &dot) ? Tok::Number : Tok::Word;
          t.has_dot = dot;
          break;
        }
      }
      ts.tokens.push_back(std::move(t));
    }
  }
  Token end;
  end.kind = Tok::End;
  end.pos = {static_cast<int>(ts.lines.size()), 1};
  end.line_start = true;
  ts.tokens.push_back(end);
  return ts;
}

}  // namespace pickles
