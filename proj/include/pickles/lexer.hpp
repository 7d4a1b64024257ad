// Line-aware tokenizer for the DSL. Keywords are ordinary words; the
// parser does the phrase matching and is sensitive to capitalization
// ("And" joins steps, "AND" joins guard clauses).
#pragma once

#include <string>
#include <vector>

#include "pickles/diagnostics.hpp"

namespace pickles {

enum class Tok {
  Word,
  Quoted,   // "identifier"; text excludes the quotes
  Number,   // [-]digits[.digits]
  LBrace, RBrace,
  LBracket, RBracket,
  LParen, RParen,
  Comma,
  Colon,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
  bool line_start = false;  // first token on its line
  bool has_dot = false;     // Number: decimal point present
};

struct TokenStream {
  std::vector<Token> tokens;          // terminated by one End token
  std::vector<std::string> lines;     // source lines for raw-slice capture

  // Raw text from the start of `tok` to the end of its line, trimmed.
  std::string rest_of_line(const Token& tok) const;
};

TokenStream lex(const std::string& source);

}  // namespace pickles
