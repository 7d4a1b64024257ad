// Error types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace pickles {

// Position in a source text, 1-based. line == 0 means "no position".
struct SourcePos {
  int line = 0;
  int col = 0;
};

inline std::string to_string(const SourcePos& p) {
  if (p.line == 0) return "";
  return std::to_string(p.line) + ":" + std::to_string(p.col);
}

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed source text. Carries the position and what was expected.
class SyntaxError : public Error {
 public:
  SyntaxError(SourcePos pos, const std::string& msg, std::string expected = "")
      : Error(format(pos, msg, expected)), pos_(pos), expected_(std::move(expected)) {}

  SourcePos pos() const { return pos_; }
  const std::string& expected() const { return expected_; }

 private:
  static std::string format(SourcePos pos, const std::string& msg, const std::string& expected) {
    std::string s = "syntax error";
    if (pos.line) s += " at " + to_string(pos);
    s += ": " + msg;
    if (!expected.empty()) s += " (expected " + expected + ")";
    return s;
  }

  SourcePos pos_;
  std::string expected_;
};

// Well-formed text that violates a declaration or typing rule.
class SemanticError : public Error {
 public:
  explicit SemanticError(const std::string& msg, SourcePos pos = {})
      : Error(pos.line ? "semantic error at " + to_string(pos) + ": " + msg
                       : "semantic error: " + msg),
        pos_(pos) {}

  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

// Evaluation over a valuation failed (missing variable, kind mismatch).
class EvalError : public Error {
 public:
  explicit EvalError(const std::string& msg) : Error("evaluation error: " + msg) {}
};

// A serialized document does not match the interchange schema.
// `path` is a JSON-pointer-like location inside the document.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& path, const std::string& msg)
      : Error("schema error at " + path + ": " + msg), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// A caller broke a documented precondition (internal misuse, exit code 2).
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& msg) : Error("internal error: " + msg) {}
};

}  // namespace pickles
