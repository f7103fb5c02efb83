#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ff {

// Minimal S-expression reader/writer. Atoms are bare tokens; lists are
// parenthesized. Strings with double quotes are supported for provenance
// fields in ledger files.
struct Sexpr {
  enum class Kind { Atom, List, Str };
  Kind kind = Kind::Atom;
  std::string atom;            // Kind::Atom or Kind::Str
  std::vector<Sexpr> items;    // Kind::List

  static Sexpr sym(std::string s) {
    Sexpr e;
    e.kind = Kind::Atom;
    e.atom = std::move(s);
    return e;
  }
  static Sexpr str(std::string s) {
    Sexpr e;
    e.kind = Kind::Str;
    e.atom = std::move(s);
    return e;
  }
  static Sexpr list(std::vector<Sexpr> xs) {
    Sexpr e;
    e.kind = Kind::List;
    e.items = std::move(xs);
    return e;
  }

  bool isAtom() const { return kind == Kind::Atom; }
  bool isList() const { return kind == Kind::List; }
  bool isStr() const { return kind == Kind::Str; }

  // Convenience accessors used by the file loaders.
  const Sexpr& at(size_t i) const {
    if (!isList() || i >= items.size()) throw std::runtime_error("sexpr: index out of range");
    return items[i];
  }
  size_t size() const { return isList() ? items.size() : 0; }
  bool headIs(const std::string& s) const {
    return isList() && !items.empty() && items[0].isAtom() && items[0].atom == s;
  }
};

struct SexprParseError : std::runtime_error {
  size_t line, col;
  SexprParseError(const std::string& msg, size_t line_, size_t col_)
      : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
        line(line_), col(col_) {}
};

class SexprReader {
 public:
  explicit SexprReader(std::string_view text) : text_(text) {}

  // Reads every top-level form in the input.
  std::vector<Sexpr> readAll() {
    std::vector<Sexpr> out;
    skipSpace();
    while (pos_ < text_.size()) {
      out.push_back(read());
      skipSpace();
    }
    return out;
  }

  Sexpr read() {
    skipSpace();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      advance();
      Sexpr e;
      e.kind = Sexpr::Kind::List;
      skipSpace();
      while (pos_ < text_.size() && text_[pos_] != ')') {
        e.items.push_back(read());
        skipSpace();
      }
      if (pos_ >= text_.size()) fail("missing ')'");
      advance();
      return e;
    }
    if (c == ')') fail("unexpected ')'");
    if (c == '"') {
      advance();
      std::string s;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) advance();
        s.push_back(text_[pos_]);
        advance();
      }
      if (pos_ >= text_.size()) fail("unterminated string");
      advance();
      return Sexpr::str(std::move(s));
    }
    std::string tok;
    while (pos_ < text_.size() && !isDelim(text_[pos_])) {
      tok.push_back(text_[pos_]);
      advance();
    }
    return Sexpr::sym(std::move(tok));
  }

 private:
  static bool isDelim(char c) {
    return c == '(' || c == ')' || c == '"' || c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ';';
  }
  void skipSpace() {
    for (;;) {
      while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
        advance();
      if (pos_ < text_.size() && text_[pos_] == ';') {  // line comment
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      break;
    }
  }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw SexprParseError(msg, line_, col_); }

  std::string_view text_;
  size_t pos_ = 0;
  size_t line_ = 1, col_ = 1;
};

inline void writeSexpr(std::string& out, const Sexpr& e) {
  switch (e.kind) {
    case Sexpr::Kind::Atom:
      out += e.atom;
      break;
    case Sexpr::Kind::Str:
      out += '"';
      for (char c : e.atom) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      out += '"';
      break;
    case Sexpr::Kind::List:
      out += '(';
      for (size_t i = 0; i < e.items.size(); ++i) {
        if (i) out += ' ';
        writeSexpr(out, e.items[i]);
      }
      out += ')';
      break;
  }
}

inline std::string toString(const Sexpr& e) {
  std::string s;
  writeSexpr(s, e);
  return s;
}

}  // namespace ff
