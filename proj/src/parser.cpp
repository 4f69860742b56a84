#include <cctype>
#include <sstream>

#include "gmv/error.hpp"
#include "gmv/formula.hpp"

namespace gmv {

namespace {

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += xs[i];
  }
  return out;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected,
                         const std::string& found)
    : Error("syntax error at offset " + std::to_string(offset) + ": expected one of {" +
            join(expected) + "}, found " + found),
      offset_(offset),
      expected_(std::move(expected)) {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

enum class Tok {
  End,
  Ident,
  True,
  False,
  LParen,
  RParen,
  Not,
  And,
  Or,
  Imp,
  Iff,
  BoxUp,
  DiaUp,
  BoxDown,
  DiaDown,
};

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, pos_, "end of input"});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool starts(std::string_view lit) const { return src_.substr(pos_, lit.size()) == lit; }

  Token next() {
    const std::size_t at = pos_;
    // Longest operators first: "<->" must win over "<>" and "<d>".
    static const std::pair<std::string_view, Tok> kOps[] = {
        {"<->", Tok::Iff},   {"->", Tok::Imp},    {"[u]", Tok::BoxUp}, {"<u>", Tok::DiaUp},
        {"[d]", Tok::BoxDown}, {"<d>", Tok::DiaDown}, {"[]", Tok::BoxUp}, {"<>", Tok::DiaUp},
        {"~", Tok::Not},     {"&", Tok::And},     {"|", Tok::Or},      {"(", Tok::LParen},
        {")", Tok::RParen},
    };
    for (const auto& [lit, kind] : kOps) {
      if (starts(lit)) {
        pos_ += lit.size();
        return {kind, at, std::string(lit)};
      }
    }
    const char c = src_[pos_];
    if (c >= 'a' && c <= 'z') {
      std::size_t end = pos_ + 1;
      while (end < src_.size() &&
             ((src_[end] >= 'a' && src_[end] <= 'z') || (src_[end] >= '0' && src_[end] <= '9'))) {
        ++end;
      }
      std::string word(src_.substr(pos_, end - pos_));
      pos_ = end;
      if (word == "true") return {Tok::True, at, word};
      if (word == "false") return {Tok::False, at, word};
      return {Tok::Ident, at, word};
    }
    throw SyntaxError(at, {"formula"}, std::string("'") + c + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula run() {
    Formula f = iff();
    expect_end();
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool accept(Tok t) {
    if (peek().kind != t) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? t.text : "'" + t.text + "'";
    throw SyntaxError(t.offset, std::move(expected), found);
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail({"&", "|", "->", "<->", ")", "end of input"});
  }

  Formula iff() {
    Formula f = imp();
    while (accept(Tok::Iff)) f = Formula::iff(f, imp());
    return f;
  }

  Formula imp() {
    Formula f = disj();
    if (accept(Tok::Imp)) return Formula::imp(f, imp());
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (accept(Tok::Or)) f = Formula::disj(f, conj());
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (accept(Tok::And)) f = Formula::conj(f, unary());
    return f;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::Not: ++pos_; return Formula::neg(unary());
      case Tok::BoxUp: ++pos_; return Formula::box(Direction::Up, unary());
      case Tok::DiaUp: ++pos_; return Formula::dia(Direction::Up, unary());
      case Tok::BoxDown: ++pos_; return Formula::box(Direction::Down, unary());
      case Tok::DiaDown: ++pos_; return Formula::dia(Direction::Down, unary());
      default: return atom();
    }
  }

  Formula atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::True: ++pos_; return Formula::top();
      case Tok::False: ++pos_; return Formula::bot();
      case Tok::Ident: ++pos_; return Formula::atom(t.text);
      case Tok::LParen: {
        ++pos_;
        Formula f = iff();
        if (!accept(Tok::RParen)) fail({")", "&", "|", "->", "<->"});
        return f;
      }
      default:
        fail({"~", "[u]", "<u>", "[d]", "<d>", "true", "false", "letter", "("});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

int precedence(Kind k) {
  switch (k) {
    case Kind::Iff: return 1;
    case Kind::Imp: return 2;
    case Kind::Or: return 3;
    case Kind::And: return 4;
    default: return 5;
  }
}

const char* binary_symbol(Kind k) {
  switch (k) {
    case Kind::Iff: return " <-> ";
    case Kind::Imp: return " -> ";
    case Kind::Or: return " | ";
    default: return " & ";
  }
}

void print_to(std::ostringstream& os, const Formula& f);

void print_operand(std::ostringstream& os, const Formula& f, bool parens) {
  if (parens) os << '(';
  print_to(os, f);
  if (parens) os << ')';
}

void print_to(std::ostringstream& os, const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom: os << f.name(); return;
    case Kind::Top: os << "true"; return;
    case Kind::Bot: os << "false"; return;
    case Kind::Not:
    case Kind::Box:
    case Kind::Dia: {
      if (f.kind() == Kind::Not) {
        os << '~';
      } else {
        const bool up = f.direction() == Direction::Up;
        os << (f.kind() == Kind::Box ? (up ? "[u]" : "[d]") : (up ? "<u>" : "<d>"));
      }
      print_operand(os, f.arg(), f.arg().arity() == 2);
      return;
    }
    default: {
      const int p = precedence(f.kind());
      const bool right_assoc = f.kind() == Kind::Imp;
      const int lp = precedence(f.lhs().kind());
      const int rp = precedence(f.rhs().kind());
      print_operand(os, f.lhs(), lp < p || (lp == p && right_assoc));
      os << binary_symbol(f.kind());
      print_operand(os, f.rhs(), rp < p || (rp == p && !right_assoc));
    }
  }
}

}  // namespace

Formula parse(std::string_view text) { return Parser(Lexer(text).run()).run(); }

std::string print(const Formula& f) {
  std::ostringstream os;
  print_to(os, f);
  return os.str();
}

}  // namespace gmv
