#include "msml/core/format.hpp"

#include <ostream>
#include <sstream>
#include <vector>

#include "msml/core/errors.hpp"

namespace msml {

namespace {

enum class Tok {
  Ident, Bang, Amp, Pipe, Arrow, Iff,
  LPar, RPar, LBrack, RBrack, Comma, At, End
};

struct Token {
  Tok kind;
  std::string text;
  int col;  // 1-based
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string t, std::size_t at) {
    out.push_back(Token{k, std::move(t), static_cast<int>(at) + 1});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    if (c == '#') break;
    if (is_ident_char(c)) {
      std::size_t j = i;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      push(Tok::Ident, text.substr(i, j - i), i);
      i = j;
      continue;
    }
    switch (c) {
      case '!': push(Tok::Bang, "!", i); ++i; break;
      case '&': push(Tok::Amp, "&", i); ++i; break;
      case '|': push(Tok::Pipe, "|", i); ++i; break;
      case '(': push(Tok::LPar, "(", i); ++i; break;
      case ')': push(Tok::RPar, ")", i); ++i; break;
      case '[': push(Tok::LBrack, "[", i); ++i; break;
      case ']': push(Tok::RBrack, "]", i); ++i; break;
      case ',': push(Tok::Comma, ",", i); ++i; break;
      case '@': push(Tok::At, "@", i); ++i; break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          push(Tok::Arrow, "->", i);
          i += 2;
          break;
        }
        throw ParseError("col " + std::to_string(i + 1) + ": stray '-'");
      case '<':
        if (i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>') {
          push(Tok::Iff, "<->", i);
          i += 3;
          break;
        }
        throw ParseError("col " + std::to_string(i + 1) + ": stray '<'");
      default:
        throw ParseError("col " + std::to_string(i + 1) +
                         ": unexpected character '" + std::string(1, c) + "'");
    }
  }
  push(Tok::End, "", text.size());
  return out;
}

class Parser {
 public:
  Parser(const Signature& sig, std::vector<Token> toks, BoxMode mode)
      : sig_(sig), toks_(std::move(toks)), mode_(mode) {}

  Formula run() {
    Formula f = parse_iff();
    if (!at(Tok::End)) fail("end of input");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  bool at(Tok k) const { return toks_[pos_].kind == k; }
  bool eat(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError("col " + std::to_string(t.col) + ": expected " + what +
                     ", got " + got);
  }
  void expect(Tok k, const std::string& what) {
    if (!eat(k)) fail(what);
  }

  // Loosest binding first; -> and <-> associate to the right, | and & to
  // the left.
  Formula parse_iff() {
    Formula l = parse_impl();
    if (eat(Tok::Iff)) return Formula::iff(std::move(l), parse_iff());
    return l;
  }
  Formula parse_impl() {
    Formula l = parse_or();
    if (eat(Tok::Arrow)) return Formula::impl(std::move(l), parse_impl());
    return l;
  }
  Formula parse_or() {
    Formula l = parse_and();
    while (eat(Tok::Pipe)) l = Formula::disj(std::move(l), parse_and());
    return l;
  }
  Formula parse_and() {
    Formula l = parse_unary();
    while (eat(Tok::Amp)) l = Formula::conj(std::move(l), parse_unary());
    return l;
  }
  Formula parse_unary() {
    if (eat(Tok::Bang)) return Formula::neg(parse_unary());
    return parse_primary();
  }
  std::vector<Formula> parse_args() {
    expect(Tok::LPar, "'('");
    std::vector<Formula> args;
    if (!at(Tok::RPar)) {
      args.push_back(parse_iff());
      while (eat(Tok::Comma)) args.push_back(parse_iff());
    }
    expect(Tok::RPar, "')'");
    return args;
  }
  Formula parse_primary() {
    if (eat(Tok::LPar)) {
      Formula f = parse_iff();
      expect(Tok::RPar, "')'");
      return f;
    }
    if (at(Tok::LBrack)) {
      int col = peek().col;
      take();
      if (!at(Tok::Ident)) fail("operator name");
      Token name = take();
      OpId op = sig_.find_op(name.text);
      if (op < 0) {
        throw ParseError("col " + std::to_string(name.col) + ": unknown op '" +
                         name.text + "'");
      }
      expect(Tok::RBrack, "']'");
      std::vector<Formula> args = parse_args();
      if (args.empty()) {
        throw ParseError("col " + std::to_string(col) +
                         ": bracket application of '" + name.text +
                         "' needs at least one argument");
      }
      if (mode_ == BoxMode::Literal) return mk_dual(sig_, op, std::move(args));
      args.back() = Formula::neg(args.back());
      return Formula::neg(Formula::app(op, std::move(args)));
    }
    if (at(Tok::Ident)) {
      Token name = take();
      if ((name.text == "bot" || name.text == "top") && eat(Tok::At)) {
        if (!at(Tok::Ident)) fail("sort name");
        Token srt = take();
        SortId s = sig_.find_sort(srt.text);
        if (s < 0) {
          throw ParseError("col " + std::to_string(srt.col) +
                           ": unknown sort '" + srt.text + "'");
        }
        return name.text == "bot" ? mk_bot(sig_, s) : mk_top(sig_, s);
      }
      if (at(Tok::LPar)) {
        OpId op = sig_.find_op(name.text);
        if (op < 0) {
          throw ParseError("col " + std::to_string(name.col) +
                           ": unknown op '" + name.text + "'");
        }
        return Formula::app(op, parse_args());
      }
      VarId v = sig_.find_var(name.text);
      if (v >= 0) return Formula::var(v);
      OpId op = sig_.find_op(name.text);
      if (op >= 0) return Formula::app(op, {});
      throw ParseError("col " + std::to_string(name.col) +
                       ": unknown symbol '" + name.text + "'");
    }
    fail("a formula");
  }

  const Signature& sig_;
  std::vector<Token> toks_;
  BoxMode mode_;
  std::size_t pos_ = 0;
};

// !(!p | !!p) with p the canonical variable of its sort.
bool match_bot(const Signature& sig, const Formula& f, SortId* sort) {
  Formula a, b;
  if (!f.match_conj(&a, &b)) return false;
  if (a.kind() != FKind::Var) return false;
  if (b.kind() != FKind::Not || b.arg(0) != a) return false;
  SortId s = sig.var(a.var_sym()).sort;
  if (sig.canonical_var(s) != a.var_sym()) return false;
  if (sort) *sort = s;
  return true;
}

bool match_box(const Formula& f, BoxMode mode, OpId* op,
               std::vector<Formula>* args) {
  if (f.kind() != FKind::Not) return false;
  const Formula& inner = f.arg(0);
  if (inner.kind() != FKind::App || inner.arg_count() == 0) return false;
  std::vector<Formula> out;
  out.reserve(inner.args().size());
  if (mode == BoxMode::Literal) {
    for (const Formula& a : inner.args()) {
      if (a.kind() != FKind::Not) return false;
      out.push_back(a.arg(0));
    }
  } else {
    int n = inner.arg_count();
    if (inner.arg(n - 1).kind() != FKind::Not) return false;
    for (int i = 0; i + 1 < n; ++i) out.push_back(inner.arg(i));
    out.push_back(inner.arg(n - 1).arg(0));
  }
  *op = inner.op_sym();
  *args = std::move(out);
  return true;
}

// Precedence levels: <-> 0, -> 1, | 2, & 3, ! 4, atoms 5. A node is wrapped
// in parentheses when its level is below the minimum its context requires.
void print_at(const Signature& sig, const Formula& f, BoxMode mode,
              int min_level, std::ostream& out);

void print_infix(const Signature& sig, const Formula& a, const char* opsym,
                 const Formula& b, BoxMode mode, int level, bool right_assoc,
                 int min_level, std::ostream& out) {
  bool parens = level < min_level;
  if (parens) out << "(";
  print_at(sig, a, mode, level + (right_assoc ? 1 : 0), out);
  out << " " << opsym << " ";
  print_at(sig, b, mode, level + (right_assoc ? 0 : 1), out);
  if (parens) out << ")";
}

void print_at(const Signature& sig, const Formula& f, BoxMode mode,
              int min_level, std::ostream& out) {
  switch (f.kind()) {
    case FKind::Var:
      out << sig.var(f.var_sym()).name;
      return;
    case FKind::App: {
      out << sig.op(f.op_sym()).name;
      if (f.arg_count() > 0) {
        out << "(";
        for (int i = 0; i < f.arg_count(); ++i) {
          if (i) out << ", ";
          print_at(sig, f.arg(i), mode, 0, out);
        }
        out << ")";
      }
      return;
    }
    case FKind::Or: {
      Formula a, b;
      if (f.match_impl(&a, &b)) {
        print_infix(sig, a, "->", b, mode, 1, true, min_level, out);
      } else {
        print_infix(sig, f.arg(0), "|", f.arg(1), mode, 2, false, min_level,
                    out);
      }
      return;
    }
    case FKind::Not: {
      SortId s = -1;
      if (match_bot(sig, f, &s)) {
        out << "bot@" << sig.sort_name(s);
        return;
      }
      if (f.arg(0).kind() == FKind::Not && match_bot(sig, f.arg(0), &s)) {
        out << "top@" << sig.sort_name(s);
        return;
      }
      Formula a, b;
      if (f.match_iff(&a, &b)) {
        print_infix(sig, a, "<->", b, mode, 0, true, min_level, out);
        return;
      }
      if (f.match_conj(&a, &b)) {
        print_infix(sig, a, "&", b, mode, 3, false, min_level, out);
        return;
      }
      OpId op = -1;
      std::vector<Formula> args;
      if (match_box(f, mode, &op, &args)) {
        out << "[" << sig.op(op).name << "](";
        for (std::size_t i = 0; i < args.size(); ++i) {
          if (i) out << ", ";
          print_at(sig, args[i], mode, 0, out);
        }
        out << ")";
        return;
      }
      out << "!";
      print_at(sig, f.arg(0), mode, 4, out);
      return;
    }
  }
}

}  // namespace

Formula parse_formula(const Signature& sig, const std::string& text,
                      BoxMode mode) {
  Parser p(sig, lex(text), mode);
  Formula f = p.run();
  sort_of(sig, f);
  return f;
}

std::string print_formula(const Signature& sig, const Formula& phi,
                          BoxMode mode) {
  std::ostringstream out;
  print_at(sig, phi, mode, 0, out);
  return out.str();
}

}  // namespace msml
