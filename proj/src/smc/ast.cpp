#include <cctype>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "msml/core/errors.hpp"
#include "msml/smc/smc.hpp"

namespace msml::smc {

AExpPtr mk_num(long long n) {
  auto a = std::make_shared<AExp>();
  a->kind = AExp::Num;
  a->num = n;
  return a;
}

AExpPtr mk_id(std::string name) {
  auto a = std::make_shared<AExp>();
  a->kind = AExp::Id;
  a->id = std::move(name);
  return a;
}

AExpPtr mk_add(AExpPtr l, AExpPtr r) {
  auto a = std::make_shared<AExp>();
  a->kind = AExp::Add;
  a->lhs = std::move(l);
  a->rhs = std::move(r);
  return a;
}

BExpPtr mk_le(AExpPtr l, AExpPtr r) {
  auto b = std::make_shared<BExp>();
  b->lhs = std::move(l);
  b->rhs = std::move(r);
  return b;
}

static std::shared_ptr<Stmt> mk_stmt(Stmt::Kind k) {
  auto s = std::make_shared<Stmt>();
  s->kind = k;
  return s;
}

StmtPtr mk_assign(std::string id, AExpPtr a) {
  auto s = mk_stmt(Stmt::Assign);
  s->id = std::move(id);
  s->aexp = std::move(a);
  return s;
}

StmtPtr mk_if(BExpPtr b, StmtPtr s1, StmtPtr s2) {
  auto s = mk_stmt(Stmt::If);
  s->cond = std::move(b);
  s->s1 = std::move(s1);
  s->s2 = std::move(s2);
  return s;
}

StmtPtr mk_while(BExpPtr b, StmtPtr body) {
  auto s = mk_stmt(Stmt::While);
  s->cond = std::move(b);
  s->s1 = std::move(body);
  return s;
}

StmtPtr mk_skip() { return mk_stmt(Stmt::Skip); }

StmtPtr mk_seq(StmtPtr s1, StmtPtr s2) {
  auto s = mk_stmt(Stmt::Seq);
  s->s1 = std::move(s1);
  s->s2 = std::move(s2);
  return s;
}

// ----- parser -----

namespace {

struct Token {
  std::string text;
  int line;
};

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (is_word_char(c)) {
      std::size_t j = i;
      while (j < text.size() && is_word_char(text[j])) ++j;
      out.push_back({text.substr(i, j - i), line});
      i = j;
      continue;
    }
    if (c == ':' && i + 1 < text.size() && text[i + 1] == '=') {
      out.push_back({":=", line});
      i += 2;
      continue;
    }
    if (c == '<' && i + 1 < text.size() && text[i + 1] == '=') {
      out.push_back({"<=", line});
      i += 2;
      continue;
    }
    if (c == ';' || c == '+' || c == '(' || c == ')') {
      out.push_back({std::string(1, c), line});
      ++i;
      continue;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", line);
  }
  return out;
}

class ProgramParser {
 public:
  explicit ProgramParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  StmtPtr parse() {
    StmtPtr s = stmt();
    if (pos_ < toks_.size())
      throw ParseError("trailing input after statement: '" + peek() + "'",
                       toks_[pos_].line);
    return s;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= toks_.size(); }
  const std::string& peek() const {
    static const std::string kEnd = "<end of input>";
    return at_end() ? kEnd : toks_[pos_].text;
  }
  int line() const { return at_end() ? (toks_.empty() ? 1 : toks_.back().line)
                                     : toks_[pos_].line; }
  bool take(const std::string& t) {
    if (!at_end() && toks_[pos_].text == t) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const std::string& t) {
    if (!take(t))
      throw ParseError("expected '" + t + "', got '" + peek() + "'", line());
  }

  static bool is_keyword(const std::string& w) {
    return w == "skip" || w == "if" || w == "then" || w == "else" ||
           w == "while" || w == "do";
  }

  static bool is_number(const std::string& w) {
    for (char c : w)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return !w.empty();
  }

  StmtPtr stmt() {
    StmtPtr first = simple();
    if (take(";")) return mk_seq(first, stmt());
    return first;
  }

  StmtPtr simple() {
    if (take("skip")) return mk_skip();
    if (take("if")) {
      BExpPtr b = bexp();
      expect("then");
      StmtPtr s1 = simple();
      expect("else");
      StmtPtr s2 = simple();
      return mk_if(b, s1, s2);
    }
    if (take("while")) {
      BExpPtr b = bexp();
      expect("do");
      return mk_while(b, simple());
    }
    if (take("(")) {
      StmtPtr s = stmt();
      expect(")");
      return s;
    }
    if (at_end())
      throw ParseError("expected a statement, got end of input", line());
    const std::string w = peek();
    if (is_keyword(w) || is_number(w) || !is_word_char(w[0]))
      throw ParseError("expected a statement, got '" + w + "'", line());
    ++pos_;
    expect(":=");
    return mk_assign(w, aexp());
  }

  BExpPtr bexp() {
    AExpPtr l = aexp();
    expect("<=");
    return mk_le(l, aexp());
  }

  AExpPtr aexp() {
    AExpPtr a = atom();
    while (take("+")) a = mk_add(a, atom());
    return a;
  }

  AExpPtr atom() {
    if (take("(")) {
      AExpPtr a = aexp();
      expect(")");
      return a;
    }
    if (at_end())
      throw ParseError("expected an expression, got end of input", line());
    const std::string w = peek();
    if (is_number(w)) {
      ++pos_;
      try {
        return mk_num(std::stoll(w));
      } catch (const std::out_of_range&) {
        throw ParseError("numeral out of range: " + w, line());
      }
    }
    if (is_keyword(w) || !is_word_char(w[0]))
      throw ParseError("expected an expression, got '" + w + "'", line());
    ++pos_;
    return mk_id(w);
  }
};

void print_aexp(std::ostream& os, const AExpPtr& a, bool parens_add) {
  switch (a->kind) {
    case AExp::Num:
      os << a->num;
      return;
    case AExp::Id:
      os << a->id;
      return;
    case AExp::Add:
      if (parens_add) os << "(";
      print_aexp(os, a->lhs, false);
      os << " + ";
      // the right child of + reparses into the left slot unless wrapped
      print_aexp(os, a->rhs, a->rhs->kind == AExp::Add);
      if (parens_add) os << ")";
      return;
  }
}

void print_bexp(std::ostream& os, const BExpPtr& b) {
  print_aexp(os, b->lhs, false);
  os << " <= ";
  print_aexp(os, b->rhs, false);
}

void print_stmt(std::ostream& os, const StmtPtr& s, bool as_simple) {
  const bool parens = as_simple && s->kind == Stmt::Seq;
  if (parens) os << "(";
  switch (s->kind) {
    case Stmt::Assign:
      os << s->id << " := ";
      print_aexp(os, s->aexp, false);
      break;
    case Stmt::If:
      os << "if ";
      print_bexp(os, s->cond);
      os << " then ";
      print_stmt(os, s->s1, true);
      os << " else ";
      print_stmt(os, s->s2, true);
      break;
    case Stmt::While:
      os << "while ";
      print_bexp(os, s->cond);
      os << " do ";
      print_stmt(os, s->s1, true);
      break;
    case Stmt::Skip:
      os << "skip";
      break;
    case Stmt::Seq:
      // ; is right-associative, so a left Seq child needs parens
      print_stmt(os, s->s1, true);
      os << "; ";
      print_stmt(os, s->s2, false);
      break;
  }
  if (parens) os << ")";
}

}  // namespace

StmtPtr parse_program(const std::string& text) {
  std::vector<Token> toks = lex(text);
  if (toks.empty()) throw ParseError("empty program", 0);
  return ProgramParser(std::move(toks)).parse();
}

std::string print_program(const StmtPtr& s) {
  std::ostringstream os;
  print_stmt(os, s, false);
  return os.str();
}

// ----- control terms -----

static std::shared_ptr<Ctrl> mk_ctrl(Ctrl::Kind k) {
  auto c = std::make_shared<Ctrl>();
  c->kind = k;
  return c;
}

CtrlPtr ctrl_ca(AExpPtr a) {
  auto c = mk_ctrl(Ctrl::CA);
  c->a = std::move(a);
  return c;
}

CtrlPtr ctrl_cb(BExpPtr b) {
  auto c = mk_ctrl(Ctrl::CB);
  c->bx = std::move(b);
  return c;
}

CtrlPtr ctrl_cs(StmtPtr s) {
  auto c = mk_ctrl(Ctrl::CS);
  c->s = std::move(s);
  return c;
}

CtrlPtr ctrl_asgn(std::string id) {
  auto c = mk_ctrl(Ctrl::Asgn);
  c->id = std::move(id);
  return c;
}

CtrlPtr ctrl_plus() { return mk_ctrl(Ctrl::Plus); }
CtrlPtr ctrl_leq() { return mk_ctrl(Ctrl::Leq); }

CtrlPtr ctrl_test(MachineVal v) {
  auto c = mk_ctrl(Ctrl::Test);
  c->v = v;
  return c;
}

CtrlPtr ctrl_comp(CtrlPtr c1, CtrlPtr c2) {
  auto c = mk_ctrl(Ctrl::Comp);
  c->c1 = std::move(c1);
  c->c2 = std::move(c2);
  return c;
}

CtrlPtr ctrl_union(CtrlPtr c1, CtrlPtr c2) {
  auto c = mk_ctrl(Ctrl::Union);
  c->c1 = std::move(c1);
  c->c2 = std::move(c2);
  return c;
}

CtrlPtr ctrl_star(CtrlPtr inner) {
  auto c = mk_ctrl(Ctrl::Star);
  c->c1 = std::move(inner);
  return c;
}

static std::string print_val(const MachineVal& v) {
  if (v.is_bool) return v.n ? "true" : "false";
  return std::to_string(v.n);
}

static void print_ctrl_rec(std::ostream& os, const CtrlPtr& c) {
  switch (c->kind) {
    case Ctrl::CA:
      os << "c(";
      print_aexp(os, c->a, false);
      os << ")";
      return;
    case Ctrl::CB:
      os << "c(";
      print_bexp(os, c->bx);
      os << ")";
      return;
    case Ctrl::CS:
      os << "c(";
      print_stmt(os, c->s, false);
      os << ")";
      return;
    case Ctrl::Asgn:
      os << "asgn(" << c->id << ")";
      return;
    case Ctrl::Plus:
      os << "plus";
      return;
    case Ctrl::Leq:
      os << "leq";
      return;
    case Ctrl::Test:
      os << print_val(c->v) << "?";
      return;
    case Ctrl::Comp:
      if (c->c1->kind == Ctrl::Comp || c->c1->kind == Ctrl::Union) {
        os << "(";
        print_ctrl_rec(os, c->c1);
        os << ")";
      } else {
        print_ctrl_rec(os, c->c1);
      }
      os << " ; ";
      print_ctrl_rec(os, c->c2);
      return;
    case Ctrl::Union:
      os << "(";
      print_ctrl_rec(os, c->c1);
      os << ") U (";
      print_ctrl_rec(os, c->c2);
      os << ")";
      return;
    case Ctrl::Star:
      os << "(";
      print_ctrl_rec(os, c->c1);
      os << ")*";
      return;
  }
}

std::string print_ctrl(const CtrlPtr& c) {
  std::ostringstream os;
  print_ctrl_rec(os, c);
  return os.str();
}

std::string print_config(const SmcConfig& c) {
  std::ostringstream os;
  os << "config(";
  for (auto it = c.stack.rbegin(); it != c.stack.rend(); ++it)
    os << print_val(*it) << ".";
  os << "nil, {";
  bool first = true;
  for (const auto& [name, n] : c.mem) {
    if (!first) os << ", ";
    first = false;
    os << name << "=" << n;
  }
  os << "})";
  return os.str();
}

CtrlPtr d_normal(const CtrlPtr& c) {
  const MachineVal tval{true, 1};
  const MachineVal fval{true, 0};
  switch (c->kind) {
    case Ctrl::CA:
      switch (c->a->kind) {
        case AExp::Num:
        case AExp::Id:
          return c;
        case AExp::Add:
          return ctrl_comp(
              d_normal(ctrl_ca(c->a->lhs)),
              ctrl_comp(d_normal(ctrl_ca(c->a->rhs)), ctrl_plus()));
      }
      return c;
    case Ctrl::CB:
      // the comparison's right operand is evaluated first
      return ctrl_comp(
          d_normal(ctrl_ca(c->bx->rhs)),
          ctrl_comp(d_normal(ctrl_ca(c->bx->lhs)), ctrl_leq()));
    case Ctrl::CS:
      switch (c->s->kind) {
        case Stmt::Skip:
          return c;
        case Stmt::Assign:
          return ctrl_comp(d_normal(ctrl_ca(c->s->aexp)),
                           ctrl_asgn(c->s->id));
        case Stmt::Seq:
          return ctrl_comp(d_normal(ctrl_cs(c->s->s1)),
                           d_normal(ctrl_cs(c->s->s2)));
        case Stmt::If:
          return ctrl_comp(
              d_normal(ctrl_cb(c->s->cond)),
              ctrl_union(
                  ctrl_comp(ctrl_test(tval), d_normal(ctrl_cs(c->s->s1))),
                  ctrl_comp(ctrl_test(fval), d_normal(ctrl_cs(c->s->s2)))));
        case Stmt::While:
          return ctrl_comp(
              d_normal(ctrl_cb(c->s->cond)),
              ctrl_comp(ctrl_star(ctrl_comp(
                            ctrl_test(tval),
                            ctrl_comp(d_normal(ctrl_cs(c->s->s1)),
                                      d_normal(ctrl_cb(c->s->cond))))),
                        ctrl_test(fval)));
      }
      return c;
    case Ctrl::Asgn:
    case Ctrl::Plus:
    case Ctrl::Leq:
    case Ctrl::Test:
      return c;
    case Ctrl::Comp:
      return ctrl_comp(d_normal(c->c1), d_normal(c->c2));
    case Ctrl::Union:
      return ctrl_union(d_normal(c->c1), d_normal(c->c2));
    case Ctrl::Star:
      return ctrl_star(d_normal(c->c1));
  }
  return c;
}

}  // namespace msml::smc
