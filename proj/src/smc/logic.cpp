#include <string>

#include "msml/core/errors.hpp"
#include "msml/proof/axioms.hpp"
#include "msml/smc/smc.hpp"

namespace msml::smc {

Signature smc_signature() {
  Signature sig;
  const SortId nat = sig.add_sort("Nat");
  const SortId pvar = sig.add_sort("Var");
  const SortId boolean = sig.add_sort("Bool");
  const SortId aexp = sig.add_sort("AExp");
  const SortId bexp = sig.add_sort("BExp");
  const SortId stmt = sig.add_sort("Stmt");
  const SortId val = sig.add_sort("Val");
  const SortId vstack = sig.add_sort("ValStack");
  const SortId memory = sig.add_sort("Mem");
  const SortId ctrl = sig.add_sort("CtrlStack");
  const SortId config = sig.add_sort("Config");

  for (const char* n : {"0", "1", "2", "3"}) sig.add_op(n, {}, nat);
  for (const char* n : {"i1", "i2", "m"}) sig.add_op(n, {}, pvar);
  sig.add_op("true", {}, boolean);
  sig.add_op("false", {}, boolean);

  sig.add_op("na", {nat}, aexp);
  sig.add_op("va", {pvar}, aexp);
  sig.add_op("add", {aexp, aexp}, aexp);
  sig.add_op("le", {aexp, aexp}, bexp);

  sig.add_op("assign", {pvar, aexp}, stmt);
  sig.add_op("ite", {bexp, stmt, stmt}, stmt);
  sig.add_op("while_", {bexp, stmt}, stmt);
  sig.add_op("skip", {}, stmt);
  sig.add_op("seq", {stmt, stmt}, stmt);

  sig.add_op("nv", {nat}, val);
  sig.add_op("bv", {boolean}, val);
  sig.add_op("nil", {}, vstack);
  sig.add_op("cons", {val, vstack}, vstack);

  sig.add_op("empty", {}, memory);
  sig.add_op("set", {memory, pvar, nat}, memory);
  // observation: get(x, n) holds at memories that read n for x
  sig.add_op("get", {pvar, nat}, memory);

  sig.add_op("ca", {aexp}, ctrl);
  sig.add_op("cb", {bexp}, ctrl);
  sig.add_op("cs", {stmt}, ctrl);
  sig.add_op("asgn", {pvar}, ctrl);
  sig.add_op("plus", {}, ctrl);
  sig.add_op("leq", {}, ctrl);
  sig.add_op("test", {val}, ctrl);
  sig.add_op("comp", {ctrl, ctrl}, ctrl);
  sig.add_op("union", {ctrl, ctrl}, ctrl);
  sig.add_op("star", {ctrl}, ctrl);

  sig.add_op("config", {vstack, memory}, config);
  sig.add_op("exec", {ctrl, config}, config);

  sig.add_var("nn", nat);
  sig.add_var("xx", pvar);
  sig.add_var("tt", boolean);
  sig.add_var("aa", aexp);
  sig.add_var("bb", bexp);
  sig.add_var("ss", stmt);
  sig.add_var("vv", val);
  sig.add_var("vs", vstack);
  sig.add_var("mem", memory);
  sig.add_var("pp", ctrl);
  sig.add_var("gg", config);
  return sig;
}

namespace {

const char* kAxiomText = R"(
# program combinators
scheme a_union meta PI : CtrlStack meta PI2 : CtrlStack meta G : Config ::= [exec](union(PI, PI2), G) <-> [exec](PI, G) & [exec](PI2, G)
scheme a_comp meta PI : CtrlStack meta PI2 : CtrlStack meta G : Config ::= [exec](comp(PI, PI2), G) <-> [exec](PI, [exec](PI2, G))
scheme a_star meta PI : CtrlStack meta G : Config ::= [exec](star(PI), G) <-> G & [exec](PI, [exec](star(PI), G))
scheme a_test meta V : Val meta VS : ValStack meta MEM : Mem ::= config(cons(V, VS), MEM) -> [exec](test(V), config(VS, MEM))
scheme a_ntest meta V : Val meta V2 : Val meta VS : ValStack meta MEM : Mem meta G : Config guard distinct(V, V2) ::= config(cons(V, VS), MEM) -> [exec](test(V2), G)

# statement decomposition and memory laws
scheme c_stmt meta S1 : Stmt meta S2 : Stmt ::= cs(seq(S1, S2)) <-> comp(cs(S1), cs(S2))
scheme a_mem0 meta X : Var ::= empty -> get(X, 0)
scheme a_mem1 meta MEM : Mem meta X : Var meta N : Nat ::= set(MEM, X, N) -> get(X, N)
scheme a_mem2 meta MEM : Mem meta X : Var meta N : Nat meta Y : Var meta M : Nat guard distinct(X, Y) ::= set(set(MEM, X, N), Y, M) <-> set(set(MEM, Y, M), X, N)
scheme a_mem3 meta MEM : Mem meta X : Var meta N : Nat meta M : Nat ::= set(set(MEM, X, N), X, M) <-> set(MEM, X, M)

# machine items
scheme a_int meta N : Nat meta VS : ValStack meta MEM : Mem ::= config(VS, MEM) -> [exec](ca(na(N)), config(cons(nv(N), VS), MEM))
scheme a_id meta X : Var meta N : Nat meta VS : ValStack meta MEM : Mem ::= config(VS, set(MEM, X, N)) -> [exec](ca(va(X)), config(cons(nv(N), VS), set(MEM, X, N)))
scheme d_plus meta A1 : AExp meta A2 : AExp ::= ca(add(A1, A2)) <-> comp(ca(A1), comp(ca(A2), plus))
scheme a_plus meta N1 : Nat meta N2 : Nat meta N : Nat meta VS : ValStack meta MEM : Mem guard intadd(N1, N2, N) ::= config(cons(nv(N2), cons(nv(N1), VS)), MEM) -> [exec](plus, config(cons(nv(N), VS), MEM))
scheme d_leq meta A1 : AExp meta A2 : AExp ::= cb(le(A1, A2)) <-> comp(ca(A2), comp(ca(A1), leq))
scheme a_leq meta N1 : Nat meta N2 : Nat meta T : Bool meta VS : ValStack meta MEM : Mem guard leqtruth(N1, N2, T) ::= config(cons(nv(N1), cons(nv(N2), VS)), MEM) -> [exec](leq, config(cons(bv(T), VS), MEM))
scheme a_skip meta G : Config ::= G -> [exec](cs(skip), G)
scheme d_asgn meta X : Var meta A : AExp ::= cs(assign(X, A)) <-> comp(ca(A), asgn(X))
scheme a_asgn meta N : Nat meta VS : ValStack meta MEM : Mem meta X : Var ::= config(cons(nv(N), VS), MEM) -> [exec](asgn(X), config(VS, set(MEM, X, N)))
scheme d_if meta B : BExp meta S1 : Stmt meta S2 : Stmt ::= cs(ite(B, S1, S2)) <-> comp(cb(B), union(comp(test(bv(true)), cs(S1)), comp(test(bv(false)), cs(S2))))
scheme d_while meta B : BExp meta S : Stmt ::= cs(while_(B, S)) <-> comp(cb(B), comp(star(comp(test(bv(true)), comp(cs(S), cb(B)))), test(bv(false))))
)";

}  // namespace

AxiomSet smc_axioms(const Signature& sig) {
  return parse_axioms(sig, std::string("basis standard\n") + kAxiomText,
                      BoxMode::Pdl);
}

Formula nat_formula(const Signature& sig, long long n) {
  OpId op = sig.find_op(std::to_string(n));
  if (op < 0)
    throw Error("no numeral operator for " + std::to_string(n) +
                " in the signature");
  return Formula::app(op, {});
}

Formula pvar_formula(const Signature& sig, const std::string& name) {
  OpId op = sig.find_op(name);
  if (op < 0 || sig.op(op).arity() != 0 ||
      sig.op(op).result != sig.sort_id("Var"))
    throw Error("no identifier operator for " + name + " in the signature");
  return Formula::app(op, {});
}

Formula aexp_formula(const Signature& sig, const AExpPtr& a) {
  switch (a->kind) {
    case AExp::Num:
      return Formula::app(sig.op_id("na"), {nat_formula(sig, a->num)});
    case AExp::Id:
      return Formula::app(sig.op_id("va"), {pvar_formula(sig, a->id)});
    case AExp::Add:
      return Formula::app(sig.op_id("add"), {aexp_formula(sig, a->lhs),
                                             aexp_formula(sig, a->rhs)});
  }
  throw Error("unreachable");
}

Formula bexp_formula(const Signature& sig, const BExpPtr& b) {
  return Formula::app(sig.op_id("le"),
                      {aexp_formula(sig, b->lhs), aexp_formula(sig, b->rhs)});
}

Formula stmt_formula(const Signature& sig, const StmtPtr& s) {
  switch (s->kind) {
    case Stmt::Assign:
      return Formula::app(sig.op_id("assign"), {pvar_formula(sig, s->id),
                                                aexp_formula(sig, s->aexp)});
    case Stmt::If:
      return Formula::app(sig.op_id("ite"),
                          {bexp_formula(sig, s->cond), stmt_formula(sig, s->s1),
                           stmt_formula(sig, s->s2)});
    case Stmt::While:
      return Formula::app(sig.op_id("while_"), {bexp_formula(sig, s->cond),
                                                stmt_formula(sig, s->s1)});
    case Stmt::Skip:
      return Formula::app(sig.op_id("skip"), {});
    case Stmt::Seq:
      return Formula::app(sig.op_id("seq"), {stmt_formula(sig, s->s1),
                                             stmt_formula(sig, s->s2)});
  }
  throw Error("unreachable");
}

Formula val_formula(const Signature& sig, const MachineVal& v) {
  if (v.is_bool)
    return Formula::app(sig.op_id("bv"),
                        {Formula::app(sig.op_id(v.n ? "true" : "false"), {})});
  return Formula::app(sig.op_id("nv"), {nat_formula(sig, v.n)});
}

Formula stack_formula(const Signature& sig,
                      const std::vector<MachineVal>& stack) {
  Formula f = Formula::app(sig.op_id("nil"), {});
  const OpId cons = sig.op_id("cons");
  // bottom to top, so the top of the stack ends up outermost
  for (const MachineVal& v : stack)
    f = Formula::app(cons, {val_formula(sig, v), f});
  return f;
}

Formula mem_formula(const Signature& sig,
                    const std::map<std::string, long long>& mem) {
  Formula f = Formula::app(sig.op_id("empty"), {});
  const OpId set = sig.op_id("set");
  for (const auto& [name, n] : mem)
    f = Formula::app(set, {f, pvar_formula(sig, name), nat_formula(sig, n)});
  return f;
}

Formula config_formula(const Signature& sig, const SmcConfig& c) {
  return Formula::app(sig.op_id("config"),
                      {stack_formula(sig, c.stack), mem_formula(sig, c.mem)});
}

Formula ctrl_formula(const Signature& sig, const CtrlPtr& c) {
  switch (c->kind) {
    case Ctrl::CA:
      return Formula::app(sig.op_id("ca"), {aexp_formula(sig, c->a)});
    case Ctrl::CB:
      return Formula::app(sig.op_id("cb"), {bexp_formula(sig, c->bx)});
    case Ctrl::CS:
      return Formula::app(sig.op_id("cs"), {stmt_formula(sig, c->s)});
    case Ctrl::Asgn:
      return Formula::app(sig.op_id("asgn"), {pvar_formula(sig, c->id)});
    case Ctrl::Plus:
      return Formula::app(sig.op_id("plus"), {});
    case Ctrl::Leq:
      return Formula::app(sig.op_id("leq"), {});
    case Ctrl::Test:
      return Formula::app(sig.op_id("test"), {val_formula(sig, c->v)});
    case Ctrl::Comp:
      return Formula::app(sig.op_id("comp"), {ctrl_formula(sig, c->c1),
                                              ctrl_formula(sig, c->c2)});
    case Ctrl::Union:
      return Formula::app(sig.op_id("union"), {ctrl_formula(sig, c->c1),
                                               ctrl_formula(sig, c->c2)});
    case Ctrl::Star:
      return Formula::app(sig.op_id("star"), {ctrl_formula(sig, c->c1)});
  }
  throw Error("unreachable");
}

const char* pgm_source() {
  return "i1 := 1; i2 := 2; if i1 <= i2 then m := i1 else m := i2";
}

}  // namespace msml::smc
