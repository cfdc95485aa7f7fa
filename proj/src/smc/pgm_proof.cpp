#include <map>
#include <string>
#include <utility>
#include <vector>

#include "msml/core/errors.hpp"
#include "msml/proof/derive.hpp"
#include "msml/smc/smc.hpp"

namespace msml::smc {

namespace {

// Step-level helpers for Hoare-style reasoning about the program box
// [pi]g = !exec(pi, !g). The box enters the kernel only through exec, so
// monotonicity runs through the diamond at exec's configuration slot and
// every lemma stays in the shape pre -> [pi]post.
class PgmProver {
 public:
  PgmProver(const Signature& sig, const AxiomSet& ax, ProofBuilder& b)
      : sig_(sig),
        ax_(ax),
        b_(b),
        exec_(sig.op_id("exec")),
        comp_(sig.op_id("comp")),
        union_(sig.op_id("union")) {}

  Formula box(const Formula& pi, const Formula& g) const {
    return Formula::neg(Formula::app(exec_, {pi, Formula::neg(g)}));
  }

  int axiom(const std::string& name,
            const std::map<std::string, Formula>& binding) {
    return b_.scheme_inst(ax_, name, binding);
  }

  // [pi]x -> [pi]y from imp: x -> y
  int mono(const Formula& pi, int imp) {
    Formula x, y;
    if (!b_.formula(imp).match_impl(&x, &y))
      throw Error("mono premise must be an implication");
    int cp = push_taut_consequence(
        b_, {imp}, Formula::impl(Formula::neg(y), Formula::neg(x)));
    int dm = push_dia_mono(b_, exec_, 1, {pi}, cp);
    return push_taut_consequence(b_, {dm},
                                 Formula::impl(box(pi, x), box(pi, y)));
  }

  struct Hoare {
    Formula pre, pi, post;
  };

  Hoare split(int idx) const {
    Formula pre, bx;
    if (!b_.formula(idx).match_impl(&pre, &bx))
      throw Error("expected pre -> [pi]post");
    auto [pi, post] = unbox(bx);
    return {pre, pi, post};
  }

  // pre -> [p1]([p2]post) becomes pre -> [p1;p2]post
  int fold(int l) {
    Hoare h = split(l);
    auto [p2, post] = unbox(h.post);
    int ac = axiom("a_comp", {{"PI", h.pi}, {"PI2", p2}, {"G", post}});
    Formula target = Formula::impl(
        h.pre, box(Formula::app(comp_, {h.pi, p2}), post));
    return push_taut_consequence(b_, {l, ac}, target);
  }

  // pre -> [p1]mid and mid -> [p2]post give pre -> [p1;p2]post
  int compose(int l1, int l2) {
    Hoare h1 = split(l1);
    Hoare h2 = split(l2);
    if (h1.post != h2.pre) throw Error("compose: midpoints differ");
    int mn = mono(h1.pi, l2);
    return fold(push_compose(b_, l1, mn));
  }

  // two lemmas with equal pre and post merge into the branching program
  int join(int l1, int l2) {
    Hoare h1 = split(l1);
    Hoare h2 = split(l2);
    if (h1.pre != h2.pre || h1.post != h2.post)
      throw Error("join: branch lemmas disagree");
    int au = axiom("a_union", {{"PI", h1.pi}, {"PI2", h2.pi}, {"G", h1.post}});
    Formula target = Formula::impl(
        h1.pre, box(Formula::app(union_, {h1.pi, h2.pi}), h1.post));
    return push_taut_consequence(b_, {l1, l2, au}, target);
  }

  // op(..x..) <-> op(..y..) from an equivalence step x <-> y
  int dia_cong(OpId op, int pos, const std::vector<Formula>& sides, int ii) {
    Formula x, y;
    if (!b_.formula(ii).match_iff(&x, &y))
      throw Error("dia_cong premise must be an equivalence");
    int f = push_taut_consequence(b_, {ii}, Formula::impl(x, y));
    int g = push_taut_consequence(b_, {ii}, Formula::impl(y, x));
    int m1 = push_dia_mono(b_, op, pos, sides, f);
    int m2 = push_dia_mono(b_, op, pos, sides, g);
    return push_taut_consequence(
        b_, {m1, m2},
        Formula::iff(apply_at(sig_, op, pos, sides, x),
                     apply_at(sig_, op, pos, sides, y)));
  }

  int iff_tranz(int ij, int jk) {
    Formula a, b1, b2, c;
    if (!b_.formula(ij).match_iff(&a, &b1) ||
        !b_.formula(jk).match_iff(&b2, &c) || b1 != b2)
      throw Error("iff_tranz: steps do not chain");
    return push_taut_consequence(b_, {ij, jk}, Formula::iff(a, c));
  }

  // Replaces argument pos of the compound cur using child: u <-> v with
  // u == cur.arg(pos); extends (cur, idx) where idx proves orig <-> cur,
  // or -1 when cur is still the original.
  void rewrite_arg(Formula& cur, int& idx, int pos, int child) {
    Formula u, v;
    if (!b_.formula(child).match_iff(&u, &v))
      throw Error("rewrite_arg: child step is not an equivalence");
    if (cur.arg(pos) != u) throw Error("rewrite_arg: subterm mismatch");
    OpId op = cur.op_sym();
    std::vector<Formula> sides;
    for (int i = 0; i < cur.arg_count(); ++i)
      if (i != pos) sides.push_back(cur.arg(i));
    int lift = dia_cong(op, pos, sides, child);
    idx = idx < 0 ? lift : iff_tranz(idx, lift);
    cur = apply_at(sig_, op, pos, sides, v);
  }

  // Equivalence between each control injection and its machine normal
  // form; second component -1 when the injection is already normal.
  std::pair<Formula, int> norm_actrl(const AExpPtr& a) {
    if (a->kind != AExp::Add)
      return {ctrl_formula(sig_, ctrl_ca(a)), -1};
    int idx = axiom("d_plus", {{"A1", aexp_formula(sig_, a->lhs)},
                               {"A2", aexp_formula(sig_, a->rhs)}});
    Formula l, cur;
    b_.formula(idx).match_iff(&l, &cur);
    int i1 = norm_actrl(a->lhs).second;
    if (i1 >= 0) rewrite_arg(cur, idx, 0, i1);
    int i2 = norm_actrl(a->rhs).second;
    if (i2 >= 0) {
      Formula inner = cur.arg(1);
      int iidx = -1;
      rewrite_arg(inner, iidx, 0, i2);
      rewrite_arg(cur, idx, 1, iidx);
    }
    return {cur, idx};
  }

  std::pair<Formula, int> norm_bctrl(const BExpPtr& bx) {
    int idx = axiom("d_leq", {{"A1", aexp_formula(sig_, bx->lhs)},
                              {"A2", aexp_formula(sig_, bx->rhs)}});
    Formula l, cur;
    b_.formula(idx).match_iff(&l, &cur);
    // the right operand's code runs first
    int i2 = norm_actrl(bx->rhs).second;
    if (i2 >= 0) rewrite_arg(cur, idx, 0, i2);
    int i1 = norm_actrl(bx->lhs).second;
    if (i1 >= 0) {
      Formula inner = cur.arg(1);
      int iidx = -1;
      rewrite_arg(inner, iidx, 0, i1);
      rewrite_arg(cur, idx, 1, iidx);
    }
    return {cur, idx};
  }

  std::pair<Formula, int> norm_sctrl(const StmtPtr& s) {
    switch (s->kind) {
      case Stmt::Skip:
        return {ctrl_formula(sig_, ctrl_cs(s)), -1};
      case Stmt::Assign: {
        int idx = axiom("d_asgn", {{"X", pvar_formula(sig_, s->id)},
                                   {"A", aexp_formula(sig_, s->aexp)}});
        Formula l, cur;
        b_.formula(idx).match_iff(&l, &cur);
        int ia = norm_actrl(s->aexp).second;
        if (ia >= 0) rewrite_arg(cur, idx, 0, ia);
        return {cur, idx};
      }
      case Stmt::Seq: {
        int idx = axiom("c_stmt", {{"S1", stmt_formula(sig_, s->s1)},
                                   {"S2", stmt_formula(sig_, s->s2)}});
        Formula l, cur;
        b_.formula(idx).match_iff(&l, &cur);
        int i1 = norm_sctrl(s->s1).second;
        if (i1 >= 0) rewrite_arg(cur, idx, 0, i1);
        int i2 = norm_sctrl(s->s2).second;
        if (i2 >= 0) rewrite_arg(cur, idx, 1, i2);
        return {cur, idx};
      }
      case Stmt::If: {
        int idx = axiom("d_if", {{"B", bexp_formula(sig_, s->cond)},
                                 {"S1", stmt_formula(sig_, s->s1)},
                                 {"S2", stmt_formula(sig_, s->s2)}});
        Formula l, cur;
        b_.formula(idx).match_iff(&l, &cur);
        int ib = norm_bctrl(s->cond).second;
        if (ib >= 0) rewrite_arg(cur, idx, 0, ib);
        Formula u = cur.arg(1);
        int uidx = -1;
        int i1 = norm_sctrl(s->s1).second;
        if (i1 >= 0) {
          Formula br = u.arg(0);
          int bidx = -1;
          rewrite_arg(br, bidx, 1, i1);
          rewrite_arg(u, uidx, 0, bidx);
        }
        int i2 = norm_sctrl(s->s2).second;
        if (i2 >= 0) {
          Formula br = u.arg(1);
          int bidx = -1;
          rewrite_arg(br, bidx, 1, i2);
          rewrite_arg(u, uidx, 1, bidx);
        }
        if (uidx >= 0) rewrite_arg(cur, idx, 1, uidx);
        return {cur, idx};
      }
      case Stmt::While: {
        int idx = axiom("d_while", {{"B", bexp_formula(sig_, s->cond)},
                                    {"S", stmt_formula(sig_, s->s1)}});
        Formula l, cur;
        b_.formula(idx).match_iff(&l, &cur);
        int ib = norm_bctrl(s->cond).second;
        if (ib >= 0) rewrite_arg(cur, idx, 0, ib);
        int is = norm_sctrl(s->s1).second;
        int ib2 = ib;  // builder dedup: the loop guard reuses the same steps
        // tail: comp(star(comp(test(true), comp(body, guard))), test(false))
        Formula tail = cur.arg(1);
        int tidx = -1;
        if (is >= 0 || ib2 >= 0) {
          Formula st = tail.arg(0);
          Formula loop = st.arg(0);
          int lidx = -1;
          Formula m = loop.arg(1);
          int midx = -1;
          if (is >= 0) rewrite_arg(m, midx, 0, is);
          if (ib2 >= 0) rewrite_arg(m, midx, 1, ib2);
          if (midx >= 0) rewrite_arg(loop, lidx, 1, midx);
          if (lidx >= 0) {
            int sidx = -1;
            rewrite_arg(st, sidx, 0, lidx);
            rewrite_arg(tail, tidx, 0, sidx);
          }
        }
        if (tidx >= 0) rewrite_arg(cur, idx, 1, tidx);
        return {cur, idx};
      }
    }
    throw Error("unreachable");
  }

 private:
  std::pair<Formula, Formula> unbox(const Formula& bx) const {
    if (bx.is_neg()) {
      Formula e = bx.arg(0);
      if (e.kind() == FKind::App && e.op_sym() == exec_ &&
          e.arg(1).is_neg())
        return {e.arg(0), e.arg(1).arg(0)};
    }
    throw Error("expected a boxed formula");
  }

  const Signature& sig_;
  const AxiomSet& ax_;
  ProofBuilder& b_;
  OpId exec_, comp_, union_;
};

}  // namespace

Proof elaborate_pgm_proof() {
  Signature sig = smc_signature();
  AxiomSet ax = smc_axioms(sig);
  ProofBuilder b(sig, ProofMode::Global);
  PgmProver P(sig, ax, b);

  const Formula vs = Formula::var(sig.var_id("vs"));
  const Formula memv = Formula::var(sig.var_id("mem"));
  const Formula n1 = nat_formula(sig, 1);
  const Formula n2 = nat_formula(sig, 2);
  const Formula i1 = pvar_formula(sig, "i1");
  const Formula i2 = pvar_formula(sig, "i2");
  const Formula mI = pvar_formula(sig, "m");
  const OpId op_set = sig.op_id("set");
  const OpId op_cons = sig.op_id("cons");
  const OpId op_nv = sig.op_id("nv");
  const OpId op_bv = sig.op_id("bv");
  const OpId op_config = sig.op_id("config");
  const OpId op_comp = sig.op_id("comp");
  const OpId op_asgn = sig.op_id("asgn");
  const OpId op_ca = sig.op_id("ca");
  const OpId op_va = sig.op_id("va");
  auto setf = [&](const Formula& mm, const Formula& x, const Formula& n) {
    return Formula::app(op_set, {mm, x, n});
  };
  auto consf = [&](const Formula& v, const Formula& st) {
    return Formula::app(op_cons, {v, st});
  };
  auto configf = [&](const Formula& st, const Formula& mm) {
    return Formula::app(op_config, {st, mm});
  };
  const Formula nv2 = Formula::app(op_nv, {n2});
  const Formula bvT =
      Formula::app(op_bv, {Formula::app(sig.op_id("true"), {})});
  const Formula bvF =
      Formula::app(op_bv, {Formula::app(sig.op_id("false"), {})});
  const Formula cavai2 = Formula::app(op_ca, {Formula::app(op_va, {i2})});
  const Formula asgn_m = Formula::app(op_asgn, {mI});

  // memories along the run; the two assigned cells commute once so both
  // later reads see a set(.., x, n) head for their own identifier
  const Formula M1 = setf(memv, i1, n1);
  const Formula M12 = setf(M1, i2, n2);
  const Formula M2 = setf(memv, i2, n2);
  const Formula M21 = setf(M2, i1, n1);
  const Formula MF = setf(M21, mI, n1);

  const Formula g0 = configf(vs, memv);
  const Formula g1 = configf(vs, M1);
  const Formula g2 = configf(vs, M12);
  const Formula st2 = consf(nv2, vs);
  const Formula c2_12 = configf(st2, M12);
  const Formula c2_21 = configf(st2, M21);
  const Formula g3 = configf(consf(bvT, vs), M21);
  const Formula cT = configf(vs, M21);
  const Formula g4 = configf(vs, MF);

  // i1 := 1 then i2 := 2
  int LX1 = P.compose(
      P.axiom("a_int", {{"N", n1}, {"VS", vs}, {"MEM", memv}}),
      P.axiom("a_asgn", {{"N", n1}, {"VS", vs}, {"MEM", memv}, {"X", i1}}));
  int LX2 = P.compose(
      P.axiom("a_int", {{"N", n2}, {"VS", vs}, {"MEM", M1}}),
      P.axiom("a_asgn", {{"N", n2}, {"VS", vs}, {"MEM", M1}, {"X", i2}}));

  // guard: push i2 and i1, commute the memory after the first read
  int read2 = P.axiom(
      "a_id", {{"X", i2}, {"N", n2}, {"VS", vs}, {"MEM", M1}});
  int commute = P.axiom("a_mem2", {{"MEM", memv},
                                   {"X", i1},
                                   {"N", n1},
                                   {"Y", i2},
                                   {"M", n2}});
  int cfg_iff = P.dia_cong(op_config, 1, {st2}, commute);
  int cfg_imp = push_taut_consequence(b, {cfg_iff},
                                      Formula::impl(c2_12, c2_21));
  int read2c = push_compose(b, read2, P.mono(cavai2, cfg_imp));
  int read1 = P.axiom(
      "a_id", {{"X", i1}, {"N", n1}, {"VS", st2}, {"MEM", M2}});
  int cmp = P.axiom("a_leq", {{"N1", n1},
                              {"N2", n2},
                              {"T", Formula::app(sig.op_id("true"), {})},
                              {"VS", vs},
                              {"MEM", M21}});
  int LXB = P.compose(read2c, P.compose(read1, cmp));  // g2 -> [guard code] g3

  // true branch pops the test value, reads i1, writes m
  int LXT = P.compose(
      P.axiom("a_test", {{"V", bvT}, {"VS", vs}, {"MEM", M21}}),
      P.compose(
          P.axiom("a_id", {{"X", i1}, {"N", n1}, {"VS", vs}, {"MEM", M2}}),
          P.axiom("a_asgn",
                  {{"N", n1}, {"VS", vs}, {"MEM", M21}, {"X", mI}})));

  // false branch: the mismatched test boxes anything, aim at [rest]g4
  Formula F1 = Formula::app(op_comp, {cavai2, asgn_m});
  int ntest = P.axiom("a_ntest", {{"V", bvT},
                                  {"V2", bvF},
                                  {"VS", vs},
                                  {"MEM", M21},
                                  {"G", P.box(F1, g4)}});
  int LXF = P.fold(ntest);

  int LNF = P.compose(LX1, P.compose(LX2, P.compose(LXB, P.join(LXT, LXF))));

  // rename the machine form back to the source statement
  StmtPtr pgm = parse_program(pgm_source());
  auto [nf, nidx] = P.norm_sctrl(pgm);
  if (nf != P.split(LNF).pi)
    throw Error("internal: normal form mismatch in the program proof");
  int swap = P.dia_cong(sig.op_id("exec"), 0, {Formula::neg(g4)}, nidx);
  Formula goal = Formula::impl(
      g0, P.box(Formula::app(sig.op_id("cs"), {stmt_formula(sig, pgm)}), g4));
  int last = push_taut_consequence(b, {LNF, swap}, goal);
  return b.finish(last);
}

Proof mem_get_theorem() {
  Signature sig = smc_signature();
  AxiomSet ax = smc_axioms(sig);
  ProofBuilder b(sig, ProofMode::Global);
  const Formula memv = Formula::var(sig.var_id("mem"));
  const OpId op_set = sig.op_id("set");
  const Formula m21 = Formula::app(
      op_set,
      {Formula::app(op_set, {memv, pvar_formula(sig, "i2"),
                             nat_formula(sig, 2)}),
       pvar_formula(sig, "i1"), nat_formula(sig, 1)});
  int idx = b.scheme_inst(ax, "a_mem1", {{"MEM", m21},
                                         {"X", pvar_formula(sig, "m")},
                                         {"N", nat_formula(sig, 1)}});
  return b.finish(idx);
}

}  // namespace msml::smc
