#include "msml/proof/derive.hpp"

#include "msml/core/errors.hpp"

namespace msml {

namespace {

std::vector<Formula> negate_all(const std::vector<Formula>& fs) {
  std::vector<Formula> out;
  out.reserve(fs.size());
  for (const Formula& f : fs) out.push_back(Formula::neg(f));
  return out;
}

void require_theorem(const Signature& sig, const AxiomSet& axioms,
                     const Proof& p, const char* who) {
  if (!p.hyps.empty())
    throw Error(std::string(who) + ": premise proof must be hypothesis-free");
  CheckResult r = check_proof(sig, axioms, p);
  if (!r.ok)
    throw Error(std::string(who) + ": premise proof fails at step " +
                std::to_string(r.step) + ": " + r.reason);
}

void require_standard(const AxiomSet& axioms, const char* who) {
  if (axioms.basis != Basis::Standard)
    throw Error(std::string(who) + ": needs the standard basis");
}

}  // namespace

int push_taut_consequence(ProofBuilder& b, const std::vector<int>& premises,
                          const Formula& goal) {
  Formula t = goal;
  for (int i = static_cast<int>(premises.size()) - 1; i >= 0; --i)
    t = Formula::impl(b.formula(premises[i]), t);
  int idx = b.taut(t);
  for (int p : premises) idx = b.mp(idx, p);
  return idx;
}

int push_compose(ProofBuilder& b, int ab, int bc) {
  Formula a, x, y, c;
  if (!b.formula(ab).match_impl(&a, &x) || !b.formula(bc).match_impl(&y, &c))
    throw Error("compose: premises must be implications");
  if (x != y) throw Error("compose: middle formulas differ");
  return push_taut_consequence(b, {ab, bc}, Formula::impl(a, c));
}

int push_box_mono(ProofBuilder& b, OpId op, int pos,
                  const std::vector<Formula>& sides, int imp) {
  Formula x, y;
  if (!b.formula(imp).match_impl(&x, &y))
    throw Error("box_mono: premise must be an implication");
  int u = b.ug(op, pos, sides, imp);
  int k = b.k_inst(op, pos, sides, x, y);
  return b.mp(k, u);
}

int push_box_conj_intro(ProofBuilder& b, OpId op, int pos,
                        const std::vector<Formula>& sides, const Formula& x,
                        const Formula& y) {
  const Signature& sig = b.sig();
  Formula xy = Formula::conj(x, y);
  Formula bx = box_at(sig, op, pos, sides, x);
  Formula by = box_at(sig, op, pos, sides, y);
  Formula bxy = box_at(sig, op, pos, sides, xy);
  int t1 = b.taut(Formula::impl(x, Formula::impl(y, xy)));
  int u1 = b.ug(op, pos, sides, t1);
  int k1 = b.k_inst(op, pos, sides, x, Formula::impl(y, xy));
  int s1 = b.mp(k1, u1);
  int k2 = b.k_inst(op, pos, sides, y, xy);
  return push_taut_consequence(
      b, {s1, k2}, Formula::impl(Formula::conj(bx, by), bxy));
}

int push_box_conj_elim(ProofBuilder& b, OpId op, int pos,
                       const std::vector<Formula>& sides, const Formula& x,
                       const Formula& y) {
  const Signature& sig = b.sig();
  Formula xy = Formula::conj(x, y);
  Formula bx = box_at(sig, op, pos, sides, x);
  Formula by = box_at(sig, op, pos, sides, y);
  Formula bxy = box_at(sig, op, pos, sides, xy);
  int m1 = push_box_mono(b, op, pos, sides, b.taut(Formula::impl(xy, x)));
  int m2 = push_box_mono(b, op, pos, sides, b.taut(Formula::impl(xy, y)));
  return push_taut_consequence(
      b, {m1, m2}, Formula::impl(bxy, Formula::conj(bx, by)));
}

int push_dia_mono(ProofBuilder& b, OpId op, int pos,
                  const std::vector<Formula>& sides, int imp) {
  const Signature& sig = b.sig();
  Formula x, y;
  if (!b.formula(imp).match_impl(&x, &y))
    throw Error("dia_mono: premise must be an implication");
  std::vector<Formula> nsides = negate_all(sides);
  int cp = push_taut_consequence(
      b, {imp}, Formula::impl(Formula::neg(y), Formula::neg(x)));
  int bm = push_box_mono(b, op, pos, nsides, cp);
  int d1 = b.dual_inst(op, [&] {
    std::vector<Formula> a;
    int k = 0;
    for (int j = 0; j < sig.op(op).arity(); ++j)
      a.push_back(j == pos ? x : sides[k++]);
    return a;
  }());
  int d2 = b.dual_inst(op, [&] {
    std::vector<Formula> a;
    int k = 0;
    for (int j = 0; j < sig.op(op).arity(); ++j)
      a.push_back(j == pos ? y : sides[k++]);
    return a;
  }());
  Formula dx = apply_at(sig, op, pos, sides, x);
  Formula dy = apply_at(sig, op, pos, sides, y);
  return push_taut_consequence(b, {bm, d1, d2}, Formula::impl(dx, dy));
}

int push_box_conj_nest(ProofBuilder& b, OpId op, int pos,
                       const std::vector<Formula>& sides,
                       const FormulaSet& ws) {
  const Signature& sig = b.sig();
  if (ws.empty()) throw Error("box_conj_nest: empty witness list");
  Formula suffix = ws.back();
  Formula bnest = box_at(sig, op, pos, sides, suffix);
  int cur = b.taut(Formula::impl(bnest, bnest));
  for (int t = static_cast<int>(ws.size()) - 2; t >= 0; --t) {
    const Formula& wt = ws[t];
    int pair = push_box_conj_intro(b, op, pos, sides, wt, suffix);
    suffix = Formula::conj(wt, suffix);
    bnest = Formula::conj(box_at(sig, op, pos, sides, wt), bnest);
    cur = push_taut_consequence(
        b, {cur, pair},
        Formula::impl(bnest, box_at(sig, op, pos, sides, suffix)));
  }
  return cur;
}

Proof derive_mono(const Signature& sig, const AxiomSet& axioms, OpId op,
                  int pos, const std::vector<Formula>& sides,
                  const Proof& imp_proof) {
  require_standard(axioms, "derive_mono");
  require_theorem(sig, axioms, imp_proof, "derive_mono");
  ProofBuilder b(sig, ProofMode::Global);
  int i = b.replay(imp_proof);
  return b.finish(push_box_mono(b, op, pos, sides, i));
}

Proof derive_box_conj(const Signature& sig, const AxiomSet& axioms, OpId op,
                      int pos, const std::vector<Formula>& sides,
                      const Formula& x, const Formula& y) {
  require_standard(axioms, "derive_box_conj");
  ProofBuilder b(sig, ProofMode::Global);
  Formula bx = box_at(sig, op, pos, sides, x);
  Formula by = box_at(sig, op, pos, sides, y);
  Formula bxy = box_at(sig, op, pos, sides, Formula::conj(x, y));
  int elim = push_box_conj_elim(b, op, pos, sides, x, y);
  int intro = push_box_conj_intro(b, op, pos, sides, x, y);
  int c = push_taut_consequence(
      b, {elim, intro}, Formula::iff(bxy, Formula::conj(bx, by)));
  return b.finish(c);
}

Proof derive_dia_disj(const Signature& sig, const AxiomSet& axioms, OpId op,
                      int pos, const std::vector<Formula>& sides,
                      const Formula& x, const Formula& y) {
  require_standard(axioms, "derive_dia_disj");
  ProofBuilder b(sig, ProofMode::Global);
  std::vector<Formula> nsides = negate_all(sides);
  Formula nx = Formula::neg(x);
  Formula ny = Formula::neg(y);
  Formula nxy = Formula::neg(Formula::disj(x, y));

  int t1 = b.taut(Formula::impl(nxy, Formula::conj(nx, ny)));
  int m1 = push_box_mono(b, op, pos, nsides, t1);
  int t2 = b.taut(Formula::impl(Formula::conj(nx, ny), nxy));
  int m2 = push_box_mono(b, op, pos, nsides, t2);
  int bci = push_box_conj_intro(b, op, pos, nsides, nx, ny);
  int bce = push_box_conj_elim(b, op, pos, nsides, nx, ny);

  auto full = [&](const Formula& at) {
    std::vector<Formula> a;
    int k = 0;
    for (int j = 0; j < sig.op(op).arity(); ++j)
      a.push_back(j == pos ? at : sides[k++]);
    return a;
  };
  int d0 = b.dual_inst(op, full(Formula::disj(x, y)));
  int d1 = b.dual_inst(op, full(x));
  int d2 = b.dual_inst(op, full(y));

  Formula da = apply_at(sig, op, pos, sides, Formula::disj(x, y));
  Formula dx = apply_at(sig, op, pos, sides, x);
  Formula dy = apply_at(sig, op, pos, sides, y);
  int c = push_taut_consequence(
      b, {m1, m2, bci, bce, d0, d1, d2},
      Formula::iff(da, Formula::disj(dx, dy)));
  return b.finish(c);
}

Proof derive_cong(const Signature& sig, const AxiomSet& axioms, OpId op,
                  int pos, const std::vector<Formula>& sides,
                  const Proof& iff_proof) {
  require_standard(axioms, "derive_cong");
  require_theorem(sig, axioms, iff_proof, "derive_cong");
  ProofBuilder b(sig, ProofMode::Global);
  int e = b.replay(iff_proof);
  Formula x, y;
  if (!b.formula(e).match_iff(&x, &y))
    throw Error("derive_cong: premise proof must conclude an equivalence");
  int f1 = push_taut_consequence(b, {e}, Formula::impl(x, y));
  int f2 = push_taut_consequence(b, {e}, Formula::impl(y, x));
  int m1 = push_dia_mono(b, op, pos, sides, f1);
  int m2 = push_dia_mono(b, op, pos, sides, f2);
  Formula dx = apply_at(sig, op, pos, sides, x);
  Formula dy = apply_at(sig, op, pos, sides, y);
  int c = push_taut_consequence(b, {m1, m2}, Formula::iff(dx, dy));
  return b.finish(c);
}

Formula fold_chain(const Signature& sig, const Formula& core,
                   const std::vector<GammaLayer>& layers) {
  Formula f = core;
  for (const GammaLayer& l : layers) f = box_at(sig, l.op, l.pos, l.sides, f);
  return f;
}

bool verify_chain(const Signature& sig, const GammaChain& c) {
  try {
    return fold_chain(sig, c.core, c.layers) == c.witness;
  } catch (const Error&) {
    return false;
  }
}

std::vector<std::vector<FormulaSet>> gamma_closure(
    const Signature& sig, const std::vector<FormulaSet>& gamma0,
    const FormulaSet& side_pool, int depth) {
  if (static_cast<int>(gamma0.size()) != sig.sort_count())
    throw Error("gamma_closure: input must list one set per sort");
  if (depth < 0) throw Error("gamma_closure: negative depth");
  for (SortId s = 0; s < sig.sort_count(); ++s)
    for (const Formula& g : gamma0[s])
      if (sort_of(sig, g) != s)
        throw Error("gamma_closure: formula filed under sort " +
                    sig.sort_name(s) + " has sort " +
                    sig.sort_name(sort_of(sig, g)));

  std::vector<FormulaSet> pool_by_sort(sig.sort_count());
  for (const Formula& f : side_pool)
    pool_by_sort[sort_of(sig, f)].push_back(f);

  std::vector<std::vector<FormulaSet>> levels{gamma0};
  for (int k = 0; k < depth; ++k) {
    std::vector<FormulaSet> next = levels.back();
    const std::vector<FormulaSet>& cur = levels.back();
    for (OpId o = 0; o < sig.op_count(); ++o) {
      const OpDecl& d = sig.op(o);
      for (int i = 0; i < d.arity(); ++i) {
        const FormulaSet& gs = cur[d.args[i]];
        if (gs.empty()) continue;
        std::vector<const FormulaSet*> pools;
        for (int j = 0; j < d.arity(); ++j) {
          if (j == i) continue;
          const FormulaSet& p = pool_by_sort[d.args[j]];
          if (p.empty())
            throw Error("gamma_closure: side pool has no formula of sort " +
                        sig.sort_name(d.args[j]) + " for operator " + d.name);
          pools.push_back(&p);
        }
        std::vector<size_t> idx(pools.size(), 0);
        while (true) {
          std::vector<Formula> sides;
          sides.reserve(pools.size());
          for (size_t t = 0; t < pools.size(); ++t)
            sides.push_back((*pools[t])[idx[t]]);
          for (const Formula& g : gs)
            insert_formula(next[d.result], box_at(sig, o, i, sides, g));
          size_t t = 0;
          for (; t < idx.size(); ++t) {
            if (++idx[t] < pools[t]->size()) break;
            idx[t] = 0;
          }
          if (t == idx.size()) break;
        }
      }
    }
    levels.push_back(std::move(next));
  }
  return levels;
}

}  // namespace msml
