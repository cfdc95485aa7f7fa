#include "msml/proof/transform.hpp"

#include <functional>
#include <unordered_map>

#include "msml/core/errors.hpp"

namespace msml {

namespace {

void require_checked(const Signature& sig, const AxiomSet& axioms,
                     const Proof& p, const char* who) {
  CheckResult r = check_proof(sig, axioms, p);
  if (!r.ok)
    throw Error(std::string(who) + ": input proof fails at step " +
                std::to_string(r.step) + ": " + r.reason);
}

int replay_axiom_step(ProofBuilder& b, const AxiomSet& axioms,
                      const ProofStep& st) {
  const Justification& j = st.just;
  switch (j.kind) {
    case Justification::Taut:
      return b.taut(st.formula);
    case Justification::Scheme:
      return b.scheme_inst(axioms, j.scheme, j.binding);
    case Justification::KInst: {
      const OpDecl& d = b.sig().op(j.op);
      std::vector<Formula> sides;
      for (int a = 0; a < d.arity(); ++a)
        if (a != j.pos)
          sides.push_back(j.binding.at("PSI" + std::to_string(a + 1)));
      return b.k_inst(j.op, j.pos, sides, j.binding.at("PHI"),
                      j.binding.at("CHI"));
    }
    case Justification::DualInst: {
      const OpDecl& d = b.sig().op(j.op);
      std::vector<Formula> args;
      for (int a = 0; a < d.arity(); ++a)
        args.push_back(j.binding.at("PSI" + std::to_string(a + 1)));
      return b.dual_inst(j.op, args);
    }
    default:
      throw Error("internal: not an axiom step");
  }
}

// Walks a checked global proof keeping, per step, a witness list W and a
// builder step proving (conj W -> formula); W members carry construction
// chains. as_witness decides whether a hypothesis is promoted to a witness
// (with an identity-implication step) or re-emitted as a hypothesis step.
void run_witness_induction(
    const AxiomSet& axioms, const Proof& input, ProofBuilder& b,
    const std::function<bool(const Formula&)>& as_witness,
    std::vector<FormulaSet>& W, std::vector<int>& L,
    std::unordered_map<Formula, GammaChain>& chains) {
  const Signature& sig = b.sig();
  W.assign(input.steps.size(), {});
  L.assign(input.steps.size(), -1);

  for (size_t i = 0; i < input.steps.size(); ++i) {
    const ProofStep& st = input.steps[i];
    const Justification& j = st.just;
    switch (j.kind) {
      case Justification::Taut:
      case Justification::Scheme:
      case Justification::KInst:
      case Justification::DualInst:
        L[i] = replay_axiom_step(b, axioms, st);
        break;
      case Justification::Hyp:
        if (as_witness(st.formula)) {
          W[i] = {st.formula};
          L[i] = b.taut(Formula::impl(st.formula, st.formula));
          if (!chains.count(st.formula))
            chains.emplace(st.formula,
                           GammaChain{st.formula, {}, st.formula});
        } else {
          L[i] = b.hyp(st.formula);
        }
        break;
      case Justification::MP: {
        int ji = j.from1;
        int ki = j.from2;
        if (W[ji].empty() && W[ki].empty()) {
          L[i] = b.mp(L[ji], L[ki]);
          break;
        }
        FormulaSet u = W[ji];
        for (const Formula& f : W[ki]) insert_formula(u, f);
        L[i] = push_taut_consequence(b, {L[ji], L[ki]},
                                     witness_implication(u, st.formula));
        W[i] = std::move(u);
        break;
      }
      case Justification::UG: {
        int p = j.from1;
        if (W[p].empty()) {
          L[i] = b.ug(j.op, j.pos, j.sides, L[p]);
          break;
        }
        int u = b.ug(j.op, j.pos, j.sides, L[p]);
        int k = b.k_inst(j.op, j.pos, j.sides, conj_nest(W[p]),
                         input.steps[p].formula);
        int m = b.mp(k, u);
        int bc = push_box_conj_nest(b, j.op, j.pos, j.sides, W[p]);
        FormulaSet bw;
        for (const Formula& g : W[p])
          bw.push_back(box_at(sig, j.op, j.pos, j.sides, g));
        L[i] = push_taut_consequence(b, {bc, m},
                                     witness_implication(bw, st.formula));
        for (size_t t = 0; t < bw.size(); ++t) {
          if (!chains.count(bw[t])) {
            GammaChain c = chains.at(W[p][t]);
            c.layers.push_back({j.op, j.pos, j.sides});
            c.witness = bw[t];
            chains.emplace(bw[t], std::move(c));
          }
        }
        W[i] = std::move(bw);
        break;
      }
      case Justification::Mono:
        throw Error("internal: mono step in a standard-basis proof");
    }
  }
}

}  // namespace

Proof dt_local(const Signature& sig, const AxiomSet& axioms,
               const Proof& input, const Formula& phi) {
  if (input.mode != ProofMode::Local)
    throw Error("dt_local: input must be a local proof");
  require_checked(sig, axioms, input, "dt_local");
  if (sort_of(sig, phi) != input.local_sort)
    throw Error("dt_local: phi must have the local sort");

  FormulaSet ws;
  for (int w : input.witnesses) ws.push_back(input.hyps[w]);
  Formula goal = input.conclusion();
  if (!ws.empty()) {
    Formula a;
    if (!input.conclusion().match_impl(&a, &goal))
      throw Error("dt_local: malformed witness implication");
  }
  std::vector<int> wit2 = input.witnesses;
  FormulaSet ws2 = ws;
  for (size_t i = 0; i < ws2.size(); ++i) {
    if (ws2[i] == phi) {
      ws2.erase(ws2.begin() + static_cast<long>(i));
      wit2.erase(wit2.begin() + static_cast<long>(i));
      break;
    }
  }
  Formula target = witness_implication(ws2, Formula::impl(phi, goal));

  ProofBuilder b(sig, ProofMode::Local, input.local_sort);
  int base = b.replay(input);
  int t = b.taut(Formula::impl(input.conclusion(), target));
  Proof out = b.finish(b.mp(t, base));
  out.hyps = input.hyps;
  out.witnesses = std::move(wit2);
  return out;
}

Proof dt_local_intro(const Signature& sig, const AxiomSet& axioms,
                     const Proof& input, const Formula& phi) {
  if (input.mode != ProofMode::Local)
    throw Error("dt_local_intro: input must be a local proof");
  require_checked(sig, axioms, input, "dt_local_intro");
  if (sort_of(sig, phi) != input.local_sort)
    throw Error("dt_local_intro: phi must have the local sort");

  FormulaSet ws;
  for (int w : input.witnesses) ws.push_back(input.hyps[w]);
  Formula goal = input.conclusion();
  if (!ws.empty()) {
    Formula a;
    if (!input.conclusion().match_impl(&a, &goal))
      throw Error("dt_local_intro: malformed witness implication");
  }
  Formula a, psi;
  if (!goal.match_impl(&a, &psi) || a != phi)
    throw Error("dt_local_intro: conclusion does not end in phi -> ...");

  FormulaSet hyps2 = input.hyps;
  std::vector<int> wit2 = input.witnesses;
  FormulaSet ws2 = ws;
  if (!contains_formula(ws, phi)) {
    int at = -1;
    for (size_t i = 0; i < hyps2.size(); ++i)
      if (hyps2[i] == phi) at = static_cast<int>(i);
    if (at < 0) {
      at = static_cast<int>(hyps2.size());
      hyps2.push_back(phi);
    }
    wit2.push_back(at);
    ws2.push_back(phi);
  }
  Formula target = witness_implication(ws2, psi);

  ProofBuilder b(sig, ProofMode::Local, input.local_sort);
  int base = b.replay(input);
  int t = b.taut(Formula::impl(input.conclusion(), target));
  Proof out = b.finish(b.mp(t, base));
  out.hyps = std::move(hyps2);
  out.witnesses = std::move(wit2);
  return out;
}

GlobalizeResult globalize(const Signature& sig, const AxiomSet& axioms,
                          const Proof& input) {
  if (axioms.basis != Basis::Standard)
    throw Error("globalize: needs the standard basis");
  if (input.mode != ProofMode::Global)
    throw Error("globalize: input must be a global proof");
  require_checked(sig, axioms, input, "globalize");

  ProofBuilder b(sig, ProofMode::Local, sort_of(sig, input.conclusion()));
  std::vector<FormulaSet> W;
  std::vector<int> L;
  std::unordered_map<Formula, GammaChain> chains;
  run_witness_induction(axioms, input, b,
                        [](const Formula&) { return true; }, W, L, chains);

  GlobalizeResult res;
  res.local_proof = b.finish(L.back());
  res.local_proof.hyps = W.back();
  for (size_t i = 0; i < W.back().size(); ++i) {
    res.local_proof.witnesses.push_back(static_cast<int>(i));
    res.witnesses.push_back(chains.at(W.back()[i]));
  }
  return res;
}

DtGlobalResult dt_global(const Signature& sig, const AxiomSet& axioms,
                         const Proof& input, const Formula& phi) {
  if (axioms.basis != Basis::Standard)
    throw Error("dt_global: needs the standard basis");
  if (input.mode != ProofMode::Global)
    throw Error("dt_global: input must be a global proof");
  require_checked(sig, axioms, input, "dt_global");
  sort_of(sig, phi);

  FormulaSet gamma;
  for (const Formula& h : input.hyps)
    if (h != phi) gamma.push_back(h);

  ProofBuilder b(sig, ProofMode::Global);
  std::vector<FormulaSet> W;
  std::vector<int> L;
  std::unordered_map<Formula, GammaChain> chains;
  run_witness_induction(axioms, input, b,
                        [&](const Formula& f) { return f == phi; }, W, L,
                        chains);

  DtGlobalResult res;
  res.global_proof = b.finish(L.back());
  res.global_proof.hyps = gamma;
  for (const Formula& w : W.back()) res.witnesses.push_back(chains.at(w));
  return res;
}

namespace {

// Replays the witnessed proof, re-derives each witness from its chain core
// by successive boxing steps, and cuts to the bare conclusion.
Proof undo_common(const Signature& sig, const AxiomSet& axioms,
                  const Proof& witnessed,
                  const std::vector<GammaChain>& chains, FormulaSet hyps,
                  const char* who) {
  CheckResult r = check_proof(sig, axioms, witnessed);
  if (!r.ok)
    throw Error(std::string(who) + ": witnessed proof fails at step " +
                std::to_string(r.step) + ": " + r.reason);
  ProofBuilder b(sig, ProofMode::Global);
  int main_idx = b.replay(witnessed);
  Proof out;
  if (chains.empty()) {
    out = b.finish(main_idx);
    out.hyps = std::move(hyps);
    return out;
  }
  std::vector<int> premises{main_idx};
  for (const GammaChain& c : chains) {
    if (!verify_chain(sig, c))
      throw Error(std::string(who) + ": witness chain does not rebuild");
    if (!contains_formula(hyps, c.core))
      throw Error(std::string(who) + ": chain core is not a hypothesis");
    int cur = b.hyp(c.core);
    for (const GammaLayer& l : c.layers) cur = b.ug(l.op, l.pos, l.sides, cur);
    if (b.formula(cur) != c.witness)
      throw Error(std::string(who) + ": rebuilt witness differs");
    premises.push_back(cur);
  }
  Formula nest, psi;
  if (!witnessed.conclusion().match_impl(&nest, &psi))
    throw Error(std::string(who) + ": conclusion lacks witnesses");
  int c = push_taut_consequence(b, premises, psi);
  out = b.finish(c);
  out.hyps = std::move(hyps);
  return out;
}

}  // namespace

Proof globalize_undo(const Signature& sig, const AxiomSet& axioms,
                     const GlobalizeResult& r) {
  FormulaSet hyps;
  for (const GammaChain& c : r.witnesses) insert_formula(hyps, c.core);
  Proof theorem = r.local_proof;
  theorem.mode = ProofMode::Global;
  theorem.local_sort = -1;
  theorem.hyps.clear();
  theorem.witnesses.clear();
  Proof out = undo_common(sig, axioms, theorem,
                          r.witnesses, std::move(hyps), "globalize_undo");
  return out;
}

Proof dt_global_undo(const Signature& sig, const AxiomSet& axioms,
                     const DtGlobalResult& r, const Formula& phi) {
  for (const GammaChain& c : r.witnesses)
    if (c.core != phi)
      throw Error("dt_global_undo: chain core differs from phi");
  FormulaSet hyps = r.global_proof.hyps;
  insert_formula(hyps, phi);
  return undo_common(sig, axioms, r.global_proof, r.witnesses,
                     std::move(hyps), "dt_global_undo");
}

}  // namespace msml
