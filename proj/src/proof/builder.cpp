#include "msml/proof/builder.hpp"

#include "msml/core/errors.hpp"
#include "msml/proof/taut.hpp"

namespace msml {

int ProofBuilder::add(Formula f, Justification j) {
  auto it = index_.find(f);
  if (it != index_.end()) return it->second;
  int idx = static_cast<int>(steps_.size());
  steps_.push_back({std::move(f), std::move(j)});
  index_.emplace(steps_.back().formula, idx);
  return idx;
}

int ProofBuilder::taut(const Formula& f) {
  if (!taut_check(sig_, f))
    throw Error("builder: claimed tautology is not one");
  Justification j;
  j.kind = Justification::Taut;
  return add(f, std::move(j));
}

int ProofBuilder::hyp(const Formula& f) {
  if (mode_ == ProofMode::Local)
    throw Error("builder: hypothesis step in a local proof");
  insert_formula(hyps_, f);
  Justification j;
  j.kind = Justification::Hyp;
  return add(f, std::move(j));
}

int ProofBuilder::scheme_inst(const AxiomSet& axioms, const std::string& name,
                              const std::map<std::string, Formula>& binding) {
  const AxiomScheme* s = axioms.find(name);
  if (!s) throw Error("builder: unknown scheme '" + name + "'");
  Formula f = instantiate_scheme(*s, binding);
  Justification j;
  j.kind = Justification::Scheme;
  j.scheme = name;
  j.binding = binding;
  return add(std::move(f), std::move(j));
}

int ProofBuilder::k_inst(OpId op, int pos, const std::vector<Formula>& sides,
                         const Formula& phi, const Formula& chi) {
  Formula f = Formula::impl(
      box_at(sig_, op, pos, sides, Formula::impl(phi, chi)),
      Formula::impl(box_at(sig_, op, pos, sides, phi),
                    box_at(sig_, op, pos, sides, chi)));
  Justification j;
  j.kind = Justification::KInst;
  j.op = op;
  j.pos = pos;
  int k = 0;
  for (int a = 0; a < sig_.op(op).arity(); ++a)
    if (a != pos) j.binding.emplace("PSI" + std::to_string(a + 1), sides[k++]);
  j.binding.emplace("PHI", phi);
  j.binding.emplace("CHI", chi);
  return add(std::move(f), std::move(j));
}

int ProofBuilder::dual_inst(OpId op, const std::vector<Formula>& args) {
  std::vector<Formula> negd;
  negd.reserve(args.size());
  for (const Formula& a : args) negd.push_back(Formula::neg(a));
  Formula f = Formula::iff(Formula::app(op, args),
                           Formula::neg(mk_dual(sig_, op, std::move(negd))));
  Justification j;
  j.kind = Justification::DualInst;
  j.op = op;
  for (size_t a = 0; a < args.size(); ++a)
    j.binding.emplace("PSI" + std::to_string(a + 1), args[a]);
  return add(std::move(f), std::move(j));
}

int ProofBuilder::mp(int imp, int ante) {
  Formula a, b;
  if (!formula(imp).match_impl(&a, &b))
    throw Error("builder: mp premise is not an implication");
  if (a != formula(ante))
    throw Error("builder: mp antecedent mismatch");
  Justification j;
  j.kind = Justification::MP;
  j.from1 = imp;
  j.from2 = ante;
  return add(std::move(b), std::move(j));
}

int ProofBuilder::ug(OpId op, int pos, const std::vector<Formula>& sides,
                     int premise) {
  Formula f = box_at(sig_, op, pos, sides, formula(premise));
  Justification j;
  j.kind = Justification::UG;
  j.op = op;
  j.pos = pos;
  j.from1 = premise;
  j.sides = sides;
  return add(std::move(f), std::move(j));
}

int ProofBuilder::mono(OpId op, int pos, const std::vector<Formula>& sides,
                       int premise) {
  Formula a, b;
  if (!formula(premise).match_impl(&a, &b))
    throw Error("builder: mono premise is not an implication");
  Formula f = Formula::impl(apply_at(sig_, op, pos, sides, a),
                            apply_at(sig_, op, pos, sides, b));
  Justification j;
  j.kind = Justification::Mono;
  j.op = op;
  j.pos = pos;
  j.from1 = premise;
  j.sides = sides;
  return add(std::move(f), std::move(j));
}

int ProofBuilder::replay(const Proof& q) {
  if (q.steps.empty()) throw Error("builder: cannot replay an empty proof");
  for (const Formula& h : q.hyps) insert_formula(hyps_, h);
  std::vector<int> remap(q.steps.size(), -1);
  for (size_t i = 0; i < q.steps.size(); ++i) {
    Justification j = q.steps[i].just;
    if (j.kind == Justification::Hyp && mode_ == ProofMode::Local)
      throw Error("builder: replayed proof uses hypotheses in local mode");
    if (j.from1 >= 0) j.from1 = remap.at(j.from1);
    if (j.from2 >= 0) j.from2 = remap.at(j.from2);
    remap[i] = add(q.steps[i].formula, std::move(j));
  }
  return remap.back();
}

Proof ProofBuilder::finish(int conclusion, std::vector<int> witnesses) const {
  if (conclusion < 0 || conclusion >= size())
    throw Error("builder: conclusion index out of range");
  std::vector<char> keep(steps_.size(), 0);
  std::vector<int> stack{conclusion};
  keep[conclusion] = 1;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    const Justification& j = steps_[i].just;
    for (int r : {j.from1, j.from2})
      if (r >= 0 && !keep[r]) {
        keep[r] = 1;
        stack.push_back(r);
      }
  }
  Proof out;
  out.mode = mode_;
  out.local_sort = local_sort_;
  out.hyps = hyps_;
  out.witnesses = std::move(witnesses);
  std::vector<int> remap(steps_.size(), -1);
  for (int i = 0; i <= conclusion; ++i) {
    if (!keep[i]) continue;
    remap[i] = static_cast<int>(out.steps.size());
    ProofStep st = steps_[i];
    if (st.just.from1 >= 0) st.just.from1 = remap[st.just.from1];
    if (st.just.from2 >= 0) st.just.from2 = remap[st.just.from2];
    out.steps.push_back(std::move(st));
  }
  return out;
}

}  // namespace msml
