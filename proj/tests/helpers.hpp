#pragma once

#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "msml/algebra/bao.hpp"
#include "msml/core/format.hpp"
#include "msml/core/formula.hpp"
#include "msml/core/signature.hpp"
#include "msml/proof/builder.hpp"

namespace msml::testing {

// Two sorts, a mix of arities, several variables per sort.
inline Signature small_sig() {
  return parse_signature(
      "sort u\n"
      "sort v\n"
      "op f : u -> u\n"
      "op g : u v -> v\n"
      "op h : v -> u\n"
      "op c : -> u\n"
      "var p : u\n"
      "var q : u\n"
      "var r : v\n"
      "var s : v\n");
}

// Random well-sorted formula of the requested sort, depth bounded by the
// budget. Goes through the sugar builders as well as the kernel ones so
// printer round-trip tests exercise every surface form.
inline Formula random_formula(const Signature& sig, SortId sort, int depth,
                              std::mt19937_64& rng) {
  auto pick = [&rng](int n) {
    return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
  };
  if (depth <= 0) {
    std::vector<Formula> leaves;
    for (VarId v : sig.vars_of(sort)) leaves.push_back(Formula::var(v));
    for (OpId o = 0; o < sig.op_count(); ++o) {
      if (sig.op(o).arity() == 0 && sig.op(o).result == sort)
        leaves.push_back(Formula::app(o, {}));
    }
    leaves.push_back(mk_bot(sig, sort));
    leaves.push_back(mk_top(sig, sort));
    return leaves[pick(static_cast<int>(leaves.size()))];
  }
  std::vector<OpId> apps;
  for (OpId o = 0; o < sig.op_count(); ++o) {
    if (sig.op(o).result == sort && sig.op(o).arity() > 0) apps.push_back(o);
  }
  int choice = pick(apps.empty() ? 6 : 8);
  switch (choice) {
    case 0:
      return Formula::neg(random_formula(sig, sort, depth - 1, rng));
    case 1:
      return Formula::disj(random_formula(sig, sort, depth - 1, rng),
                           random_formula(sig, sort, depth - 1, rng));
    case 2:
      return Formula::conj(random_formula(sig, sort, depth - 1, rng),
                           random_formula(sig, sort, depth - 1, rng));
    case 3:
      return Formula::impl(random_formula(sig, sort, depth - 1, rng),
                           random_formula(sig, sort, depth - 1, rng));
    case 4:
      return Formula::iff(random_formula(sig, sort, depth - 1, rng),
                          random_formula(sig, sort, depth - 1, rng));
    case 5:
      return random_formula(sig, sort, 0, rng);
    default: {
      OpId o = apps[pick(static_cast<int>(apps.size()))];
      const OpDecl& d = sig.op(o);
      std::vector<Formula> args;
      args.reserve(d.args.size());
      for (SortId as : d.args)
        args.push_back(random_formula(sig, as, depth - 1, rng));
      if (choice == 7) return mk_dual(sig, o, std::move(args));
      return Formula::app(o, std::move(args));
    }
  }
}

// Every distinct formula buildable from the atoms with !, |, op application
// and dual application of the given unary ops, to the requested surface
// depth. Structural duplicates (e.g. a dual spelled via explicit negations)
// are kept once.
inline std::vector<Formula> all_formulas_unary(const Signature& sig,
                                               const std::vector<Formula>& atoms,
                                               const std::vector<OpId>& ops,
                                               int depth) {
  std::vector<Formula> all;
  std::unordered_set<Formula> seen;
  auto add = [&](const Formula& f) {
    if (seen.insert(f).second) all.push_back(f);
  };
  for (const Formula& a : atoms) add(a);
  for (int d = 0; d < depth; ++d) {
    std::vector<Formula> cur = all;
    for (const Formula& f : cur) {
      add(Formula::neg(f));
      for (OpId o : ops) {
        add(Formula::app(o, {f}));
        add(mk_dual(sig, o, {f}));
      }
    }
    for (const Formula& f : cur)
      for (const Formula& g : cur) add(Formula::disj(f, g));
  }
  return all;
}

// One-step theorem proof for a tautology.
inline Proof taut_theorem(const Signature& sig, const Formula& f) {
  ProofBuilder b(sig, ProofMode::Global);
  return b.finish(b.taut(f));
}

// Random valid global proof: seeds identity tautologies, axiom instances and
// hypotheses drawn from the pool, then grows by weakening, pairing, boxing
// and detachment. Every produced proof passes check_proof by construction.
inline Proof random_proof(const Signature& sig, const FormulaSet& hyp_pool,
                          int grow_steps, std::mt19937_64& rng) {
  ProofBuilder b(sig, ProofMode::Global);
  auto pick = [&rng](size_t n) {
    return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
  };
  std::vector<int> steps;
  std::vector<char> dep;  // whether the step leans on a hypothesis
  {
    Formula a = random_formula(sig, pick(sig.sort_count()), 1, rng);
    steps.push_back(b.taut(Formula::impl(a, a)));
    dep.push_back(0);
  }
  for (const Formula& h : hyp_pool)
    if (rng() % 2) {
      steps.push_back(b.hyp(h));
      dep.push_back(1);
    }

  std::vector<std::pair<OpId, int>> slots;
  for (OpId o = 0; o < sig.op_count(); ++o)
    for (int i = 0; i < sig.op(o).arity(); ++i) slots.push_back({o, i});

  for (int it = 0; it < grow_steps; ++it) {
    int si = pick(steps.size());
    int src = steps[si];
    Formula x = b.formula(src);
    SortId xs = sort_of(sig, x);
    switch (pick(4)) {
      case 0: {
        Formula r = random_formula(sig, xs, 1, rng);
        int t = b.taut(Formula::impl(x, Formula::disj(x, r)));
        steps.push_back(b.mp(t, src));
        dep.push_back(dep[si]);
        break;
      }
      case 1: {
        int si2 = pick(steps.size());
        int src2 = steps[si2];
        Formula y = b.formula(src2);
        if (sort_of(sig, y) != xs) break;
        int t = b.taut(
            Formula::impl(x, Formula::impl(y, Formula::conj(x, y))));
        steps.push_back(b.mp(b.mp(t, src), src2));
        dep.push_back(dep[si] || dep[si2]);
        break;
      }
      case 2: {
        std::vector<std::pair<OpId, int>> fit;
        for (auto [o, i] : slots)
          if (sig.op(o).args[i] == xs) fit.push_back({o, i});
        if (fit.empty()) break;
        auto [o, i] = fit[pick(fit.size())];
        std::vector<Formula> sides;
        for (int j = 0; j < sig.op(o).arity(); ++j)
          if (j != i)
            sides.push_back(random_formula(sig, sig.op(o).args[j], 1, rng));
        steps.push_back(b.ug(o, i, sides, src));
        dep.push_back(dep[si]);
        break;
      }
      default: {
        if (slots.empty()) break;
        auto [o, i] = slots[pick(slots.size())];
        if (rng() % 2) {
          std::vector<Formula> sides;
          for (int j = 0; j < sig.op(o).arity(); ++j)
            if (j != i)
              sides.push_back(random_formula(sig, sig.op(o).args[j], 1, rng));
          Formula phi = random_formula(sig, sig.op(o).args[i], 1, rng);
          Formula chi = random_formula(sig, sig.op(o).args[i], 1, rng);
          steps.push_back(b.k_inst(o, i, sides, phi, chi));
        } else {
          std::vector<Formula> args;
          for (int j = 0; j < sig.op(o).arity(); ++j)
            args.push_back(random_formula(sig, sig.op(o).args[j], 1, rng));
          steps.push_back(b.dual_inst(o, args));
        }
        dep.push_back(0);
        break;
      }
    }
  }
  // Prefer a conclusion that actually leans on a hypothesis: pair the final
  // step with a hypothesis-dependent one of the same sort when there is one.
  if (!dep.back()) {
    Formula x = b.formula(steps.back());
    SortId xs = sort_of(sig, x);
    for (size_t k = steps.size(); k-- > 0;) {
      if (!dep[k]) continue;
      Formula y = b.formula(steps[k]);
      if (sort_of(sig, y) != xs) continue;
      int t =
          b.taut(Formula::impl(x, Formula::impl(y, Formula::conj(x, y))));
      steps.push_back(b.mp(b.mp(t, steps.back()), steps[k]));
      break;
    }
  }
  return b.finish(steps.back());
}

// Random additive algebra: 1..max_atoms atoms per sort, uniformly random
// atom rows per operator, additively completed.
inline Bao random_bao(const Signature& sig, int max_atoms,
                      std::mt19937_64& rng) {
  std::vector<int> atoms(sig.sort_count());
  for (SortId s = 0; s < sig.sort_count(); ++s)
    atoms[s] = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_atoms));
  std::vector<std::vector<Elem>> rows(sig.op_count());
  for (OpId o = 0; o < sig.op_count(); ++o) {
    const OpDecl& d = sig.op(o);
    size_t n = 1;
    for (SortId s : d.args) n *= static_cast<size_t>(atoms[s]);
    Elem top = (Elem{1} << atoms[d.result]) - 1;
    rows[o].resize(n);
    for (Elem& r : rows[o]) r = static_cast<Elem>(rng()) & top;
  }
  return bao_from_atom_rows(sig, atoms, rows);
}

}  // namespace msml::testing
