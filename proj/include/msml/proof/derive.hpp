#pragma once

#include "msml/proof/builder.hpp"

namespace msml {

// Step-level constructions over a builder. All of them assume the standard
// basis; the emitted steps use taut, k, dual, ug and mp only.

// One tautology step premise1 -> (premise2 -> ... -> goal) followed by an mp
// per premise; returns the index of goal.
int push_taut_consequence(ProofBuilder& b, const std::vector<int>& premises,
                          const Formula& goal);

// From ab: a -> b and bc: b -> c derives a -> c.
int push_compose(ProofBuilder& b, int ab, int bc);

// From imp: x -> y derives box(.., x, ..) -> box(.., y, ..) at pos.
int push_box_mono(ProofBuilder& b, OpId op, int pos,
                  const std::vector<Formula>& sides, int imp);

// Theorem (box(..x..) & box(..y..)) -> box(..x & y..) and its converse.
int push_box_conj_intro(ProofBuilder& b, OpId op, int pos,
                        const std::vector<Formula>& sides, const Formula& x,
                        const Formula& y);
int push_box_conj_elim(ProofBuilder& b, OpId op, int pos,
                       const std::vector<Formula>& sides, const Formula& x,
                       const Formula& y);

// From imp: x -> y derives op(.., x, ..) -> op(.., y, ..).
int push_dia_mono(ProofBuilder& b, OpId op, int pos,
                  const std::vector<Formula>& sides, int imp);

// Theorem (box(..w1..) & (box(..w2..) & ...)) -> box(..w1 & (w2 & ...)..)
// for a nonempty list of formulas, nesting to the right.
int push_box_conj_nest(ProofBuilder& b, OpId op, int pos,
                       const std::vector<Formula>& sides, const FormulaSet& ws);

// Standalone hypothesis-free proofs in global mode, built from the premise
// proofs where one is required. Premise proofs must themselves check and
// carry no hypotheses.

// box(..x..) -> box(..y..) from a proof of x -> y.
Proof derive_mono(const Signature& sig, const AxiomSet& axioms, OpId op,
                  int pos, const std::vector<Formula>& sides,
                  const Proof& imp_proof);

// box(..x & y..) <-> (box(..x..) & box(..y..)).
Proof derive_box_conj(const Signature& sig, const AxiomSet& axioms, OpId op,
                      int pos, const std::vector<Formula>& sides,
                      const Formula& x, const Formula& y);

// op(..x | y..) <-> (op(..x..) | op(..y..)).
Proof derive_dia_disj(const Signature& sig, const AxiomSet& axioms, OpId op,
                      int pos, const std::vector<Formula>& sides,
                      const Formula& x, const Formula& y);

// op(..x..) <-> op(..y..) from a proof of x <-> y.
Proof derive_cong(const Signature& sig, const AxiomSet& axioms, OpId op,
                  int pos, const std::vector<Formula>& sides,
                  const Proof& iff_proof);

// A hypothesis wrapped in successive boxed layers, innermost first; records
// how a member of the boxed closure was built.
struct GammaLayer {
  OpId op;
  int pos;
  std::vector<Formula> sides;
};

struct GammaChain {
  Formula core;
  std::vector<GammaLayer> layers;
  Formula witness;
};

Formula fold_chain(const Signature& sig, const Formula& core,
                   const std::vector<GammaLayer>& layers);
bool verify_chain(const Signature& sig, const GammaChain& c);

// Levels 0..depth of the boxed closure. Input and output are indexed by
// sort; level 0 is the input, level k+1 adds box(.., g, ..) for every
// operator, position, level-k member g, and side formulas drawn from the
// pool (every combination of pool members of the fixed argument sorts).
// Throws when a wrap is applicable but the pool lacks a needed sort.
std::vector<std::vector<FormulaSet>> gamma_closure(
    const Signature& sig, const std::vector<FormulaSet>& gamma0,
    const FormulaSet& side_pool, int depth);

}  // namespace msml
