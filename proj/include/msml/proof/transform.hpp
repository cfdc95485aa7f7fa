#pragma once

#include "msml/proof/derive.hpp"

namespace msml {

// Moves phi from the hypothesis side into the conclusion: the input proves
// its goal from witnesses that may include phi; the output keeps the same
// hypothesis pool but concludes phi -> goal from the witnesses minus one
// occurrence of phi (phi may be absent, which just weakens the conclusion).
// Costs one tautology step and one mp on top of the input.
Proof dt_local(const Signature& sig, const AxiomSet& axioms,
               const Proof& input, const Formula& phi);

// Inverse direction: from a proof concluding phi -> psi, derive psi with phi
// appended to the witnesses (or reused, when phi already is one).
Proof dt_local_intro(const Signature& sig, const AxiomSet& axioms,
                     const Proof& input, const Formula& phi);

// Replays a global proof as a local theorem: every hypothesis step becomes a
// witness, every boxing step pushes the collected witnesses through the
// operator, so the final witnesses are members of the boxed closure of the
// original hypotheses. Each witness comes with its construction chain.
struct GlobalizeResult {
  Proof local_proof;  // hyps = the witnesses below, all of them cited
  std::vector<GammaChain> witnesses;
};
GlobalizeResult globalize(const Signature& sig, const AxiomSet& axioms,
                          const Proof& input);

// Global deduction step: from a global proof over hypotheses including phi,
// derive (w1 & ... & wn) -> conclusion over the remaining hypotheses, where
// the wi are boxed-closure members with core phi (none used: plain
// conclusion).
struct DtGlobalResult {
  Proof global_proof;
  std::vector<GammaChain> witnesses;
};
DtGlobalResult dt_global(const Signature& sig, const AxiomSet& axioms,
                         const Proof& input, const Formula& phi);

// Inverse reconstructions, used to close the round trip: each witness is
// re-derived from its core hypothesis by one boxing step per chain layer,
// then cut against the witness implication, giving back a plain proof of the
// original conclusion over the original hypotheses.
Proof globalize_undo(const Signature& sig, const AxiomSet& axioms,
                     const GlobalizeResult& r);
Proof dt_global_undo(const Signature& sig, const AxiomSet& axioms,
                     const DtGlobalResult& r, const Formula& phi);

}  // namespace msml
