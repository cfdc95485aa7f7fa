#pragma once

#include <unordered_map>

#include "msml/proof/proof.hpp"

namespace msml {

// Accumulates proof steps with structural deduplication: adding a formula
// that already has a step returns the existing index instead of a new line.
// References therefore always point backward, and finish() can prune every
// step the conclusion does not transitively cite.
class ProofBuilder {
 public:
  ProofBuilder(const Signature& sig, ProofMode mode, SortId local_sort = -1)
      : sig_(sig), mode_(mode), local_sort_(local_sort) {}

  // Tautology steps are verified eagerly; a non-tautology is a construction
  // bug and throws.
  int taut(const Formula& f);
  int hyp(const Formula& f);  // also records f in the hypothesis pool
  int scheme_inst(const AxiomSet& axioms, const std::string& name,
                  const std::map<std::string, Formula>& binding);
  int k_inst(OpId op, int pos, const std::vector<Formula>& sides,
             const Formula& phi, const Formula& chi);
  int dual_inst(OpId op, const std::vector<Formula>& args);
  int mp(int imp, int ante);
  int ug(OpId op, int pos, const std::vector<Formula>& sides, int premise);
  int mono(OpId op, int pos, const std::vector<Formula>& sides, int premise);

  // Appends all steps of q, remapping its references; returns the index of
  // q's conclusion. q's hypotheses join the pool.
  int replay(const Proof& q);

  const Formula& formula(int idx) const { return steps_.at(idx).formula; }
  int size() const { return static_cast<int>(steps_.size()); }
  const FormulaSet& hyps() const { return hyps_; }
  const Signature& sig() const { return sig_; }

  // Proof ending at the given step, uncited steps pruned, indices renumbered.
  Proof finish(int conclusion, std::vector<int> witnesses = {}) const;

 private:
  int add(Formula f, Justification j);

  const Signature& sig_;
  ProofMode mode_;
  SortId local_sort_;
  FormulaSet hyps_;
  std::vector<ProofStep> steps_;
  std::unordered_map<Formula, int> index_;
};

}  // namespace msml
