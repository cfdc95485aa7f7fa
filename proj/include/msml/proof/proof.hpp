#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "msml/core/format.hpp"
#include "msml/core/formula.hpp"
#include "msml/core/signature.hpp"
#include "msml/proof/axioms.hpp"

namespace msml {

// One proof line. Step indices (from1, from2) are 0-based positions of
// earlier steps; operator argument positions (pos) are 0-based too. The text
// format prints both 1-based.
struct Justification {
  enum Kind {
    Taut,      // propositional tautology over the boolean skeleton
    Scheme,    // named axiom scheme instance: scheme + binding
    KInst,     // distribution axiom for op at pos: op + pos + binding
    DualInst,  // dual axiom for op: op + binding
    Hyp,       // hypothesis (global mode only)
    MP,        // from1 proves A -> B, from2 proves A, step is B
    UG,        // step is the boxed premise: op, pos, from1, sides
    Mono,      // from1 proves A -> B, step is op(..A..) -> op(..B..)
  };
  Kind kind = Taut;
  std::string scheme;
  OpId op = -1;
  int pos = -1;
  std::map<std::string, Formula> binding;
  int from1 = -1;
  int from2 = -1;
  std::vector<Formula> sides;  // fixed arguments, in position order, skipping pos
};

struct ProofStep {
  Formula formula;
  Justification just;
};

// Local: a plain theorem proof whose last step must be the witness
// implication (w1 & (w2 & ...)) -> goal over the listed witnesses; hypothesis
// steps are not allowed. Global: steps may also cite members of hyps.
enum class ProofMode { Local, Global };

struct Proof {
  ProofMode mode = ProofMode::Global;
  SortId local_sort = -1;
  FormulaSet hyps;
  std::vector<int> witnesses;  // 0-based indices into hyps, local mode only
  std::vector<ProofStep> steps;

  const Formula& conclusion() const { return steps.back().formula; }
};

struct CheckResult {
  bool ok = false;
  int step = -1;  // 1-based offending step, -1 for a proof-level failure
  std::string reason;
};

// Validates every step against the axiom set and its basis: standard proofs
// may use taut/scheme/k/dual/hyp/mp/ug, alternative ones taut/scheme/hyp/mp/
// mono. Checks sorts, witness shape and hypothesis sorts. Never throws for
// an invalid proof; malformed input surfaces as a failed CheckResult.
CheckResult check_proof(const Signature& sig, const AxiomSet& axioms,
                        const Proof& p);

// (w1 & (w2 & ...)) -> goal, right-associated; goal itself when ws is empty.
Formula witness_implication(const FormulaSet& ws, const Formula& goal);

// w1 & (w2 & ...), right-associated; throws on an empty list.
Formula conj_nest(const FormulaSet& ws);

// op(s1, ..., at, ..., sn) with `at` inserted at pos among the sides, and the
// dual form. Validates arity and position.
Formula apply_at(const Signature& sig, OpId op, int pos,
                 const std::vector<Formula>& sides, const Formula& at);
Formula box_at(const Signature& sig, OpId op, int pos,
               const std::vector<Formula>& sides, const Formula& at);

using FileLoader = std::function<std::string(const std::string&)>;

// Header line, then numbered steps:
//   mode global [hyps <file>]
//   mode local <sort> [hyps <file>] [witnesses <i> ...]
//   <n>. <formula> ; <justification>
// Justifications: taut | axiom <name> [{M := f, ...}] | k <op> <i> {...} |
// dual <op> {...} | hyp | mp <implication> <antecedent> |
// ug <op> <i> <premise> [[f, ...]] | mono <op> <i> <premise> [[f, ...]].
// Steps must be numbered 1..n in order; the loader resolves the hyps file.
Proof parse_proof(const Signature& sig, const std::string& text,
                  BoxMode mode = BoxMode::Literal, const FileLoader& loader = {});

// hyps_file names the side file referenced from the header; required exactly
// when the proof has hypotheses (the caller writes that file itself).
std::string print_proof(const Signature& sig, const Proof& p,
                        BoxMode mode = BoxMode::Literal,
                        const std::string& hyps_file = "");

// One formula per line, '#' comments.
FormulaSet parse_formula_set(const Signature& sig, const std::string& text,
                             BoxMode mode = BoxMode::Literal);
std::string print_formula_set(const Signature& sig, const FormulaSet& set,
                              BoxMode mode = BoxMode::Literal);

}  // namespace msml
