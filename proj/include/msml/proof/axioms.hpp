#pragma once

#include <map>
#include <string>
#include <vector>

#include "msml/core/format.hpp"
#include "msml/core/formula.hpp"
#include "msml/core/signature.hpp"

namespace msml {

// Which structural rule set a proof may use alongside the scheme axioms.
// Standard: K instances, dual instances, necessitation. Alternative:
// normality and additivity schemes (auto-registered per operator) with the
// monotonicity rule; necessitation and K/dual citations are rejected.
enum class Basis { Standard, Alternative };

struct SchemeGuard {
  enum Kind {
    IntAdd,    // three nullary numeral operators, third is the sum
    LeqTruth,  // two numerals and a true/false operator matching <=
    Distinct,  // two ground arguments that are not structurally equal
    IsBot,     // argument is the canonical falsum of its sort
  };
  Kind kind;
  std::vector<std::string> metas;
};

// A scheme is stored as a formula over an augmented signature: the base
// signature plus one fresh variable per metavariable. Identifiers of base
// sorts, operators and variables are unchanged by the augmentation, so
// binding formulas written over the base signature can be checked directly.
struct AxiomScheme {
  std::string name;
  Signature sig;
  int base_vars = 0;  // variables with id >= base_vars are metavariables
  std::vector<VarId> metas;
  Formula templ;
  std::vector<SchemeGuard> guards;
  bool auto_generated = false;
};

struct AxiomSet {
  Basis basis = Basis::Standard;
  std::vector<AxiomScheme> schemes;

  const AxiomScheme* find(const std::string& name) const;
  void add(AxiomScheme s);  // throws on duplicate name
};

// Checks the binding covers exactly the metavariables with sort-correct,
// metavariable-free formulas, evaluates the guards, and substitutes.
Formula instantiate_scheme(const AxiomScheme& s,
                           const std::map<std::string, Formula>& binding);

// Structural-rule schemes, built on demand. Positions are 0-based.
AxiomScheme k_scheme(const Signature& sig, OpId op, int pos);
AxiomScheme dual_scheme(const Signature& sig, OpId op);
AxiomScheme norm_scheme(const Signature& sig, OpId op, int pos);
AxiomScheme add_scheme(const Signature& sig, OpId op, int pos);

// Text form: one `basis` line and one `scheme` line per axiom,
//   scheme <name> [meta <M> : <sort>]... [guard <pred>(<M>,...)]... ::= <formula>
// Under the alternative basis, norm_<op>_<i> and add_<op>_<i> schemes are
// registered automatically for every non-nullary operator (1-based <i>).
AxiomSet parse_axioms(const Signature& sig, const std::string& text,
                      BoxMode mode = BoxMode::Literal);
std::string print_axioms(const AxiomSet& set, BoxMode mode = BoxMode::Literal);

}  // namespace msml
