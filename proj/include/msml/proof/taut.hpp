#pragma once

#include "msml/core/formula.hpp"
#include "msml/core/signature.hpp"

namespace msml {

// Decides propositional validity of the boolean skeleton: every variable and
// every operator application is abstracted to an atom (identical subtrees to
// the same atom), then all valuations are tried, 64 per word. Throws Error
// when the skeleton has more than 20 distinct atoms.
bool taut_check(const Signature& sig, const Formula& phi);

// Number of distinct atoms the check would use.
int taut_atom_count(const Signature& sig, const Formula& phi);

}  // namespace msml
