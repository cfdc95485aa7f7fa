#pragma once

#include <string>

#include "msml/core/formula.hpp"
#include "msml/core/signature.hpp"

namespace msml {

// Desugaring of the bracket notation [op](f1, ..., fn), n >= 1:
//   Literal: !op(!f1, ..., !fn)        (the dual of op)
//   Pdl:     !op(f1, ..., fn-1, !fn)   (only the last argument flips)
// The two coincide for unary ops. Pdl is the convention of program logics
// where the first arguments name programs and the last one a postcondition.
enum class BoxMode { Literal, Pdl };

// Concrete syntax, loosest to tightest: <->, -> (both right-associative),
// |, & (left-associative), prefix !, then atoms: identifiers, bot@<sort>,
// top@<sort>, op(f1, ..., fn), [op](f1, ..., fn), parentheses.
// The result is fully desugared and sort-checked; syntax errors carry a
// column position.
Formula parse_formula(const Signature& sig, const std::string& text,
                      BoxMode mode = BoxMode::Literal);

// Re-sugars bot/top (canonical-variable pattern only), <->, &, bracket
// applications per mode, and ->. parse_formula(print_formula(f)) == f.
std::string print_formula(const Signature& sig, const Formula& phi,
                          BoxMode mode = BoxMode::Literal);

}  // namespace msml
