#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msml/core/formula.hpp"
#include "msml/core/signature.hpp"
#include "msml/semantics/model.hpp"

namespace msml {

// Element of a finite powerset algebra: a set of atoms as a bit mask. The
// mask doubles as the element's index into operator tables.
using Elem = std::uint32_t;

constexpr int kMaxBaoAtoms = 16;

// One powerset algebra per sort plus one table per declared operator.
// tables[op] is flat over tuples of elements, first argument varying
// fastest; nullary operators hold a single constant entry.
struct Bao {
  std::vector<int> atoms;  // per sort, 1..kMaxBaoAtoms
  std::vector<std::vector<Elem>> tables;

  int elem_count(SortId s) const { return 1 << atoms[s]; }
  Elem top(SortId s) const { return (Elem{1} << atoms[s]) - 1; }
};

// All-bottom operator tables.
Bao make_bao(const Signature& sig, std::vector<int> atoms);

// Sizes, atom ranges and table entries within the result sort.
void check_bao_shape(const Signature& sig, const Bao& b);

Elem bao_apply(const Signature& sig, const Bao& b, OpId op,
               const std::vector<Elem>& args);

// Overrides a single table entry, shape-checked; the hook tests use to
// plant operator defects.
void bao_set(const Signature& sig, Bao& b, OpId op,
             const std::vector<Elem>& args, Elem result);

// Additive completion of atom-level rows: rows[op] is indexed by atom
// tuples (mixed radix, first argument fastest) and maps to result masks;
// the table entry for an element tuple is the join of its atom rows.
Bao bao_from_atom_rows(const Signature& sig, std::vector<int> atoms,
                       const std::vector<std::vector<Elem>>& rows);

struct BaoVerdict {
  bool ok = true;
  std::string reason;
};

// Operator laws, checked exhaustively: bottom in any coordinate maps to
// bottom, and every coordinate distributes over binary joins. Set-algebra
// laws of the sort algebras are spot-checked on seeded random triples.
BaoVerdict check_bao(const Signature& sig, const Bao& b,
                     std::uint64_t seed = 0);

// Value of phi under one element per declared variable.
Elem bao_eval(const Signature& sig, const Bao& b, const Formula& phi,
              const std::vector<Elem>& assign);

// Algebra of a frame: atoms are the worlds, and an operator sends element
// tuples to the set of result worlds some relation tuple draws entirely
// from them. Each table entry is computed from that definition directly.
Bao complex_algebra(const Signature& sig, const Frame& f);

// Frame on the ultrafilters of the sort algebras. Every ultrafilter of a
// finite powerset algebra is the up-set of one atom, so worlds correspond
// to atoms; the relation quantifies over full ultrafilter contents and is
// cross-checked against its atom-level characterization, which agrees
// exactly when the operators are monotone (anything else throws).
Frame ultrafilter_frame(const Signature& sig, const Bao& b);

// The map a -> {ultrafilters containing a} into the complex algebra of the
// ultrafilter frame, verified to be a bijective homomorphism on every sort
// and operator table.
BaoVerdict jt_check(const Signature& sig, const Bao& b);

// Text form:
//   atoms <sort> <n>
//   op <name> <atom>* -> <atom>*
// One atoms line per sort, all before the first op row. Each op row gives
// the result mask for one atom tuple; absent rows mean bottom, so only
// normal additive operators are expressible and print_bao rejects tables
// that their own atom rows do not rebuild.
Bao parse_bao(const Signature& sig, const std::string& text);
std::string print_bao(const Signature& sig, const Bao& b);

}  // namespace msml
