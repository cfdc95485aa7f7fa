#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "msml/core/signature.hpp"

namespace msml {

enum class FKind : unsigned char { Var, Not, Or, App };

class Formula;

struct FNode {
  FKind kind;
  int sym;  // VarId for Var, OpId for App, unused otherwise
  std::vector<Formula> args;
  std::uint64_t hash;
};

// Immutable handle to a kernel formula node. The kernel keeps only
// {Var, Not, Or, App}; conjunction, implication, equivalence, bottom, top and
// duals are built as sugar over these four. Subtrees are shared; equality is
// structural (hash-accelerated) on the desugared kernel.
class Formula {
 public:
  Formula() = default;

  static Formula var(VarId v);
  static Formula neg(Formula a);
  static Formula disj(Formula a, Formula b);
  static Formula app(OpId op, std::vector<Formula> args);

  // Derived connectives (pure tree sugar, no signature needed).
  static Formula conj(Formula a, Formula b);   // !(!a | !b)
  static Formula impl(Formula a, Formula b);   // !a | b
  static Formula iff(Formula a, Formula b);    // (a->b) & (b->a)

  bool valid() const { return node_ != nullptr; }
  FKind kind() const { return node_->kind; }
  VarId var_sym() const { return node_->sym; }
  OpId op_sym() const { return node_->sym; }
  int arg_count() const { return static_cast<int>(node_->args.size()); }
  const Formula& arg(int i) const { return node_->args[i]; }
  const std::vector<Formula>& args() const { return node_->args; }
  const FNode* raw() const { return node_.get(); }
  std::uint64_t hash() const { return node_->hash; }

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

  // Pattern helpers over the kernel tree.
  bool is_neg() const { return node_->kind == FKind::Not; }
  // a -> b is the kernel tree (!a | b); returns true and fills a, b.
  bool match_impl(Formula* a, Formula* b) const;
  // a & b is the kernel tree !(!a | !b).
  bool match_conj(Formula* a, Formula* b) const;
  // a <-> b is (a->b) & (b->a) with identical a, b across both conjuncts.
  bool match_iff(Formula* a, Formula* b) const;

  int depth() const;  // Var counts as depth 0
  int size() const;   // node count

 private:
  explicit Formula(std::shared_ptr<const FNode> n) : node_(std::move(n)) {}
  static Formula make(FKind k, int sym, std::vector<Formula> args);
  std::shared_ptr<const FNode> node_;
};

// Computes the sort of phi under sig, validating the whole tree: known
// symbols, matching Or-children sorts, App arity and argument sorts.
SortId sort_of(const Signature& sig, const Formula& phi);

// bot_s = p & !p and top_s = !bot_s for the canonical variable p of s.
Formula mk_bot(const Signature& sig, SortId s);
Formula mk_top(const Signature& sig, SortId s);

// Dual application: !op(!a1, ..., !an). Rejects nullary ops.
Formula mk_dual(const Signature& sig, OpId op, std::vector<Formula> args);

// Simultaneous sorted substitution of variables; every binding must map a
// variable to a formula of the variable's sort.
Formula substitute(const Signature& sig, const Formula& phi,
                   const std::unordered_map<VarId, Formula>& theta);

// All variables occurring in phi (each listed once, first-occurrence order).
std::vector<VarId> free_vars(const Formula& phi);
bool is_ground(const Formula& phi);

// Hypothesis sets and similar collections; membership is structural.
using FormulaSet = std::vector<Formula>;
bool contains_formula(const FormulaSet& set, const Formula& phi);
// Appends phi unless already present; returns true when added.
bool insert_formula(FormulaSet& set, const Formula& phi);

}  // namespace msml

template <>
struct std::hash<msml::Formula> {
  std::size_t operator()(const msml::Formula& f) const noexcept {
    return static_cast<std::size_t>(f.hash());
  }
};
