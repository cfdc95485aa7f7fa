#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "msml/core/errors.hpp"

namespace msml {

using SortId = int;
using OpId = int;
using VarId = int;

// Identifiers are nonempty runs of these characters. Leading digits are
// allowed so that numerals can be declared as nullary ops.
inline bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '\'';
}

// Operation symbol with fixed argument sorts and a result sort. Nullary ops
// (empty args) are constants at the formula level.
struct OpDecl {
  std::string name;
  std::vector<SortId> args;
  SortId result;

  int arity() const { return static_cast<int>(args.size()); }
};

struct VarDecl {
  std::string name;
  SortId sort;
};

// Many-sorted signature: sorts, operation symbols, and per-sort variable
// pools. Invariants enforced on construction:
//   - sort/op/variable names unique; variables and ops never share a name;
//   - ops and variables only reference declared sorts.
// Every sort is expected to own at least one variable; this is checked by
// parse_signature and by canonical_var (the first-declared variable of a
// sort, used to desugar bottom/top).
class Signature {
 public:
  SortId add_sort(const std::string& name);
  OpId add_op(const std::string& name, std::vector<SortId> args, SortId result);
  VarId add_var(const std::string& name, SortId sort);

  int sort_count() const { return static_cast<int>(sorts_.size()); }
  int op_count() const { return static_cast<int>(ops_.size()); }
  int var_count() const { return static_cast<int>(vars_.size()); }

  const std::string& sort_name(SortId s) const { return sorts_.at(s); }
  const OpDecl& op(OpId o) const { return ops_.at(o); }
  const VarDecl& var(VarId v) const { return vars_.at(v); }

  // Throwing lookups (SortError) and non-throwing probes (-1 when absent).
  SortId sort_id(const std::string& name) const;
  OpId op_id(const std::string& name) const;
  VarId var_id(const std::string& name) const;
  SortId find_sort(const std::string& name) const;
  OpId find_op(const std::string& name) const;
  VarId find_var(const std::string& name) const;

  // First-declared variable of the sort; throws when the pool is empty.
  VarId canonical_var(SortId s) const;
  const std::vector<VarId>& vars_of(SortId s) const { return vars_by_sort_.at(s); }

 private:
  std::vector<std::string> sorts_;
  std::vector<OpDecl> ops_;
  std::vector<VarDecl> vars_;
  std::vector<std::vector<VarId>> vars_by_sort_;
  std::unordered_map<std::string, SortId> sort_index_;
  std::unordered_map<std::string, OpId> op_index_;
  std::unordered_map<std::string, VarId> var_index_;
};

// Line-oriented signature source:
//   sort <ident>
//   op <ident> : <ident>* -> <ident>
//   var <ident> : <ident>
// '#' starts a comment. Every declared sort must end up with at least one
// variable.
Signature parse_signature(const std::string& text);

std::string print_signature(const Signature& sig);

}  // namespace msml
