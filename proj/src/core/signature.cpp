#include "msml/core/signature.hpp"

#include <sstream>

#include "msml/core/text.hpp"

namespace msml {

namespace {

bool valid_ident(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!is_ident_char(c)) return false;
  return true;
}

}  // namespace

SortId Signature::add_sort(const std::string& name) {
  if (!valid_ident(name)) throw SortError("invalid sort name '" + name + "'");
  if (sort_index_.count(name)) throw SortError("duplicate sort '" + name + "'");
  SortId id = static_cast<SortId>(sorts_.size());
  sorts_.push_back(name);
  vars_by_sort_.emplace_back();
  sort_index_.emplace(name, id);
  return id;
}

OpId Signature::add_op(const std::string& name, std::vector<SortId> args, SortId result) {
  if (!valid_ident(name)) throw SortError("invalid op name '" + name + "'");
  if (op_index_.count(name)) throw SortError("duplicate op '" + name + "'");
  if (var_index_.count(name))
    throw SortError("symbol '" + name + "' already declared as a variable");
  for (SortId s : args)
    if (s < 0 || s >= sort_count()) throw SortError("op '" + name + "': undeclared argument sort");
  if (result < 0 || result >= sort_count())
    throw SortError("op '" + name + "': undeclared result sort");
  OpId id = static_cast<OpId>(ops_.size());
  ops_.push_back(OpDecl{name, std::move(args), result});
  op_index_.emplace(name, id);
  return id;
}

VarId Signature::add_var(const std::string& name, SortId sort) {
  if (!valid_ident(name)) throw SortError("invalid variable name '" + name + "'");
  if (var_index_.count(name)) throw SortError("duplicate variable '" + name + "'");
  if (op_index_.count(name))
    throw SortError("symbol '" + name + "' already declared as an op");
  if (sort < 0 || sort >= sort_count())
    throw SortError("variable '" + name + "': undeclared sort");
  VarId id = static_cast<VarId>(vars_.size());
  vars_.push_back(VarDecl{name, sort});
  vars_by_sort_[sort].push_back(id);
  var_index_.emplace(name, id);
  return id;
}

SortId Signature::sort_id(const std::string& name) const {
  auto it = sort_index_.find(name);
  if (it == sort_index_.end()) throw SortError("unknown sort '" + name + "'");
  return it->second;
}

OpId Signature::op_id(const std::string& name) const {
  auto it = op_index_.find(name);
  if (it == op_index_.end()) throw SortError("unknown op '" + name + "'");
  return it->second;
}

VarId Signature::var_id(const std::string& name) const {
  auto it = var_index_.find(name);
  if (it == var_index_.end()) throw SortError("unknown variable '" + name + "'");
  return it->second;
}

SortId Signature::find_sort(const std::string& name) const {
  auto it = sort_index_.find(name);
  return it == sort_index_.end() ? -1 : it->second;
}

OpId Signature::find_op(const std::string& name) const {
  auto it = op_index_.find(name);
  return it == op_index_.end() ? -1 : it->second;
}

VarId Signature::find_var(const std::string& name) const {
  auto it = var_index_.find(name);
  return it == var_index_.end() ? -1 : it->second;
}

VarId Signature::canonical_var(SortId s) const {
  if (s < 0 || s >= sort_count()) throw SortError("unknown sort id");
  const auto& pool = vars_by_sort_[s];
  if (pool.empty())
    throw SortError("sort '" + sorts_[s] + "' has no declared variable");
  return pool.front();
}

Signature parse_signature(const std::string& text) {
  Signature sig;
  for_each_line(text, [&](int, const std::vector<std::string>& tok) {
    if (tok[0] == "sort") {
      if (tok.size() != 2) throw ParseError("expected: sort <ident>");
      sig.add_sort(tok[1]);
    } else if (tok[0] == "op") {
      // op <name> : <argsort>* -> <resultsort>
      if (tok.size() < 5 || tok[2] != ":")
        throw ParseError("expected: op <ident> : <ident>* -> <ident>");
      std::size_t arrow = 0;
      for (std::size_t i = 3; i < tok.size(); ++i)
        if (tok[i] == "->") { arrow = i; break; }
      if (arrow == 0 || arrow + 2 != tok.size())
        throw ParseError("expected: op <ident> : <ident>* -> <ident>");
      std::vector<SortId> args;
      for (std::size_t i = 3; i < arrow; ++i) args.push_back(sig.sort_id(tok[i]));
      sig.add_op(tok[1], std::move(args), sig.sort_id(tok[arrow + 1]));
    } else if (tok[0] == "var") {
      if (tok.size() != 4 || tok[2] != ":")
        throw ParseError("expected: var <ident> : <ident>");
      sig.add_var(tok[1], sig.sort_id(tok[3]));
    } else {
      throw ParseError("unknown declaration '" + tok[0] + "'");
    }
  });
  for (SortId s = 0; s < sig.sort_count(); ++s)
    if (sig.vars_of(s).empty())
      throw ParseError("sort '" + sig.sort_name(s) + "' has an empty variable set");
  return sig;
}

std::string print_signature(const Signature& sig) {
  std::ostringstream out;
  for (SortId s = 0; s < sig.sort_count(); ++s) out << "sort " << sig.sort_name(s) << "\n";
  for (OpId o = 0; o < sig.op_count(); ++o) {
    const OpDecl& d = sig.op(o);
    out << "op " << d.name << " :";
    for (SortId s : d.args) out << " " << sig.sort_name(s);
    out << " -> " << sig.sort_name(d.result) << "\n";
  }
  for (VarId v = 0; v < sig.var_count(); ++v)
    out << "var " << sig.var(v).name << " : " << sig.sort_name(sig.var(v).sort) << "\n";
  return out.str();
}

}  // namespace msml
