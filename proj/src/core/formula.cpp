#include "msml/core/formula.hpp"

#include <functional>

#include "msml/core/errors.hpp"

namespace msml {

namespace {

constexpr std::uint64_t kSeedVar = 0x9e3779b97f4a7c15ull;
constexpr std::uint64_t kSeedNot = 0xc2b2ae3d27d4eb4full;
constexpr std::uint64_t kSeedOr = 0x165667b19e3779f9ull;
constexpr std::uint64_t kSeedApp = 0x27d4eb2f165667c5ull;

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

Formula Formula::make(FKind k, int sym, std::vector<Formula> args) {
  std::uint64_t h = 0;
  switch (k) {
    case FKind::Var: h = kSeedVar; break;
    case FKind::Not: h = kSeedNot; break;
    case FKind::Or: h = kSeedOr; break;
    case FKind::App: h = kSeedApp; break;
  }
  h = mix(h, static_cast<std::uint64_t>(sym + 1));
  for (const Formula& a : args) h = mix(h, a.hash());
  return Formula(std::make_shared<FNode>(FNode{k, sym, std::move(args), h}));
}

Formula Formula::var(VarId v) { return make(FKind::Var, v, {}); }

Formula Formula::neg(Formula a) { return make(FKind::Not, 0, {std::move(a)}); }

Formula Formula::disj(Formula a, Formula b) {
  return make(FKind::Or, 0, {std::move(a), std::move(b)});
}

Formula Formula::app(OpId op, std::vector<Formula> args) {
  return make(FKind::App, op, std::move(args));
}

Formula Formula::conj(Formula a, Formula b) {
  return neg(disj(neg(std::move(a)), neg(std::move(b))));
}

Formula Formula::impl(Formula a, Formula b) {
  return disj(neg(std::move(a)), std::move(b));
}

Formula Formula::iff(Formula a, Formula b) {
  return conj(impl(a, b), impl(b, a));
}

bool Formula::operator==(const Formula& o) const {
  const FNode* x = node_.get();
  const FNode* y = o.node_.get();
  if (x == y) return true;
  if (x == nullptr || y == nullptr) return false;
  std::function<bool(const FNode*, const FNode*)> eq =
      [&eq](const FNode* a, const FNode* b) -> bool {
    if (a == b) return true;
    if (a->hash != b->hash || a->kind != b->kind || a->sym != b->sym ||
        a->args.size() != b->args.size()) {
      return false;
    }
    for (std::size_t i = 0; i < a->args.size(); ++i) {
      if (!eq(a->args[i].raw(), b->args[i].raw())) return false;
    }
    return true;
  };
  return eq(x, y);
}

bool Formula::match_impl(Formula* a, Formula* b) const {
  if (kind() != FKind::Or) return false;
  if (arg(0).kind() != FKind::Not) return false;
  if (a) *a = arg(0).arg(0);
  if (b) *b = arg(1);
  return true;
}

bool Formula::match_conj(Formula* a, Formula* b) const {
  if (kind() != FKind::Not) return false;
  const Formula& inner = arg(0);
  if (inner.kind() != FKind::Or) return false;
  if (inner.arg(0).kind() != FKind::Not || inner.arg(1).kind() != FKind::Not) {
    return false;
  }
  if (a) *a = inner.arg(0).arg(0);
  if (b) *b = inner.arg(1).arg(0);
  return true;
}

bool Formula::match_iff(Formula* a, Formula* b) const {
  Formula l, r;
  if (!match_conj(&l, &r)) return false;
  Formula la, lb, ra, rb;
  if (!l.match_impl(&la, &lb) || !r.match_impl(&ra, &rb)) return false;
  if (la != rb || lb != ra) return false;
  if (a) *a = la;
  if (b) *b = lb;
  return true;
}

int Formula::depth() const {
  int d = 0;
  for (const Formula& a : args()) d = std::max(d, 1 + a.depth());
  return d;
}

int Formula::size() const {
  int n = 1;
  for (const Formula& a : args()) n += a.size();
  return n;
}

SortId sort_of(const Signature& sig, const Formula& phi) {
  if (!phi.valid()) throw SortError("sort_of: empty formula");
  switch (phi.kind()) {
    case FKind::Var: {
      VarId v = phi.var_sym();
      if (v < 0 || v >= sig.var_count()) {
        throw SortError("sort_of: unknown variable id");
      }
      return sig.var(v).sort;
    }
    case FKind::Not:
      return sort_of(sig, phi.arg(0));
    case FKind::Or: {
      SortId a = sort_of(sig, phi.arg(0));
      SortId b = sort_of(sig, phi.arg(1));
      if (a != b) {
        throw SortError("sort mismatch in disjunction: " + sig.sort_name(a) +
                        " vs " + sig.sort_name(b));
      }
      return a;
    }
    case FKind::App: {
      OpId op = phi.op_sym();
      if (op < 0 || op >= sig.op_count()) {
        throw SortError("sort_of: unknown operator id");
      }
      const OpDecl& d = sig.op(op);
      if (phi.arg_count() != d.arity()) {
        throw SortError("operator " + d.name + " expects " +
                        std::to_string(d.arity()) + " arguments, got " +
                        std::to_string(phi.arg_count()));
      }
      for (int i = 0; i < d.arity(); ++i) {
        SortId got = sort_of(sig, phi.arg(i));
        if (got != d.args[i]) {
          throw SortError("argument " + std::to_string(i + 1) + " of " +
                          d.name + " has sort " + sig.sort_name(got) +
                          ", expected " + sig.sort_name(d.args[i]));
        }
      }
      return d.result;
    }
  }
  throw SortError("sort_of: corrupt formula node");
}

Formula mk_bot(const Signature& sig, SortId s) {
  Formula p = Formula::var(sig.canonical_var(s));
  return Formula::conj(p, Formula::neg(p));
}

Formula mk_top(const Signature& sig, SortId s) {
  return Formula::neg(mk_bot(sig, s));
}

Formula mk_dual(const Signature& sig, OpId op, std::vector<Formula> args) {
  const OpDecl& d = sig.op(op);
  if (d.arity() == 0) {
    throw SortError("dual of nullary operator " + d.name + " is not defined");
  }
  if (static_cast<int>(args.size()) != d.arity()) {
    throw SortError("dual of " + d.name + " expects " +
                    std::to_string(d.arity()) + " arguments");
  }
  std::vector<Formula> negated;
  negated.reserve(args.size());
  for (Formula& a : args) negated.push_back(Formula::neg(std::move(a)));
  return Formula::neg(Formula::app(op, std::move(negated)));
}

Formula substitute(const Signature& sig, const Formula& phi,
                   const std::unordered_map<VarId, Formula>& theta) {
  for (const auto& [v, f] : theta) {
    SortId want = sig.var(v).sort;
    SortId got = sort_of(sig, f);
    if (want != got) {
      throw SortError("substitution maps " + sig.var(v).name + " : " +
                      sig.sort_name(want) + " to a formula of sort " +
                      sig.sort_name(got));
    }
  }
  std::function<Formula(const Formula&)> go =
      [&](const Formula& f) -> Formula {
    switch (f.kind()) {
      case FKind::Var: {
        auto it = theta.find(f.var_sym());
        return it == theta.end() ? f : it->second;
      }
      case FKind::Not:
        return Formula::neg(go(f.arg(0)));
      case FKind::Or:
        return Formula::disj(go(f.arg(0)), go(f.arg(1)));
      case FKind::App: {
        std::vector<Formula> args;
        args.reserve(f.args().size());
        for (const Formula& a : f.args()) args.push_back(go(a));
        return Formula::app(f.op_sym(), std::move(args));
      }
    }
    throw SortError("substitute: corrupt formula node");
  };
  return go(phi);
}

std::vector<VarId> free_vars(const Formula& phi) {
  std::vector<VarId> out;
  std::function<void(const Formula&)> go = [&](const Formula& f) {
    if (f.kind() == FKind::Var) {
      VarId v = f.var_sym();
      for (VarId u : out) {
        if (u == v) return;
      }
      out.push_back(v);
      return;
    }
    for (const Formula& a : f.args()) go(a);
  };
  go(phi);
  return out;
}

bool is_ground(const Formula& phi) {
  if (phi.kind() == FKind::Var) return false;
  for (const Formula& a : phi.args()) {
    if (!is_ground(a)) return false;
  }
  return true;
}

bool contains_formula(const FormulaSet& set, const Formula& phi) {
  for (const Formula& f : set) {
    if (f == phi) return true;
  }
  return false;
}

bool insert_formula(FormulaSet& set, const Formula& phi) {
  if (contains_formula(set, phi)) return false;
  set.push_back(phi);
  return true;
}

}  // namespace msml
