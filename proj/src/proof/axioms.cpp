#include "msml/proof/axioms.hpp"

#include <utility>

#include "msml/core/errors.hpp"
#include "msml/core/text.hpp"

namespace msml {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

// Value of a digit-named nullary application; -1 when f is not one.
long numeral_value(const Signature& sig, const Formula& f) {
  if (f.kind() != FKind::App || f.arg_count() != 0) return -1;
  const std::string& nm = sig.op(f.op_sym()).name;
  if (!all_digits(nm)) return -1;
  return std::stol(nm);
}

// 1 for the nullary op named true, 0 for false, -1 otherwise.
int truth_value(const Signature& sig, const Formula& f) {
  if (f.kind() != FKind::App || f.arg_count() != 0) return -1;
  const std::string& nm = sig.op(f.op_sym()).name;
  if (nm == "true") return 1;
  if (nm == "false") return 0;
  return -1;
}

const char* guard_name(SchemeGuard::Kind k) {
  switch (k) {
    case SchemeGuard::IntAdd: return "intadd";
    case SchemeGuard::LeqTruth: return "leqtruth";
    case SchemeGuard::Distinct: return "distinct";
    case SchemeGuard::IsBot: return "is_bot";
  }
  return "?";
}

void check_guard(const AxiomScheme& s, const SchemeGuard& g,
                 const std::map<std::string, Formula>& binding) {
  std::vector<Formula> args;
  for (const std::string& m : g.metas) args.push_back(binding.at(m));
  auto fail = [&](const std::string& why) {
    throw Error("scheme " + s.name + ": guard " + guard_name(g.kind) +
                " failed: " + why);
  };
  switch (g.kind) {
    case SchemeGuard::IntAdd: {
      long a = numeral_value(s.sig, args[0]);
      long b = numeral_value(s.sig, args[1]);
      long c = numeral_value(s.sig, args[2]);
      if (a < 0 || b < 0 || c < 0) fail("arguments must be numeral constants");
      if (a + b != c)
        fail(std::to_string(a) + " + " + std::to_string(b) + " != " +
             std::to_string(c));
      break;
    }
    case SchemeGuard::LeqTruth: {
      long a = numeral_value(s.sig, args[0]);
      long b = numeral_value(s.sig, args[1]);
      int t = truth_value(s.sig, args[2]);
      if (a < 0 || b < 0) fail("first two arguments must be numeral constants");
      if (t < 0) fail("third argument must be true or false");
      if ((a <= b ? 1 : 0) != t) fail("comparison does not match truth value");
      break;
    }
    case SchemeGuard::Distinct:
      if (!is_ground(args[0]) || !is_ground(args[1]))
        fail("arguments must be ground");
      if (args[0] == args[1]) fail("arguments are structurally equal");
      break;
    case SchemeGuard::IsBot: {
      SortId srt = sort_of(s.sig, args[0]);
      if (args[0] != mk_bot(s.sig, srt))
        fail("argument is not the canonical falsum of its sort");
      break;
    }
  }
}

AxiomScheme begin_scheme(const Signature& base, std::string name) {
  AxiomScheme s;
  s.name = std::move(name);
  s.sig = base;
  s.base_vars = base.var_count();
  return s;
}

VarId add_meta(AxiomScheme& s, const std::string& name, SortId sort) {
  VarId v = s.sig.add_var(name, sort);
  s.metas.push_back(v);
  return v;
}

SchemeGuard parse_guard(const AxiomScheme& s, const std::string& g) {
  auto lp = g.find('(');
  if (lp == std::string::npos || g.empty() || g.back() != ')')
    throw ParseError("malformed guard '" + g + "'");
  std::string name = g.substr(0, lp);
  std::string inner = g.substr(lp + 1, g.size() - lp - 2);
  std::vector<std::string> args;
  std::string cur;
  for (char c : inner) {
    if (c == ',') {
      args.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) args.push_back(cur);

  SchemeGuard out;
  size_t want = 0;
  if (name == "intadd") {
    out.kind = SchemeGuard::IntAdd;
    want = 3;
  } else if (name == "leqtruth") {
    out.kind = SchemeGuard::LeqTruth;
    want = 3;
  } else if (name == "distinct") {
    out.kind = SchemeGuard::Distinct;
    want = 2;
  } else if (name == "is_bot") {
    out.kind = SchemeGuard::IsBot;
    want = 1;
  } else {
    throw ParseError("unknown guard '" + name + "'");
  }
  if (args.size() != want)
    throw ParseError("guard " + name + " takes " + std::to_string(want) +
                     " arguments, got " + std::to_string(args.size()));
  for (const std::string& a : args) {
    bool is_meta = false;
    for (VarId m : s.metas)
      if (s.sig.var(m).name == a) is_meta = true;
    if (!is_meta)
      throw ParseError("guard argument '" + a +
                       "' is not a metavariable of scheme " + s.name);
  }
  out.metas = args;
  return out;
}

}  // namespace

const AxiomScheme* AxiomSet::find(const std::string& name) const {
  for (const AxiomScheme& s : schemes)
    if (s.name == name) return &s;
  return nullptr;
}

void AxiomSet::add(AxiomScheme s) {
  if (find(s.name)) throw Error("duplicate scheme name '" + s.name + "'");
  schemes.push_back(std::move(s));
}

Formula instantiate_scheme(const AxiomScheme& s,
                           const std::map<std::string, Formula>& binding) {
  if (binding.size() != s.metas.size())
    throw Error("scheme " + s.name + ": binding must cover exactly the " +
                std::to_string(s.metas.size()) + " metavariables");
  std::unordered_map<VarId, Formula> theta;
  for (VarId m : s.metas) {
    const VarDecl& d = s.sig.var(m);
    auto it = binding.find(d.name);
    if (it == binding.end())
      throw Error("scheme " + s.name + ": metavariable " + d.name +
                  " is unbound");
    SortId got = sort_of(s.sig, it->second);
    if (got != d.sort)
      throw SortError("scheme " + s.name + ": metavariable " + d.name +
                      " has sort " + s.sig.sort_name(d.sort) + " but is bound to a " +
                      s.sig.sort_name(got) + " formula");
    theta.emplace(m, it->second);
  }
  for (const SchemeGuard& g : s.guards) check_guard(s, g, binding);
  Formula out = substitute(s.sig, s.templ, theta);
  for (VarId v : free_vars(out))
    if (v >= s.base_vars)
      throw Error("scheme " + s.name + ": metavariable " + s.sig.var(v).name +
                  " escapes into the instance");
  return out;
}

AxiomScheme k_scheme(const Signature& sig, OpId op, int pos) {
  const OpDecl& d = sig.op(op);
  if (d.arity() == 0)
    throw Error("k_scheme: operator " + d.name + " is nullary");
  if (pos < 0 || pos >= d.arity())
    throw Error("k_scheme: position out of range for " + d.name);
  AxiomScheme s =
      begin_scheme(sig, "k_" + d.name + "_" + std::to_string(pos + 1));
  std::vector<Formula> side(d.args.size());
  for (int j = 0; j < d.arity(); ++j)
    if (j != pos)
      side[j] =
          Formula::var(add_meta(s, "PSI" + std::to_string(j + 1), d.args[j]));
  Formula phi = Formula::var(add_meta(s, "PHI", d.args[pos]));
  Formula chi = Formula::var(add_meta(s, "CHI", d.args[pos]));
  auto boxed = [&](Formula at) {
    std::vector<Formula> a = side;
    a[pos] = std::move(at);
    return mk_dual(s.sig, op, std::move(a));
  };
  s.templ = Formula::impl(boxed(Formula::impl(phi, chi)),
                          Formula::impl(boxed(phi), boxed(chi)));
  return s;
}

AxiomScheme dual_scheme(const Signature& sig, OpId op) {
  const OpDecl& d = sig.op(op);
  if (d.arity() == 0)
    throw Error("dual_scheme: operator " + d.name + " is nullary");
  AxiomScheme s = begin_scheme(sig, "dual_" + d.name);
  std::vector<Formula> psis;
  for (int j = 0; j < d.arity(); ++j)
    psis.push_back(
        Formula::var(add_meta(s, "PSI" + std::to_string(j + 1), d.args[j])));
  std::vector<Formula> negd;
  for (const Formula& p : psis) negd.push_back(Formula::neg(p));
  Formula lhs = Formula::app(op, psis);
  Formula rhs = Formula::neg(mk_dual(s.sig, op, std::move(negd)));
  s.templ = Formula::iff(lhs, rhs);
  return s;
}

AxiomScheme norm_scheme(const Signature& sig, OpId op, int pos) {
  const OpDecl& d = sig.op(op);
  if (d.arity() == 0)
    throw Error("norm_scheme: operator " + d.name + " is nullary");
  if (pos < 0 || pos >= d.arity())
    throw Error("norm_scheme: position out of range for " + d.name);
  AxiomScheme s =
      begin_scheme(sig, "norm_" + d.name + "_" + std::to_string(pos + 1));
  std::vector<Formula> psis;
  for (int j = 0; j < d.arity(); ++j)
    psis.push_back(
        Formula::var(add_meta(s, "PSI" + std::to_string(j + 1), d.args[j])));
  s.guards.push_back(
      {SchemeGuard::IsBot, {s.sig.var(s.metas[pos]).name}});
  s.templ = Formula::iff(Formula::app(op, std::move(psis)),
                         mk_bot(s.sig, d.result));
  return s;
}

AxiomScheme add_scheme(const Signature& sig, OpId op, int pos) {
  const OpDecl& d = sig.op(op);
  if (d.arity() == 0)
    throw Error("add_scheme: operator " + d.name + " is nullary");
  if (pos < 0 || pos >= d.arity())
    throw Error("add_scheme: position out of range for " + d.name);
  AxiomScheme s =
      begin_scheme(sig, "add_" + d.name + "_" + std::to_string(pos + 1));
  std::vector<Formula> side(d.args.size());
  for (int j = 0; j < d.arity(); ++j)
    if (j != pos)
      side[j] =
          Formula::var(add_meta(s, "PSI" + std::to_string(j + 1), d.args[j]));
  Formula phi = Formula::var(add_meta(s, "PHI", d.args[pos]));
  Formula chi = Formula::var(add_meta(s, "CHI", d.args[pos]));
  auto at = [&](Formula f) {
    std::vector<Formula> a = side;
    a[pos] = std::move(f);
    return Formula::app(op, std::move(a));
  };
  s.templ = Formula::iff(at(Formula::disj(phi, chi)),
                         Formula::disj(at(phi), at(chi)));
  return s;
}

AxiomSet parse_axioms(const Signature& sig, const std::string& text,
                      BoxMode mode) {
  AxiomSet set;
  bool basis_seen = false;
  for_each_line(text, [&](int, const std::vector<std::string>& toks) {
    if (toks[0] == "basis") {
      if (basis_seen) throw ParseError("duplicate basis line");
      if (toks.size() != 2)
        throw ParseError("basis line takes one word: standard or alternative");
      if (toks[1] == "standard")
        set.basis = Basis::Standard;
      else if (toks[1] == "alternative")
        set.basis = Basis::Alternative;
      else
        throw ParseError("unknown basis '" + toks[1] + "'");
      basis_seen = true;
      return;
    }
    if (toks[0] != "scheme")
      throw ParseError("expected 'basis' or 'scheme', got '" + toks[0] + "'");
    if (toks.size() < 2) throw ParseError("scheme needs a name");
    AxiomScheme s = begin_scheme(sig, toks[1]);

    size_t sep = toks.size();
    for (size_t j = 2; j < toks.size(); ++j)
      if (toks[j] == "::=") {
        sep = j;
        break;
      }
    if (sep == toks.size())
      throw ParseError("scheme " + s.name + ": missing '::='");

    size_t i = 2;
    while (i < sep) {
      if (toks[i] == "meta") {
        if (i + 3 >= sep || toks[i + 2] != ":")
          throw ParseError("scheme " + s.name +
                           ": meta clause must be 'meta <name> : <sort>'");
        add_meta(s, toks[i + 1], sig.sort_id(toks[i + 3]));
        i += 4;
      } else if (toks[i] == "guard") {
        std::string g;
        size_t j = i + 1;
        while (j < sep && toks[j] != "meta" && toks[j] != "guard") g += toks[j++];
        if (g.empty())
          throw ParseError("scheme " + s.name + ": empty guard clause");
        s.guards.push_back(parse_guard(s, g));
        i = j;
      } else {
        throw ParseError("scheme " + s.name + ": unexpected token '" + toks[i] +
                         "' before '::='");
      }
    }

    if (sep + 1 >= toks.size())
      throw ParseError("scheme " + s.name + ": missing formula after '::='");
    std::string body;
    for (size_t j = sep + 1; j < toks.size(); ++j) {
      if (!body.empty()) body += ' ';
      body += toks[j];
    }
    s.templ = parse_formula(s.sig, body, mode);
    set.add(std::move(s));
  });

  if (set.basis == Basis::Alternative) {
    for (OpId o = 0; o < sig.op_count(); ++o) {
      int n = sig.op(o).arity();
      for (int i = 0; i < n; ++i) {
        AxiomScheme ns = norm_scheme(sig, o, i);
        ns.auto_generated = true;
        set.add(std::move(ns));
        AxiomScheme as = add_scheme(sig, o, i);
        as.auto_generated = true;
        set.add(std::move(as));
      }
    }
  }
  return set;
}

std::string print_axioms(const AxiomSet& set, BoxMode mode) {
  std::string out;
  out += set.basis == Basis::Alternative ? "basis alternative\n"
                                         : "basis standard\n";
  for (const AxiomScheme& s : set.schemes) {
    if (s.auto_generated) continue;
    out += "scheme " + s.name;
    for (VarId m : s.metas) {
      const VarDecl& d = s.sig.var(m);
      out += " meta " + d.name + " : " + s.sig.sort_name(d.sort);
    }
    for (const SchemeGuard& g : s.guards) {
      out += " guard " + std::string(guard_name(g.kind)) + "(";
      for (size_t i = 0; i < g.metas.size(); ++i) {
        if (i) out += ",";
        out += g.metas[i];
      }
      out += ")";
    }
    out += " ::= " + print_formula(s.sig, s.templ, mode) + "\n";
  }
  return out;
}

}  // namespace msml
