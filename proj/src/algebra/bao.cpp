#include "msml/algebra/bao.hpp"

#include <functional>
#include <random>

#include "msml/core/errors.hpp"
#include "msml/core/text.hpp"

namespace msml {

namespace {

// Ultrafilter frames scan every element tuple above an atom tuple, which is
// exponential in the atom counts; callers stay small.
constexpr int kMaxUfAtoms = 8;

size_t table_size(const Signature& sig, const Bao& b, OpId op) {
  size_t n = 1;
  for (SortId s : sig.op(op).args) n *= static_cast<size_t>(b.elem_count(s));
  return n;
}

size_t flat_index(const Signature& sig, const Bao& b, OpId op,
                  const std::vector<Elem>& args) {
  const OpDecl& d = sig.op(op);
  size_t idx = 0;
  size_t mult = 1;
  for (int i = 0; i < d.arity(); ++i) {
    idx += static_cast<size_t>(args[i]) * mult;
    mult *= static_cast<size_t>(b.elem_count(d.args[i]));
  }
  return idx;
}

std::vector<Elem> tuple_at(const Signature& sig, const Bao& b, OpId op,
                           size_t idx) {
  const OpDecl& d = sig.op(op);
  std::vector<Elem> args(d.arity());
  for (int i = 0; i < d.arity(); ++i) {
    size_t n = static_cast<size_t>(b.elem_count(d.args[i]));
    args[i] = static_cast<Elem>(idx % n);
    idx /= n;
  }
  return args;
}

void check_args(const Signature& sig, const Bao& b, OpId op,
                const std::vector<Elem>& args) {
  const OpDecl& d = sig.op(op);
  if (static_cast<int>(args.size()) != d.arity())
    throw Error("operator " + d.name + " expects " +
                std::to_string(d.arity()) + " arguments, got " +
                std::to_string(args.size()));
  for (int i = 0; i < d.arity(); ++i)
    if (args[i] > b.top(d.args[i]))
      throw Error("argument " + std::to_string(i + 1) + " of " + d.name +
                  " is outside its sort algebra");
}

int parse_int(const std::string& tok) {
  size_t pos = 0;
  int v;
  try {
    v = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + tok + "'");
  }
  if (pos != tok.size())
    throw ParseError("expected a number, got '" + tok + "'");
  return v;
}

}  // namespace

Bao make_bao(const Signature& sig, std::vector<int> atoms) {
  if (static_cast<int>(atoms.size()) != sig.sort_count())
    throw Error("make_bao: need one atom count per sort");
  for (SortId s = 0; s < sig.sort_count(); ++s)
    if (atoms[s] < 1 || atoms[s] > kMaxBaoAtoms)
      throw Error("make_bao: sort " + sig.sort_name(s) + " needs 1.." +
                  std::to_string(kMaxBaoAtoms) + " atoms");
  Bao b;
  b.atoms = std::move(atoms);
  b.tables.resize(sig.op_count());
  for (OpId o = 0; o < sig.op_count(); ++o)
    b.tables[o].assign(table_size(sig, b, o), 0);
  return b;
}

void check_bao_shape(const Signature& sig, const Bao& b) {
  if (static_cast<int>(b.atoms.size()) != sig.sort_count())
    throw Error("bao: need one atom count per sort");
  for (SortId s = 0; s < sig.sort_count(); ++s)
    if (b.atoms[s] < 1 || b.atoms[s] > kMaxBaoAtoms)
      throw Error("bao: sort " + sig.sort_name(s) + " has a bad atom count");
  if (static_cast<int>(b.tables.size()) != sig.op_count())
    throw Error("bao: need one table per operator");
  for (OpId o = 0; o < sig.op_count(); ++o) {
    if (b.tables[o].size() != table_size(sig, b, o))
      throw Error("bao: table for " + sig.op(o).name + " has the wrong size");
    Elem t = b.top(sig.op(o).result);
    for (Elem e : b.tables[o])
      if (e > t)
        throw Error("bao: table for " + sig.op(o).name +
                    " leaves the result sort");
  }
}

Elem bao_apply(const Signature& sig, const Bao& b, OpId op,
               const std::vector<Elem>& args) {
  check_args(sig, b, op, args);
  return b.tables[op][flat_index(sig, b, op, args)];
}

void bao_set(const Signature& sig, Bao& b, OpId op,
             const std::vector<Elem>& args, Elem result) {
  check_args(sig, b, op, args);
  if (result > b.top(sig.op(op).result))
    throw Error("bao_set: result leaves the result sort");
  b.tables[op][flat_index(sig, b, op, args)] = result;
}

Bao bao_from_atom_rows(const Signature& sig, std::vector<int> atoms,
                       const std::vector<std::vector<Elem>>& rows) {
  Bao b = make_bao(sig, std::move(atoms));
  if (static_cast<int>(rows.size()) != sig.op_count())
    throw Error("atom rows: need one row set per operator");
  for (OpId o = 0; o < sig.op_count(); ++o) {
    const OpDecl& d = sig.op(o);
    size_t want = 1;
    for (SortId s : d.args) want *= static_cast<size_t>(b.atoms[s]);
    if (rows[o].size() != want)
      throw Error("atom rows: wrong row count for " + d.name);
    for (Elem r : rows[o])
      if (r > b.top(d.result))
        throw Error("atom rows: row for " + d.name +
                    " leaves the result sort");

    for (size_t idx = 0; idx < b.tables[o].size(); ++idx) {
      std::vector<Elem> args = tuple_at(sig, b, o, idx);
      // Atom choices per slot: the set bits of each argument.
      std::vector<std::vector<int>> bits(args.size());
      bool empty = false;
      for (size_t i = 0; i < args.size(); ++i) {
        for (int a = 0; a < b.atoms[d.args[i]]; ++a)
          if (args[i] >> a & 1) bits[i].push_back(a);
        if (bits[i].empty()) empty = true;
      }
      if (empty) continue;  // table entry stays bottom
      Elem acc = 0;
      std::vector<size_t> pick(bits.size(), 0);
      while (true) {
        size_t ridx = 0;
        size_t mult = 1;
        for (size_t i = 0; i < bits.size(); ++i) {
          ridx += static_cast<size_t>(bits[i][pick[i]]) * mult;
          mult *= static_cast<size_t>(b.atoms[d.args[i]]);
        }
        acc |= rows[o][ridx];
        size_t t = 0;
        for (; t < pick.size(); ++t) {
          if (++pick[t] < bits[t].size()) break;
          pick[t] = 0;
        }
        if (t == pick.size()) break;
      }
      b.tables[o][idx] = acc;
    }
  }
  return b;
}

BaoVerdict check_bao(const Signature& sig, const Bao& b, std::uint64_t seed) {
  try {
    check_bao_shape(sig, b);
  } catch (const Error& e) {
    return {false, e.what()};
  }

  for (OpId o = 0; o < sig.op_count(); ++o) {
    const OpDecl& d = sig.op(o);
    const std::vector<Elem>& table = b.tables[o];
    for (size_t idx = 0; idx < table.size(); ++idx) {
      std::vector<Elem> args = tuple_at(sig, b, o, idx);
      for (int i = 0; i < d.arity(); ++i)
        if (args[i] == 0 && table[idx] != 0)
          return {false, "operator " + d.name +
                             " is not normal at position " +
                             std::to_string(i + 1)};
      for (int i = 0; i < d.arity(); ++i) {
        for (Elem y = 0; y <= b.top(d.args[i]); ++y) {
          std::vector<Elem> aj = args, ay = args;
          aj[i] = args[i] | y;
          ay[i] = y;
          Elem joined = table[flat_index(sig, b, o, aj)];
          Elem split = table[idx] | table[flat_index(sig, b, o, ay)];
          if (joined != split)
            return {false, "operator " + d.name +
                               " is not additive at position " +
                               std::to_string(i + 1)};
        }
      }
    }
  }

  // The sort algebras are bit masks, so these laws hold by construction;
  // the sweep documents and pins the element representation.
  std::mt19937_64 rng(seed);
  for (SortId s = 0; s < sig.sort_count(); ++s) {
    Elem t = b.top(s);
    for (int it = 0; it < 100; ++it) {
      Elem x = static_cast<Elem>(rng()) & t;
      Elem y = static_cast<Elem>(rng()) & t;
      Elem z = static_cast<Elem>(rng()) & t;
      bool laws = ((x & (y | z)) == ((x & y) | (x & z))) &&
                  ((t & ~(x | y)) == ((t & ~x) & (t & ~y))) &&
                  ((x | (t & ~x)) == t) && ((x & (t & ~x)) == 0);
      if (!laws)
        return {false,
                "set algebra law failed for sort " + sig.sort_name(s)};
    }
  }
  return {true, ""};
}

Elem bao_eval(const Signature& sig, const Bao& b, const Formula& phi,
              const std::vector<Elem>& assign) {
  check_bao_shape(sig, b);
  if (static_cast<int>(assign.size()) != sig.var_count())
    throw Error("bao_eval: need one element per declared variable");
  for (VarId v = 0; v < sig.var_count(); ++v)
    if (assign[v] > b.top(sig.var(v).sort))
      throw Error("bao_eval: assignment for " + sig.var(v).name +
                  " is outside its sort algebra");

  struct Val {
    Elem e;
    SortId s;
  };
  std::function<Val(const Formula&)> go = [&](const Formula& f) -> Val {
    switch (f.kind()) {
      case FKind::Var:
        return {assign[f.var_sym()], sig.var(f.var_sym()).sort};
      case FKind::Not: {
        Val v = go(f.arg(0));
        return {static_cast<Elem>(b.top(v.s) & ~v.e), v.s};
      }
      case FKind::Or: {
        Val l = go(f.arg(0));
        Val r = go(f.arg(1));
        if (l.s != r.s)
          throw SortError("sort mismatch in disjunction: " +
                          sig.sort_name(l.s) + " vs " + sig.sort_name(r.s));
        return {l.e | r.e, l.s};
      }
      case FKind::App: {
        const OpDecl& d = sig.op(f.op_sym());
        std::vector<Elem> args;
        args.reserve(f.arg_count());
        for (int i = 0; i < f.arg_count(); ++i) {
          Val v = go(f.arg(i));
          if (v.s != d.args[i])
            throw SortError("argument " + std::to_string(i + 1) + " of " +
                            d.name + " has sort " + sig.sort_name(v.s));
          args.push_back(v.e);
        }
        return {bao_apply(sig, b, f.op_sym(), args), d.result};
      }
    }
    throw Error("bao_eval: unreachable formula kind");
  };
  return go(phi).e;
}

Bao complex_algebra(const Signature& sig, const Frame& f) {
  if (static_cast<int>(f.world_counts.size()) != sig.sort_count())
    throw Error("complex_algebra: frame does not match the signature");
  for (SortId s = 0; s < sig.sort_count(); ++s)
    if (f.world_counts[s] < 1 || f.world_counts[s] > kMaxBaoAtoms)
      throw Error("complex_algebra: sort " + sig.sort_name(s) +
                  " needs 1.." + std::to_string(kMaxBaoAtoms) + " worlds");

  Bao b = make_bao(sig, f.world_counts);
  for (OpId o = 0; o < sig.op_count(); ++o) {
    const OpDecl& d = sig.op(o);
    for (size_t idx = 0; idx < b.tables[o].size(); ++idx) {
      std::vector<Elem> args = tuple_at(sig, b, o, idx);
      Elem r = 0;
      for (const std::vector<int>& t : f.rels[o]) {
        bool inside = true;
        for (int i = 0; i < d.arity(); ++i)
          if (!(args[i] >> t[i + 1] & 1)) {
            inside = false;
            break;
          }
        if (inside) r |= Elem{1} << t[0];
      }
      b.tables[o][idx] = r;
    }
  }
  return b;
}

Frame ultrafilter_frame(const Signature& sig, const Bao& b) {
  check_bao_shape(sig, b);
  for (SortId s = 0; s < sig.sort_count(); ++s)
    if (b.atoms[s] > kMaxUfAtoms)
      throw Error("ultrafilter_frame: limited to " +
                  std::to_string(kMaxUfAtoms) + " atoms per sort");

  Frame fr = make_frame(sig, b.atoms);
  for (OpId o = 0; o < sig.op_count(); ++o) {
    const OpDecl& d = sig.op(o);
    // Odometer over atom tuples (result atom last for readability).
    std::vector<int> at(d.arity(), 0);
    while (true) {
      std::vector<Elem> units(d.arity());
      for (int i = 0; i < d.arity(); ++i) units[i] = Elem{1} << at[i];
      Elem image = bao_apply(sig, b, o, units);

      // All element tuples whose slots contain their atom, checked against
      // the single atom tuple; equality is exactly monotonicity.
      Elem all = b.top(sig.op(o).result);
      std::vector<Elem> x = units;
      std::function<Elem(int)> meet = [&](int slot) -> Elem {
        if (slot == d.arity()) return bao_apply(sig, b, o, x);
        Elem acc = all;
        Elem t = b.top(d.args[slot]);
        for (Elem e = 0; e <= t; ++e) {
          if (!(e >> at[slot] & 1)) continue;
          x[slot] = e;
          acc &= meet(slot + 1);
          if (acc == 0) break;
        }
        x[slot] = units[slot];
        return acc;
      };
      Elem quant = meet(0);
      if (quant != image)
        throw Error("ultrafilter_frame: operator " + d.name +
                    " is not monotone");

      for (int a0 = 0; a0 < b.atoms[d.result]; ++a0) {
        if (!(image >> a0 & 1)) continue;
        std::vector<int> tuple{a0};
        tuple.insert(tuple.end(), at.begin(), at.end());
        add_rel_tuple(sig, fr, o, tuple);
      }

      int i = 0;
      for (; i < d.arity(); ++i) {
        if (++at[i] < b.atoms[d.args[i]]) break;
        at[i] = 0;
      }
      if (i == d.arity()) break;
    }
  }
  return fr;
}

BaoVerdict jt_check(const Signature& sig, const Bao& b) {
  try {
    Frame fr = ultrafilter_frame(sig, b);
    Bao cb = complex_algebra(sig, fr);
    // The embedding sends a to the set of ultrafilters containing it; with
    // worlds standing for atoms that is the identity on masks, so it is an
    // isomorphism exactly when the structures coincide.
    if (cb.atoms != b.atoms)
      return {false, "ultrafilter count differs from the atom count"};
    for (OpId o = 0; o < sig.op_count(); ++o) {
      if (cb.tables[o] == b.tables[o]) continue;
      for (size_t idx = 0; idx < b.tables[o].size(); ++idx)
        if (cb.tables[o][idx] != b.tables[o][idx])
          return {false, "operator " + sig.op(o).name +
                             " differs from its complex-algebra image at "
                             "entry " +
                             std::to_string(idx)};
    }
    return {true, ""};
  } catch (const Error& e) {
    return {false, e.what()};
  }
}

Bao parse_bao(const Signature& sig, const std::string& text) {
  std::vector<int> atoms(sig.sort_count(), -1);
  std::vector<std::vector<Elem>> rows;
  std::vector<std::vector<char>> seen;
  bool frozen = false;

  auto freeze = [&]() {
    for (SortId s = 0; s < sig.sort_count(); ++s)
      if (atoms[s] < 0)
        throw ParseError("no atoms line for sort " + sig.sort_name(s));
    rows.resize(sig.op_count());
    seen.resize(sig.op_count());
    for (OpId o = 0; o < sig.op_count(); ++o) {
      size_t n = 1;
      for (SortId s : sig.op(o).args) n *= static_cast<size_t>(atoms[s]);
      rows[o].assign(n, 0);
      seen[o].assign(n, 0);
    }
    frozen = true;
  };

  for_each_line(text, [&](int, const std::vector<std::string>& tok) {
    if (tok[0] == "atoms") {
      if (frozen) throw ParseError("atoms lines must precede op rows");
      if (tok.size() != 3) throw ParseError("expected: atoms <sort> <n>");
      SortId s = sig.sort_id(tok[1]);
      if (atoms[s] >= 0)
        throw ParseError("duplicate atoms line for sort " + tok[1]);
      int n = parse_int(tok[2]);
      if (n < 1 || n > kMaxBaoAtoms)
        throw ParseError("atom count must be 1.." +
                         std::to_string(kMaxBaoAtoms));
      atoms[s] = n;
    } else if (tok[0] == "op") {
      if (!frozen) freeze();
      if (tok.size() < 3) throw ParseError("expected: op <name> ... -> ...");
      OpId o = sig.op_id(tok[1]);
      const OpDecl& d = sig.op(o);
      size_t arrow = 0;
      for (size_t i = 2; i < tok.size(); ++i)
        if (tok[i] == "->") {
          arrow = i;
          break;
        }
      if (arrow == 0) throw ParseError("op row needs '->'");
      if (static_cast<int>(arrow) - 2 != d.arity())
        throw ParseError("operator " + d.name + " takes " +
                         std::to_string(d.arity()) + " atoms on the left");
      size_t ridx = 0;
      size_t mult = 1;
      for (int i = 0; i < d.arity(); ++i) {
        int a = parse_int(tok[2 + i]);
        if (a < 0 || a >= atoms[d.args[i]])
          throw ParseError("atom " + tok[2 + i] + " is out of range for " +
                           sig.sort_name(d.args[i]));
        ridx += static_cast<size_t>(a) * mult;
        mult *= static_cast<size_t>(atoms[d.args[i]]);
      }
      if (seen[o][ridx]) throw ParseError("duplicate row for " + d.name);
      seen[o][ridx] = 1;
      Elem r = 0;
      for (size_t i = arrow + 1; i < tok.size(); ++i) {
        int a = parse_int(tok[i]);
        if (a < 0 || a >= atoms[d.result])
          throw ParseError("atom " + tok[i] + " is out of range for " +
                           sig.sort_name(d.result));
        r |= Elem{1} << a;
      }
      rows[o][ridx] = r;
    } else {
      throw ParseError("expected 'atoms' or 'op', got '" + tok[0] + "'");
    }
  });
  if (!frozen) freeze();
  return bao_from_atom_rows(sig, atoms, rows);
}

std::string print_bao(const Signature& sig, const Bao& b) {
  check_bao_shape(sig, b);

  std::vector<std::vector<Elem>> rows(sig.op_count());
  for (OpId o = 0; o < sig.op_count(); ++o) {
    const OpDecl& d = sig.op(o);
    size_t n = 1;
    for (SortId s : d.args) n *= static_cast<size_t>(b.atoms[s]);
    rows[o].resize(n);
    for (size_t ridx = 0; ridx < n; ++ridx) {
      size_t rest = ridx;
      std::vector<Elem> units(d.arity());
      for (int i = 0; i < d.arity(); ++i) {
        size_t m = static_cast<size_t>(b.atoms[d.args[i]]);
        units[i] = Elem{1} << (rest % m);
        rest /= m;
      }
      rows[o][ridx] = bao_apply(sig, b, o, units);
    }
  }
  if (bao_from_atom_rows(sig, b.atoms, rows).tables != b.tables)
    throw Error("print_bao: operators are not determined by their atom rows");

  std::string out;
  for (SortId s = 0; s < sig.sort_count(); ++s)
    out += "atoms " + sig.sort_name(s) + " " + std::to_string(b.atoms[s]) +
           "\n";
  for (OpId o = 0; o < sig.op_count(); ++o) {
    const OpDecl& d = sig.op(o);
    for (size_t ridx = 0; ridx < rows[o].size(); ++ridx) {
      if (rows[o][ridx] == 0) continue;
      out += "op " + d.name;
      size_t rest = ridx;
      for (int i = 0; i < d.arity(); ++i) {
        size_t m = static_cast<size_t>(b.atoms[d.args[i]]);
        out += " " + std::to_string(rest % m);
        rest /= m;
      }
      out += " ->";
      for (int a = 0; a < b.atoms[d.result]; ++a)
        if (rows[o][ridx] >> a & 1) out += " " + std::to_string(a);
      out += "\n";
    }
  }
  return out;
}

}  // namespace msml
