#include "msml/semantics/model.hpp"

#include <algorithm>
#include <sstream>

#include "msml/core/errors.hpp"
#include "msml/core/text.hpp"

namespace msml {

Frame make_frame(const Signature& sig, std::vector<int> world_counts) {
  if (static_cast<int>(world_counts.size()) != sig.sort_count())
    throw Error("make_frame: one world count per sort required");
  Frame f;
  f.world_counts = std::move(world_counts);
  f.world_names.resize(sig.sort_count());
  for (SortId s = 0; s < sig.sort_count(); ++s) {
    if (f.world_counts[s] < 1)
      throw Error("make_frame: sort '" + sig.sort_name(s) + "' needs a world");
    for (int w = 0; w < f.world_counts[s]; ++w)
      f.world_names[s].push_back(sig.sort_name(s) + "_w" + std::to_string(w));
  }
  f.rels.resize(sig.op_count());
  return f;
}

Model make_model(const Signature& sig, Frame frame) {
  Model m;
  m.frame = std::move(frame);
  m.val.resize(sig.var_count());
  for (VarId v = 0; v < sig.var_count(); ++v)
    m.val[v].assign(m.frame.world_counts[sig.var(v).sort], 0);
  return m;
}

void add_rel_tuple(const Signature& sig, Frame& frame, OpId op,
                   const std::vector<int>& tuple) {
  const OpDecl& d = sig.op(op);
  if (static_cast<int>(tuple.size()) != d.arity() + 1)
    throw Error("relation tuple for '" + d.name + "' has wrong length");
  if (tuple[0] < 0 || tuple[0] >= frame.world_counts[d.result])
    throw Error("relation tuple for '" + d.name + "': result world out of range");
  for (int i = 0; i < d.arity(); ++i)
    if (tuple[i + 1] < 0 || tuple[i + 1] >= frame.world_counts[d.args[i]])
      throw Error("relation tuple for '" + d.name + "': argument world out of range");
  auto& tuples = frame.rels[op];
  auto it = std::lower_bound(tuples.begin(), tuples.end(), tuple);
  if (it != tuples.end() && *it == tuple) return;
  tuples.insert(it, tuple);
}

void check_model(const Signature& sig, const Model& m) {
  const Frame& f = m.frame;
  if (static_cast<int>(f.world_counts.size()) != sig.sort_count() ||
      static_cast<int>(f.world_names.size()) != sig.sort_count() ||
      static_cast<int>(f.rels.size()) != sig.op_count() ||
      static_cast<int>(m.val.size()) != sig.var_count())
    throw Error("model: container sizes do not match the signature");
  for (SortId s = 0; s < sig.sort_count(); ++s) {
    if (f.world_counts[s] < 1)
      throw Error("model: sort '" + sig.sort_name(s) + "' has no world");
    if (static_cast<int>(f.world_names[s].size()) != f.world_counts[s])
      throw Error("model: world name table size mismatch");
  }
  for (OpId o = 0; o < sig.op_count(); ++o) {
    const OpDecl& d = sig.op(o);
    const auto& tuples = f.rels[o];
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      const auto& t = tuples[i];
      if (static_cast<int>(t.size()) != d.arity() + 1)
        throw Error("model: tuple arity mismatch for '" + d.name + "'");
      if (t[0] < 0 || t[0] >= f.world_counts[d.result])
        throw Error("model: tuple world out of range for '" + d.name + "'");
      for (int a = 0; a < d.arity(); ++a)
        if (t[a + 1] < 0 || t[a + 1] >= f.world_counts[d.args[a]])
          throw Error("model: tuple world out of range for '" + d.name + "'");
      if (i > 0 && !(tuples[i - 1] < t))
        throw Error("model: tuples out of order for '" + d.name + "'");
    }
  }
  for (VarId v = 0; v < sig.var_count(); ++v)
    if (static_cast<int>(m.val[v].size()) !=
        f.world_counts[sig.var(v).sort])
      throw Error("model: valuation size mismatch for '" + sig.var(v).name + "'");
}

Eval::Eval(const Signature& sig, const Model& m) : sig_(sig), m_(m) {
  index_.resize(sig.op_count());
  for (OpId o = 0; o < sig.op_count(); ++o) {
    index_[o].resize(m.frame.world_counts[sig.op(o).result]);
    for (const auto& t : m.frame.rels[o])
      index_[o][t[0]].emplace_back(t.begin() + 1, t.end());
  }
}

bool Eval::sat(int world, const Formula& phi) {
  SortId s = sort_of(sig_, phi);
  if (world < 0 || world >= m_.frame.world_counts[s])
    throw Error("satisfaction query: world out of range for sort '" +
                sig_.sort_name(s) + "'");
  roots_.push_back(phi);
  return go(phi, world);
}

bool Eval::go(const Formula& f, int w) {
  switch (f.kind()) {
    case FKind::Var:
      return m_.val[f.var_sym()][w] != 0;
    case FKind::Not:
      return !go(f.arg(0), w);
    case FKind::Or:
      return go(f.arg(0), w) || go(f.arg(1), w);
    case FKind::App: {
      Key key{f.raw(), w};
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
      bool found = false;
      for (const auto& tuple : index_[f.op_sym()][w]) {
        bool all = true;
        for (int i = 0; i < f.arg_count() && all; ++i)
          all = go(f.arg(i), tuple[i]);
        if (all) {
          found = true;
          break;
        }
      }
      memo_.emplace(key, found);
      return found;
    }
  }
  throw Error("satisfaction: corrupt formula node");
}

bool satisfies(const Signature& sig, const Model& m, int world,
               const Formula& phi) {
  Eval e(sig, m);
  return e.sat(world, phi);
}

bool globally_true(const Signature& sig, const Model& m, const Formula& phi) {
  SortId s = sort_of(sig, phi);
  Eval e(sig, m);
  for (int w = 0; w < m.frame.world_counts[s]; ++w)
    if (!e.sat(w, phi)) return false;
  return true;
}

bool global_model_of(const Signature& sig, const Model& m,
                     const FormulaSet& gamma) {
  Eval e(sig, m);
  for (const Formula& g : gamma) {
    SortId s = sort_of(sig, g);
    for (int w = 0; w < m.frame.world_counts[s]; ++w)
      if (!e.sat(w, g)) return false;
  }
  return true;
}

LocalVerdict local_consequence(const Signature& sig,
                               const std::vector<Model>& models,
                               const FormulaSet& hyps, const Formula& phi) {
  SortId s = sort_of(sig, phi);
  for (const Formula& h : hyps)
    if (sort_of(sig, h) != s)
      throw SortError("local consequence: hypothesis sort differs from goal");
  for (std::size_t i = 0; i < models.size(); ++i) {
    Eval e(sig, models[i]);
    for (int w = 0; w < models[i].frame.world_counts[s]; ++w) {
      bool all = true;
      for (const Formula& h : hyps) {
        if (!e.sat(w, h)) {
          all = false;
          break;
        }
      }
      if (all && !e.sat(w, phi))
        return LocalVerdict{false, static_cast<int>(i), w};
    }
  }
  return LocalVerdict{true, -1, -1};
}

Submodel generated_submodel(const Signature& sig, const Model& m,
                            const std::vector<std::vector<int>>& seed) {
  if (static_cast<int>(seed.size()) != sig.sort_count())
    throw Error("generated_submodel: one seed list per sort required");
  std::vector<std::vector<char>> keep(sig.sort_count());
  for (SortId s = 0; s < sig.sort_count(); ++s)
    keep[s].assign(m.frame.world_counts[s], 0);
  std::vector<std::pair<SortId, int>> work;
  for (SortId s = 0; s < sig.sort_count(); ++s) {
    for (int w : seed[s]) {
      if (w < 0 || w >= m.frame.world_counts[s])
        throw Error("generated_submodel: seed world out of range");
      if (!keep[s][w]) {
        keep[s][w] = 1;
        work.emplace_back(s, w);
      }
    }
  }
  // index tuples by result world once
  std::vector<std::vector<std::vector<const std::vector<int>*>>> by_result(
      sig.op_count());
  for (OpId o = 0; o < sig.op_count(); ++o) {
    by_result[o].resize(m.frame.world_counts[sig.op(o).result]);
    for (const auto& t : m.frame.rels[o]) by_result[o][t[0]].push_back(&t);
  }
  while (!work.empty()) {
    auto [s, w] = work.back();
    work.pop_back();
    for (OpId o = 0; o < sig.op_count(); ++o) {
      const OpDecl& d = sig.op(o);
      if (d.result != s) continue;
      for (const auto* t : by_result[o][w]) {
        for (int i = 0; i < d.arity(); ++i) {
          SortId as = d.args[i];
          int aw = (*t)[i + 1];
          if (!keep[as][aw]) {
            keep[as][aw] = 1;
            work.emplace_back(as, aw);
          }
        }
      }
    }
  }

  Submodel out;
  out.world_map.resize(sig.sort_count());
  std::vector<int> new_counts(sig.sort_count(), 0);
  Frame nf;
  nf.world_counts.resize(sig.sort_count());
  nf.world_names.resize(sig.sort_count());
  for (SortId s = 0; s < sig.sort_count(); ++s) {
    out.world_map[s].assign(m.frame.world_counts[s], -1);
    for (int w = 0; w < m.frame.world_counts[s]; ++w) {
      if (keep[s][w]) {
        out.world_map[s][w] = new_counts[s]++;
        nf.world_names[s].push_back(m.frame.world_names[s][w]);
      }
    }
    if (new_counts[s] == 0) {
      out.padded_sorts.push_back(s);
      new_counts[s] = 1;
      nf.world_names[s].push_back(sig.sort_name(s) + "_pad");
    }
    nf.world_counts[s] = new_counts[s];
  }
  nf.rels.resize(sig.op_count());
  for (OpId o = 0; o < sig.op_count(); ++o) {
    const OpDecl& d = sig.op(o);
    for (const auto& t : m.frame.rels[o]) {
      if (!keep[d.result][t[0]]) continue;  // closure keeps all arguments
      std::vector<int> nt(t.size());
      nt[0] = out.world_map[d.result][t[0]];
      for (int i = 0; i < d.arity(); ++i)
        nt[i + 1] = out.world_map[d.args[i]][t[i + 1]];
      nf.rels[o].push_back(std::move(nt));
    }
    std::sort(nf.rels[o].begin(), nf.rels[o].end());
  }
  out.model.frame = std::move(nf);
  out.model.val.resize(sig.var_count());
  for (VarId v = 0; v < sig.var_count(); ++v) {
    SortId s = sig.var(v).sort;
    out.model.val[v].assign(out.model.frame.world_counts[s], 0);
    for (int w = 0; w < m.frame.world_counts[s]; ++w)
      if (keep[s][w] && m.val[v][w])
        out.model.val[v][out.world_map[s][w]] = 1;
  }
  return out;
}

ModelEnumerator::ModelEnumerator(const Signature& sig, int max_worlds_per_sort,
                                 std::vector<VarId> var_pool)
    : sig_(sig), max_(max_worlds_per_sort), pool_(std::move(var_pool)) {
  if (max_ < 1) throw Error("model enumeration needs a bound of at least 1");
  counts_.assign(sig.sort_count(), 1);
  build_shape();
}

void ModelEnumerator::build_shape() {
  tuple_space_.assign(sig_.op_count(), {});
  std::size_t nbits = 0;
  for (OpId o = 0; o < sig_.op_count(); ++o) {
    const OpDecl& d = sig_.op(o);
    // lexicographic tuples, result world outermost
    std::vector<int> t(d.arity() + 1, 0);
    std::vector<int> lim(d.arity() + 1);
    lim[0] = counts_[d.result];
    for (int i = 0; i < d.arity(); ++i) lim[i + 1] = counts_[d.args[i]];
    for (;;) {
      tuple_space_[o].push_back(t);
      int k = d.arity();
      while (k >= 0 && ++t[k] == lim[k]) t[k--] = 0;
      if (k < 0) break;
    }
    nbits += tuple_space_[o].size();
  }
  for (VarId v : pool_) nbits += counts_[sig_.var(v).sort];
  bits_.assign(nbits, 0);
}

void ModelEnumerator::emit(Model* out) const {
  Frame f = make_frame(sig_, counts_);
  std::size_t b = 0;
  for (OpId o = 0; o < sig_.op_count(); ++o)
    for (const auto& t : tuple_space_[o]) {
      if (bits_[b++]) f.rels[o].push_back(t);
    }
  *out = make_model(sig_, std::move(f));
  for (VarId v : pool_)
    for (int w = 0; w < counts_[sig_.var(v).sort]; ++w)
      out->val[v][w] = bits_[b++];
}

bool ModelEnumerator::next(Model* out) {
  if (done_) return false;
  if (fresh_) {
    fresh_ = false;
    emit(out);
    return true;
  }
  // advance the bit odometer; on wrap, advance world counts
  std::size_t i = 0;
  while (i < bits_.size() && bits_[i] == 1) bits_[i++] = 0;
  if (i < bits_.size()) {
    bits_[i] = 1;
    emit(out);
    return true;
  }
  int s = 0;
  while (s < sig_.sort_count() && counts_[s] == max_) counts_[s++] = 1;
  if (s == sig_.sort_count()) {
    done_ = true;
    return false;
  }
  ++counts_[s];
  build_shape();
  emit(out);
  return true;
}

Model ModelEnumerator::random(const Signature& sig, int max_worlds_per_sort,
                              const std::vector<VarId>& var_pool,
                              std::mt19937_64& rng) {
  if (max_worlds_per_sort < 1)
    throw Error("model enumeration needs a bound of at least 1");
  std::vector<int> counts(sig.sort_count());
  for (SortId s = 0; s < sig.sort_count(); ++s)
    counts[s] = 1 + static_cast<int>(rng() % max_worlds_per_sort);
  Frame f = make_frame(sig, counts);
  const double densities[3] = {0.2, 0.5, 0.8};
  for (OpId o = 0; o < sig.op_count(); ++o) {
    const OpDecl& d = sig.op(o);
    double dens = densities[rng() % 3];
    std::vector<int> t(d.arity() + 1, 0);
    std::vector<int> lim(d.arity() + 1);
    lim[0] = counts[d.result];
    for (int i = 0; i < d.arity(); ++i) lim[i + 1] = counts[d.args[i]];
    for (;;) {
      if (std::uniform_real_distribution<double>(0, 1)(rng) < dens)
        f.rels[o].push_back(t);
      int k = d.arity();
      while (k >= 0 && ++t[k] == lim[k]) t[k--] = 0;
      if (k < 0) break;
    }
  }
  Model m = make_model(sig, std::move(f));
  for (VarId v : var_pool)
    for (int w = 0; w < counts[sig.var(v).sort]; ++w)
      m.val[v][w] = static_cast<char>(rng() % 2);
  return m;
}

Model parse_model(const Signature& sig, const std::string& text) {
  Frame f;
  f.world_counts.assign(sig.sort_count(), 0);
  f.world_names.resize(sig.sort_count());
  f.rels.resize(sig.op_count());
  std::unordered_map<std::string, std::pair<SortId, int>> by_name;
  struct RelLine {
    OpId op;
    std::vector<std::string> ids;
  };
  std::vector<RelLine> rel_lines;
  std::vector<std::pair<VarId, std::vector<std::string>>> val_lines;
  std::vector<char> val_seen(sig.var_count(), 0);

  for_each_line(text, [&](int, const std::vector<std::string>& tok) {
    if (tok[0] == "world") {
      if (tok.size() != 4 || tok[2] != ":")
        throw ParseError("expected: world <id> : <sort>");
      if (by_name.count(tok[1]))
        throw ParseError("duplicate world '" + tok[1] + "'");
      SortId s = sig.sort_id(tok[3]);
      by_name[tok[1]] = {s, f.world_counts[s]};
      f.world_names[s].push_back(tok[1]);
      ++f.world_counts[s];
    } else if (tok[0] == "rel") {
      if (tok.size() < 3) throw ParseError("expected: rel <op> <id> <id>*");
      OpId o = sig.op_id(tok[1]);
      if (static_cast<int>(tok.size()) - 2 != sig.op(o).arity() + 1)
        throw ParseError("rel '" + tok[1] + "' expects " +
                         std::to_string(sig.op(o).arity() + 1) + " world ids");
      rel_lines.push_back(RelLine{o, {tok.begin() + 2, tok.end()}});
    } else if (tok[0] == "val") {
      if (tok.size() < 5 || tok[2] != "=" || tok[3] != "{" ||
          tok.back() != "}")
        throw ParseError("expected: val <var> = { <id>* }");
      VarId v = sig.var_id(tok[1]);
      if (val_seen[v])
        throw ParseError("duplicate valuation for '" + tok[1] + "'");
      val_seen[v] = 1;
      val_lines.emplace_back(
          v, std::vector<std::string>(tok.begin() + 4, tok.end() - 1));
    } else {
      throw ParseError("unknown declaration '" + tok[0] + "'");
    }
  });

  for (SortId s = 0; s < sig.sort_count(); ++s)
    if (f.world_counts[s] == 0)
      throw ParseError("sort '" + sig.sort_name(s) + "' has no world");

  auto resolve = [&](const std::string& id, SortId want) {
    auto it = by_name.find(id);
    if (it == by_name.end()) throw ParseError("unknown world '" + id + "'");
    if (it->second.first != want)
      throw ParseError("world '" + id + "' has sort '" +
                       sig.sort_name(it->second.first) + "', expected '" +
                       sig.sort_name(want) + "'");
    return it->second.second;
  };

  for (const auto& rl : rel_lines) {
    const OpDecl& d = sig.op(rl.op);
    std::vector<int> t;
    t.push_back(resolve(rl.ids[0], d.result));
    for (int i = 0; i < d.arity(); ++i)
      t.push_back(resolve(rl.ids[i + 1], d.args[i]));
    add_rel_tuple(sig, f, rl.op, t);
  }
  Model m = make_model(sig, std::move(f));
  for (const auto& [v, ids] : val_lines)
    for (const auto& id : ids)
      m.val[v][resolve(id, sig.var(v).sort)] = 1;
  return m;
}

std::string print_model(const Signature& sig, const Model& m) {
  std::ostringstream out;
  for (SortId s = 0; s < sig.sort_count(); ++s)
    for (int w = 0; w < m.frame.world_counts[s]; ++w)
      out << "world " << m.frame.world_names[s][w] << " : " << sig.sort_name(s)
          << "\n";
  for (OpId o = 0; o < sig.op_count(); ++o) {
    const OpDecl& d = sig.op(o);
    for (const auto& t : m.frame.rels[o]) {
      out << "rel " << d.name << " " << m.frame.world_names[d.result][t[0]];
      for (int i = 0; i < d.arity(); ++i)
        out << " " << m.frame.world_names[d.args[i]][t[i + 1]];
      out << "\n";
    }
  }
  for (VarId v = 0; v < sig.var_count(); ++v) {
    SortId s = sig.var(v).sort;
    bool any = false;
    for (char b : m.val[v]) any = any || b;
    if (!any) continue;
    out << "val " << sig.var(v).name << " = {";
    for (int w = 0; w < m.frame.world_counts[s]; ++w)
      if (m.val[v][w]) out << " " << m.frame.world_names[s][w];
    out << " }\n";
  }
  return out.str();
}

std::pair<SortId, int> find_world(const Signature& sig, const Model& m,
                                  const std::string& name) {
  for (SortId s = 0; s < sig.sort_count(); ++s)
    for (int w = 0; w < m.frame.world_counts[s]; ++w)
      if (m.frame.world_names[s][w] == name) return {s, w};
  return {-1, -1};
}

}  // namespace msml
