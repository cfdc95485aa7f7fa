#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>

#include "msml/core/errors.hpp"
#include "msml/core/format.hpp"
#include "msml/proof/axioms.hpp"
#include "msml/smc/smc.hpp"

namespace msml::smc {

int TermModel::find_world(SortId s, const Formula& term) const {
  const auto& idx = term_index.at(s);
  auto it = idx.find(term);
  return it == idx.end() ? -1 : it->second;
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

TermModel build_term_model(const Signature& sig, const StmtPtr& program,
                           const std::map<std::string, long long>& initial,
                           int budget, int star_iteration_cap) {
  const SortId sNat = sig.sort_id("Nat");
  const SortId sVar = sig.sort_id("Var");
  const SortId sBool = sig.sort_id("Bool");
  const SortId sAExp = sig.sort_id("AExp");
  const SortId sBExp = sig.sort_id("BExp");
  const SortId sStmt = sig.sort_id("Stmt");
  const SortId sVal = sig.sort_id("Val");
  const SortId sStack = sig.sort_id("ValStack");
  const SortId sMem = sig.sort_id("Mem");
  const SortId sCtrl = sig.sort_id("CtrlStack");
  const SortId sConfig = sig.sort_id("Config");

  TermModel tm;
  tm.world_terms.resize(sig.sort_count());
  tm.term_index.resize(sig.sort_count());
  auto add_world = [&](SortId s, const Formula& t) -> int {
    auto it = tm.term_index[s].find(t);
    if (it != tm.term_index[s].end()) return it->second;
    int id = static_cast<int>(tm.world_terms[s].size());
    tm.world_terms[s].push_back(t);
    tm.term_index[s].emplace(t, id);
    return id;
  };

  // base values: every numeral, identifier and boolean of the signature
  std::vector<std::pair<long long, OpId>> nums;
  std::vector<std::string> ids;
  for (OpId o = 0; o < sig.op_count(); ++o) {
    const OpDecl& d = sig.op(o);
    if (!d.args.empty()) continue;
    if (d.result == sNat && all_digits(d.name))
      nums.emplace_back(std::stoll(d.name), o);
    else if (d.result == sVar)
      ids.push_back(d.name);
  }
  std::sort(nums.begin(), nums.end());
  std::map<long long, int> nat_world;
  for (const auto& [v, o] : nums)
    nat_world[v] = add_world(sNat, Formula::app(o, {}));
  if (!nat_world.count(0))
    throw Error("the term model needs the numeral 0 for default reads");
  for (const std::string& x : ids) add_world(sVar, pvar_formula(sig, x));
  for (const char* bname : {"true", "false"})
    add_world(sBool, Formula::app(sig.op_id(bname), {}));

  std::vector<MachineVal> vals;
  for (const auto& [v, o] : nums) vals.push_back({false, v});
  vals.push_back({true, 1});
  vals.push_back({true, 0});
  for (const MachineVal& v : vals) add_world(sVal, val_formula(sig, v));

  // machine exploration feeds the stack and configuration worlds
  SmcRunResult run = smc_run(program, initial, budget);
  if (run.budget_exceeded)
    throw Error("term model construction needs the full reachable state "
                "space; raise the budget");
  if (!run.faults.empty())
    throw Error("term model of an ill-formed program: " + run.faults.front());

  std::set<std::vector<MachineVal>> stackset;
  stackset.emplace();
  for (const SmcConfig& c : run.visited) {
    std::vector<MachineVal> s = c.stack;
    while (!s.empty()) {
      stackset.insert(s);
      s.pop_back();
    }
  }
  for (const auto& st : stackset) add_world(sStack, stack_formula(sig, st));

  // every memory over the declared identifiers and numerals, absent allowed
  std::vector<std::map<std::string, long long>> mems;
  std::map<std::map<std::string, long long>, int> mem_world;
  {
    const int opts = static_cast<int>(nums.size()) + 1;
    std::vector<int> odo(ids.size(), 0);
    while (true) {
      std::map<std::string, long long> mm;
      for (std::size_t i = 0; i < ids.size(); ++i)
        if (odo[i] > 0) mm[ids[i]] = nums[odo[i] - 1].first;
      mem_world[mm] = add_world(sMem, mem_formula(sig, mm));
      mems.push_back(std::move(mm));
      std::size_t i = ids.size();
      while (i > 0 && odo[i - 1] == opts - 1) odo[--i] = 0;
      if (i == 0) break;
      ++odo[i - 1];
    }
  }

  // expression, statement and control worlds from the program
  std::vector<AExpPtr> aexp_of;
  auto add_aexp = [&](const AExpPtr& a) {
    std::size_t before = tm.world_terms[sAExp].size();
    int id = add_world(sAExp, aexp_formula(sig, a));
    if (tm.world_terms[sAExp].size() > before) aexp_of.push_back(a);
    return id;
  };
  std::vector<BExpPtr> bexp_of;
  auto add_bexp = [&](const BExpPtr& b) {
    std::size_t before = tm.world_terms[sBExp].size();
    int id = add_world(sBExp, bexp_formula(sig, b));
    if (tm.world_terms[sBExp].size() > before) bexp_of.push_back(b);
    return id;
  };
  std::vector<StmtPtr> stmt_of;
  auto add_stmt = [&](const StmtPtr& st) {
    std::size_t before = tm.world_terms[sStmt].size();
    int id = add_world(sStmt, stmt_formula(sig, st));
    if (tm.world_terms[sStmt].size() > before) stmt_of.push_back(st);
    return id;
  };

  for (const auto& [v, o] : nums) add_aexp(mk_num(v));
  for (const std::string& x : ids) add_aexp(mk_id(x));

  auto walk_aexp = [&](auto&& self, const AExpPtr& a) -> void {
    if (a->kind == AExp::Add) {
      self(self, a->lhs);
      self(self, a->rhs);
    }
    add_aexp(a);
  };
  auto walk_bexp = [&](const BExpPtr& b) {
    walk_aexp(walk_aexp, b->lhs);
    walk_aexp(walk_aexp, b->rhs);
    add_bexp(b);
  };
  auto walk_stmt = [&](auto&& self, const StmtPtr& st) -> void {
    switch (st->kind) {
      case Stmt::Assign:
        walk_aexp(walk_aexp, st->aexp);
        break;
      case Stmt::If:
        walk_bexp(st->cond);
        self(self, st->s1);
        self(self, st->s2);
        break;
      case Stmt::While:
        walk_bexp(st->cond);
        self(self, st->s1);
        break;
      case Stmt::Seq:
        self(self, st->s1);
        self(self, st->s2);
        break;
      case Stmt::Skip:
        break;
    }
    add_stmt(st);
  };
  walk_stmt(walk_stmt, program);
  add_stmt(mk_skip());
  // a comparison-free program still needs the sort inhabited
  if (tm.world_terms[sBExp].empty())
    add_bexp(mk_le(mk_num(nums.front().first), mk_num(nums.front().first)));

  std::vector<CtrlPtr> ctrl_of;
  auto add_ctrl = [&](const CtrlPtr& c) {
    std::size_t before = tm.world_terms[sCtrl].size();
    int id = add_world(sCtrl, ctrl_formula(sig, c));
    if (tm.world_terms[sCtrl].size() > before) ctrl_of.push_back(c);
    return id;
  };
  for (const auto& [v, o] : nums) add_ctrl(ctrl_ca(mk_num(v)));
  for (const std::string& x : ids) add_ctrl(ctrl_ca(mk_id(x)));
  for (const std::string& x : ids) add_ctrl(ctrl_asgn(x));
  add_ctrl(ctrl_plus());
  add_ctrl(ctrl_leq());
  for (const MachineVal& v : vals) add_ctrl(ctrl_test(v));
  add_ctrl(ctrl_cs(mk_skip()));
  auto walk_ctrl = [&](auto&& self, const CtrlPtr& c) -> void {
    if (c->kind == Ctrl::Comp || c->kind == Ctrl::Union) {
      self(self, c->c1);
      self(self, c->c2);
    } else if (c->kind == Ctrl::Star) {
      self(self, c->c1);
    }
    add_ctrl(c);
  };
  walk_ctrl(walk_ctrl, d_normal(ctrl_cs(program)));

  std::vector<SmcConfig> config_of = run.visited;  // already sorted
  std::map<SmcConfig, int> config_world;
  for (const SmcConfig& c : config_of)
    config_world[c] = add_world(sConfig, config_formula(sig, c));

  // frame assembly
  std::vector<int> counts(sig.sort_count());
  for (SortId s = 0; s < sig.sort_count(); ++s)
    counts[s] = static_cast<int>(tm.world_terms[s].size());
  Frame frame = make_frame(sig, counts);

  // construction tuples straight off the world terms (memories excluded:
  // their set/get relations are the full map-update and map-read graphs)
  for (SortId s : {sNat, sVar, sBool, sVal, sStack, sAExp, sBExp, sStmt,
                   sCtrl, sConfig}) {
    for (int w = 0; w < counts[s]; ++w) {
      const Formula& t = tm.world_terms[s][w];
      const OpDecl& d = sig.op(t.op_sym());
      std::vector<int> tuple{w};
      bool ok = true;
      for (int i = 0; i < d.arity(); ++i) {
        int aw = tm.find_world(d.args[i], t.arg(i));
        if (aw < 0) {
          ok = false;
          break;
        }
        tuple.push_back(aw);
      }
      if (ok) add_rel_tuple(sig, frame, t.op_sym(), tuple);
    }
  }

  // control injection of compound sources lands on the normalized world
  const OpId op_ca = sig.op_id("ca");
  const OpId op_cb = sig.op_id("cb");
  const OpId op_cs = sig.op_id("cs");
  for (std::size_t i = 0; i < aexp_of.size(); ++i) {
    if (aexp_of[i]->kind != AExp::Add) continue;
    int target =
        tm.find_world(sCtrl, ctrl_formula(sig, d_normal(ctrl_ca(aexp_of[i]))));
    if (target >= 0)
      add_rel_tuple(sig, frame, op_ca, {target, static_cast<int>(i)});
  }
  for (std::size_t i = 0; i < bexp_of.size(); ++i) {
    int target =
        tm.find_world(sCtrl, ctrl_formula(sig, d_normal(ctrl_cb(bexp_of[i]))));
    if (target >= 0)
      add_rel_tuple(sig, frame, op_cb, {target, static_cast<int>(i)});
  }
  for (std::size_t i = 0; i < stmt_of.size(); ++i) {
    if (stmt_of[i]->kind == Stmt::Skip) continue;
    int target =
        tm.find_world(sCtrl, ctrl_formula(sig, d_normal(ctrl_cs(stmt_of[i]))));
    if (target >= 0)
      add_rel_tuple(sig, frame, op_cs, {target, static_cast<int>(i)});
  }

  // memory relations: every update edge, every read
  const OpId op_set = sig.op_id("set");
  const OpId op_get = sig.op_id("get");
  const OpId op_empty = sig.op_id("empty");
  add_rel_tuple(sig, frame, op_empty, {mem_world.at({})});
  for (std::size_t mi = 0; mi < mems.size(); ++mi) {
    for (std::size_t xi = 0; xi < ids.size(); ++xi) {
      for (std::size_t ni = 0; ni < nums.size(); ++ni) {
        std::map<std::string, long long> upd = mems[mi];
        upd[ids[xi]] = nums[ni].first;
        add_rel_tuple(sig, frame, op_set,
                      {mem_world.at(upd), static_cast<int>(mi),
                       static_cast<int>(xi), static_cast<int>(ni)});
      }
      auto it = mems[mi].find(ids[xi]);
      long long read = it == mems[mi].end() ? 0 : it->second;
      add_rel_tuple(sig, frame, op_get,
                    {static_cast<int>(mi), static_cast<int>(xi),
                     nat_world.at(read)});
    }
  }

  // transitions, children before parents in ctrl world order
  const OpId op_exec = sig.op_id("exec");
  std::vector<std::vector<std::pair<int, int>>> erel(ctrl_of.size());
  auto ctrl_world = [&](const CtrlPtr& c) {
    int w = tm.find_world(sCtrl, ctrl_formula(sig, c));
    if (w < 0) throw Error("internal: control subterm missing from the model");
    return w;
  };
  const int default_cap = static_cast<int>(config_of.size()) + 1;
  const int cap = star_iteration_cap < 0 ? default_cap : star_iteration_cap;
  for (std::size_t w = 0; w < ctrl_of.size(); ++w) {
    const CtrlPtr& c = ctrl_of[w];
    std::set<std::pair<int, int>> rel;
    switch (c->kind) {
      case Ctrl::Comp: {
        const auto& r1 = erel[ctrl_world(c->c1)];
        const auto& r2 = erel[ctrl_world(c->c2)];
        std::multimap<int, int> by_start;
        for (const auto& [a, b] : r2) by_start.emplace(a, b);
        for (const auto& [a, b] : r1) {
          auto [lo, hi] = by_start.equal_range(b);
          for (auto it = lo; it != hi; ++it) rel.emplace(a, it->second);
        }
        break;
      }
      case Ctrl::Union: {
        for (const auto& p : erel[ctrl_world(c->c1)]) rel.insert(p);
        for (const auto& p : erel[ctrl_world(c->c2)]) rel.insert(p);
        break;
      }
      case Ctrl::Star: {
        const auto& r = erel[ctrl_world(c->c1)];
        for (int cw = 0; cw < static_cast<int>(config_of.size()); ++cw)
          rel.emplace(cw, cw);
        bool settled = false;
        for (int round = 0; round < cap && !settled; ++round) {
          std::set<std::pair<int, int>> grown = rel;
          for (const auto& [a, b] : r)
            for (const auto& [b2, e] : rel)
              if (b == b2) grown.emplace(a, e);
          settled = grown == rel;
          rel = std::move(grown);
        }
        if (!settled) tm.truncated_stars.push_back(static_cast<int>(w));
        break;
      }
      default: {
        // atomic item: one machine step per configuration world
        for (int cw = 0; cw < static_cast<int>(config_of.size()); ++cw) {
          std::vector<std::pair<SmcConfig, CtrlPtr>> succ;
          try {
            succ = smc_step(config_of[cw], c);
          } catch (const Error&) {
            continue;  // the item cannot execute at this configuration
          }
          for (auto& [ncfg, nctrl] : succ) {
            if (nctrl) throw Error("internal: atomic item left residue");
            auto it = config_world.find(ncfg);
            if (it != config_world.end()) rel.emplace(cw, it->second);
          }
        }
        break;
      }
    }
    erel[w].assign(rel.begin(), rel.end());
    for (const auto& [a, b] : rel)
      add_rel_tuple(sig, frame, op_exec, {a, static_cast<int>(w), b});
  }

  tm.model = make_model(sig, std::move(frame));
  check_model(sig, tm.model);
  return tm;
}

// ----- scheme coherence -----

namespace {

// Ground evaluation against the term model with a per-query memo. The
// relation index is built once, unlike the general evaluator which is
// per-instance here (tens of thousands of instances).
class GroundEval {
 public:
  GroundEval(const Signature& sig, const Model& m) : m_(m) {
    index_.resize(sig.op_count());
    for (OpId o = 0; o < sig.op_count(); ++o) {
      index_[o].resize(m.frame.world_counts[sig.op(o).result]);
      for (const auto& t : m.frame.rels[o])
        index_[o][t[0]].emplace_back(t.begin() + 1, t.end());
    }
  }

  bool sat(const Formula& f, int w) {
    switch (f.kind()) {
      case FKind::Var:
        return m_.val[f.var_sym()][w] != 0;
      case FKind::Not:
        return !sat(f.arg(0), w);
      case FKind::Or:
        return sat(f.arg(0), w) || sat(f.arg(1), w);
      case FKind::App: {
        Key k{f.raw(), w};
        auto it = memo_.find(k);
        if (it != memo_.end()) return it->second;
        bool out = false;
        for (const auto& tuple : index_[f.op_sym()][w]) {
          bool all = true;
          for (std::size_t i = 0; i < tuple.size() && all; ++i)
            all = sat(f.arg(static_cast<int>(i)), tuple[i]);
          if (all) {
            out = true;
            break;
          }
        }
        memo_.emplace(k, out);
        return out;
      }
    }
    return false;
  }

  void reset() { memo_.clear(); }

 private:
  struct Key {
    const FNode* node;
    int world;
    bool operator==(const Key& o) const {
      return node == o.node && world == o.world;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<const FNode*>{}(k.node) * 1000003u +
             static_cast<std::size_t>(k.world);
    }
  };
  const Model& m_;
  std::vector<std::vector<std::vector<std::vector<int>>>> index_;
  std::unordered_map<Key, bool, KeyHash> memo_;
};

long long numeral_of(const Signature& sig, const Formula& f) {
  return std::stoll(sig.op(f.op_sym()).name);
}

bool truth_of(const Signature& sig, const Formula& f) {
  return sig.op(f.op_sym()).name == "true";
}

bool guard_holds(const Signature& sig, const AxiomScheme& s,
                 const std::map<std::string, Formula>& binding) {
  for (const SchemeGuard& g : s.guards) {
    std::vector<Formula> args;
    for (const std::string& name : g.metas) args.push_back(binding.at(name));
    switch (g.kind) {
      case SchemeGuard::IntAdd:
        if (numeral_of(sig, args[0]) + numeral_of(sig, args[1]) !=
            numeral_of(sig, args[2]))
          return false;
        break;
      case SchemeGuard::LeqTruth:
        if ((numeral_of(sig, args[0]) <= numeral_of(sig, args[1])) !=
            truth_of(sig, args[2]))
          return false;
        break;
      case SchemeGuard::Distinct:
        if (args[0] == args[1]) return false;
        break;
      case SchemeGuard::IsBot:
        return false;  // world terms are never the canonical falsum
    }
  }
  return true;
}

}  // namespace

CoherenceReport check_axiom_coherence(const Signature& sig,
                                      const AxiomSet& axioms,
                                      const TermModel& tm) {
  const SortId sCtrl = sig.sort_id("CtrlStack");
  const OpId op_comp = sig.op_id("comp");
  const OpId op_union = sig.op_id("union");
  const OpId op_star = sig.op_id("star");

  CoherenceReport rep;
  GroundEval ev(sig, tm.model);

  for (const AxiomScheme& s : axioms.schemes) {
    if (s.auto_generated) continue;
    const SortId tsort = sort_of(s.sig, s.templ);
    const int tworlds = tm.model.frame.world_counts[tsort];

    std::vector<std::string> names;
    std::vector<SortId> msorts;
    for (VarId m : s.metas) {
      names.push_back(s.sig.var(m).name);
      msorts.push_back(s.sig.var(m).sort);
    }
    std::vector<int> odo(names.size(), 0);
    bool live = true;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (tm.world_terms[msorts[i]].empty()) live = false;

    while (live) {
      std::map<std::string, Formula> binding;
      for (std::size_t i = 0; i < names.size(); ++i)
        binding.emplace(names[i], tm.world_terms[msorts[i]][odo[i]]);

      if (guard_holds(sig, s, binding)) {
        // instances over a compound control term need that term as a world
        enum { kCheck, kOutOfScope, kStarSkip } disp = kCheck;
        if (s.name == "a_comp" || s.name == "a_union") {
          Formula head = Formula::app(s.name == "a_comp" ? op_comp : op_union,
                                      {binding.at("PI"), binding.at("PI2")});
          if (tm.find_world(sCtrl, head) < 0) disp = kOutOfScope;
        } else if (s.name == "a_star") {
          Formula head = Formula::app(op_star, {binding.at("PI")});
          int w = tm.find_world(sCtrl, head);
          if (w < 0)
            disp = kOutOfScope;
          else if (std::find(tm.truncated_stars.begin(),
                             tm.truncated_stars.end(),
                             w) != tm.truncated_stars.end())
            disp = kStarSkip;
        }
        if (disp == kOutOfScope) {
          ++rep.out_of_scope;
        } else if (disp == kStarSkip) {
          ++rep.star_skipped;
        } else {
          Formula inst = instantiate_scheme(s, binding);
          ev.reset();
          bool holds = true;
          for (int w = 0; w < tworlds && holds; ++w) holds = ev.sat(inst, w);
          ++rep.checked;
          if (!holds) {
            ++rep.failed;
            if (rep.failures.size() < 20) {
              std::string line = s.name + " {";
              for (std::size_t i = 0; i < names.size(); ++i) {
                if (i) line += ", ";
                line += names[i] + " := " +
                        print_formula(sig, binding.at(names[i]), BoxMode::Pdl);
              }
              line += "}";
              rep.failures.push_back(std::move(line));
            }
          }
        }
      }

      std::size_t i = names.size();
      while (i > 0 &&
             odo[i - 1] ==
                 static_cast<int>(tm.world_terms[msorts[i - 1]].size()) - 1)
        odo[--i] = 0;
      if (i == 0) break;
      ++odo[i - 1];
    }
  }
  return rep;
}

}  // namespace msml::smc
