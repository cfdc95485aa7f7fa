#include "msml/proof/proof.hpp"

#include <sstream>

#include "msml/core/errors.hpp"
#include "msml/core/text.hpp"
#include "msml/proof/taut.hpp"

namespace msml {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

int to_int(const std::string& s) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (...) {
    throw ParseError("expected a number, got '" + s + "'");
  }
  if (pos != s.size()) throw ParseError("expected a number, got '" + s + "'");
  return v;
}

// Splits on commas that sit outside every bracket pair.
std::vector<std::string> split_top(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::map<std::string, Formula> parse_binding(const Signature& sig,
                                             const std::string& raw,
                                             BoxMode mode) {
  std::string text = trim(raw);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw ParseError("binding must be wrapped in braces, got '" + raw + "'");
  std::string inner = trim(text.substr(1, text.size() - 2));
  std::map<std::string, Formula> out;
  if (inner.empty()) return out;
  for (const std::string& part : split_top(inner)) {
    size_t at = part.find(":=");
    if (at == std::string::npos)
      throw ParseError("binding entry needs ':=', got '" + trim(part) + "'");
    std::string name = trim(part.substr(0, at));
    std::string body = trim(part.substr(at + 2));
    if (name.empty() || body.empty())
      throw ParseError("malformed binding entry '" + trim(part) + "'");
    if (out.count(name))
      throw ParseError("metavariable " + name + " bound twice");
    out.emplace(name, parse_formula(sig, body, mode));
  }
  return out;
}

std::vector<Formula> parse_side_list(const Signature& sig,
                                     const std::string& raw, BoxMode mode) {
  std::string text = trim(raw);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw ParseError("side list must be wrapped in brackets, got '" + raw +
                     "'");
  std::string inner = trim(text.substr(1, text.size() - 2));
  std::vector<Formula> out;
  if (inner.empty()) return out;
  for (const std::string& part : split_top(inner))
    out.push_back(parse_formula(sig, trim(part), mode));
  return out;
}

Justification parse_just(const Signature& sig,
                         const std::vector<std::string>& t, BoxMode mode) {
  if (t.empty()) throw ParseError("missing justification");
  auto rest = [&](size_t from) {
    std::string s;
    for (size_t k = from; k < t.size(); ++k) {
      if (!s.empty()) s += ' ';
      s += t[k];
    }
    return s;
  };
  auto step_ref = [&](const std::string& s) {
    int v = to_int(s);
    if (v < 1) throw ParseError("step references are 1-based");
    return v - 1;
  };
  auto pos_ref = [&](const std::string& s) {
    int v = to_int(s);
    if (v < 1) throw ParseError("operator positions are 1-based");
    return v - 1;
  };

  Justification j;
  const std::string& kw = t[0];
  if (kw == "taut") {
    if (t.size() != 1) throw ParseError("taut takes no arguments");
    j.kind = Justification::Taut;
  } else if (kw == "axiom") {
    if (t.size() < 2) throw ParseError("axiom needs a scheme name");
    j.kind = Justification::Scheme;
    j.scheme = t[1];
    if (t.size() > 2) j.binding = parse_binding(sig, rest(2), mode);
  } else if (kw == "k") {
    if (t.size() < 3) throw ParseError("k needs an operator and a position");
    j.kind = Justification::KInst;
    j.op = sig.op_id(t[1]);
    j.pos = pos_ref(t[2]);
    if (t.size() > 3) j.binding = parse_binding(sig, rest(3), mode);
  } else if (kw == "dual") {
    if (t.size() < 2) throw ParseError("dual needs an operator");
    j.kind = Justification::DualInst;
    j.op = sig.op_id(t[1]);
    if (t.size() > 2) j.binding = parse_binding(sig, rest(2), mode);
  } else if (kw == "hyp") {
    if (t.size() != 1) throw ParseError("hyp takes no arguments");
    j.kind = Justification::Hyp;
  } else if (kw == "mp") {
    if (t.size() != 3) throw ParseError("mp takes two step references");
    j.kind = Justification::MP;
    j.from1 = step_ref(t[1]);
    j.from2 = step_ref(t[2]);
  } else if (kw == "ug" || kw == "mono") {
    if (t.size() < 4)
      throw ParseError(kw + " needs an operator, a position and a premise");
    j.kind = kw == "ug" ? Justification::UG : Justification::Mono;
    j.op = sig.op_id(t[1]);
    j.pos = pos_ref(t[2]);
    j.from1 = step_ref(t[3]);
    if (t.size() > 4) j.sides = parse_side_list(sig, rest(4), mode);
  } else {
    throw ParseError("unknown justification '" + kw + "'");
  }
  return j;
}

std::string print_binding(const Signature& sig,
                          const std::map<std::string, Formula>& b,
                          BoxMode mode) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, f] : b) {
    if (!first) out += ", ";
    first = false;
    out += name + " := " + print_formula(sig, f, mode);
  }
  return out + "}";
}

std::string print_just(const Signature& sig, const Justification& j,
                       BoxMode mode) {
  auto sides_part = [&]() {
    if (j.sides.empty()) return std::string();
    std::string s = " [";
    for (size_t i = 0; i < j.sides.size(); ++i) {
      if (i) s += ", ";
      s += print_formula(sig, j.sides[i], mode);
    }
    return s + "]";
  };
  switch (j.kind) {
    case Justification::Taut:
      return "taut";
    case Justification::Scheme:
      return "axiom " + j.scheme +
             (j.binding.empty() ? ""
                                : " " + print_binding(sig, j.binding, mode));
    case Justification::KInst:
      return "k " + sig.op(j.op).name + " " + std::to_string(j.pos + 1) + " " +
             print_binding(sig, j.binding, mode);
    case Justification::DualInst:
      return "dual " + sig.op(j.op).name + " " +
             print_binding(sig, j.binding, mode);
    case Justification::Hyp:
      return "hyp";
    case Justification::MP:
      return "mp " + std::to_string(j.from1 + 1) + " " +
             std::to_string(j.from2 + 1);
    case Justification::UG:
      return "ug " + sig.op(j.op).name + " " + std::to_string(j.pos + 1) +
             " " + std::to_string(j.from1 + 1) + sides_part();
    case Justification::Mono:
      return "mono " + sig.op(j.op).name + " " + std::to_string(j.pos + 1) +
             " " + std::to_string(j.from1 + 1) + sides_part();
  }
  return "?";
}

}  // namespace

Formula conj_nest(const FormulaSet& ws) {
  if (ws.empty()) throw Error("conj_nest: empty conjunction");
  Formula nest = ws.back();
  for (int i = static_cast<int>(ws.size()) - 2; i >= 0; --i)
    nest = Formula::conj(ws[i], nest);
  return nest;
}

Formula witness_implication(const FormulaSet& ws, const Formula& goal) {
  if (ws.empty()) return goal;
  return Formula::impl(conj_nest(ws), goal);
}

namespace {

std::vector<Formula> args_at(const Signature& sig, OpId op, int pos,
                             const std::vector<Formula>& sides,
                             const Formula& at) {
  const OpDecl& d = sig.op(op);
  if (d.arity() == 0) throw Error("operator " + d.name + " is nullary");
  if (pos < 0 || pos >= d.arity())
    throw Error("position out of range for " + d.name);
  if (static_cast<int>(sides.size()) != d.arity() - 1)
    throw Error("operator " + d.name + " needs " +
                std::to_string(d.arity() - 1) + " side formulas, got " +
                std::to_string(sides.size()));
  std::vector<Formula> a;
  a.reserve(d.args.size());
  int k = 0;
  for (int j = 0; j < d.arity(); ++j)
    a.push_back(j == pos ? at : sides[k++]);
  return a;
}

}  // namespace

Formula apply_at(const Signature& sig, OpId op, int pos,
                 const std::vector<Formula>& sides, const Formula& at) {
  return Formula::app(op, args_at(sig, op, pos, sides, at));
}

Formula box_at(const Signature& sig, OpId op, int pos,
               const std::vector<Formula>& sides, const Formula& at) {
  return mk_dual(sig, op, args_at(sig, op, pos, sides, at));
}

CheckResult check_proof(const Signature& sig, const AxiomSet& axioms,
                        const Proof& p) {
  auto fail = [](int step, std::string reason) {
    return CheckResult{false, step, std::move(reason)};
  };
  if (p.steps.empty()) return fail(-1, "proof has no steps");

  if (p.mode == ProofMode::Local) {
    if (p.local_sort < 0 || p.local_sort >= sig.sort_count())
      return fail(-1, "local proof names an unknown sort");
    std::vector<char> used(p.hyps.size(), 0);
    for (int w : p.witnesses) {
      if (w < 0 || w >= static_cast<int>(p.hyps.size()))
        return fail(-1, "witness index out of range");
      if (used[w]) return fail(-1, "duplicate witness index");
      used[w] = 1;
    }
  }
  try {
    for (const Formula& h : p.hyps) {
      SortId s = sort_of(sig, h);
      if (p.mode == ProofMode::Local && s != p.local_sort)
        return fail(-1, "hypothesis of sort " + sig.sort_name(s) +
                            " in a proof local to " +
                            sig.sort_name(p.local_sort));
    }
  } catch (const Error& e) {
    return fail(-1, std::string("bad hypothesis: ") + e.what());
  }

  const bool alt = axioms.basis == Basis::Alternative;
  for (size_t i = 0; i < p.steps.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    const ProofStep& st = p.steps[i];
    const Justification& j = st.just;
    try {
      if (!st.formula.valid()) return fail(n, "step has no formula");
      sort_of(sig, st.formula);
      auto prior = [&](int k) -> const Formula& {
        if (k < 0 || k >= static_cast<int>(i))
          throw Error("reference to step " + std::to_string(k + 1) +
                      " is out of range");
        return p.steps[k].formula;
      };
      switch (j.kind) {
        case Justification::Taut:
          if (!taut_check(sig, st.formula))
            return fail(n, "not a propositional tautology");
          break;
        case Justification::Scheme: {
          const AxiomScheme* s = axioms.find(j.scheme);
          if (!s) return fail(n, "unknown scheme '" + j.scheme + "'");
          if (instantiate_scheme(*s, j.binding) != st.formula)
            return fail(n, "formula differs from the cited instance of " +
                               j.scheme);
          break;
        }
        case Justification::KInst: {
          if (alt)
            return fail(n, "k citations need the standard basis");
          AxiomScheme s = k_scheme(sig, j.op, j.pos);
          if (instantiate_scheme(s, j.binding) != st.formula)
            return fail(n, "formula differs from the cited k instance");
          break;
        }
        case Justification::DualInst: {
          if (alt)
            return fail(n, "dual citations need the standard basis");
          AxiomScheme s = dual_scheme(sig, j.op);
          if (instantiate_scheme(s, j.binding) != st.formula)
            return fail(n, "formula differs from the cited dual instance");
          break;
        }
        case Justification::Hyp:
          if (p.mode == ProofMode::Local)
            return fail(n, "hypothesis step in a local proof");
          if (!contains_formula(p.hyps, st.formula))
            return fail(n, "formula is not among the hypotheses");
          break;
        case Justification::MP: {
          Formula a, b;
          if (!prior(j.from1).match_impl(&a, &b))
            return fail(n, "mp: step " + std::to_string(j.from1 + 1) +
                               " is not an implication");
          if (a != prior(j.from2))
            return fail(n, "mp: step " + std::to_string(j.from2 + 1) +
                               " does not match the antecedent");
          if (b != st.formula)
            return fail(n, "mp: formula differs from the consequent");
          break;
        }
        case Justification::UG: {
          if (alt) return fail(n, "ug needs the standard basis");
          if (box_at(sig, j.op, j.pos, j.sides, prior(j.from1)) != st.formula)
            return fail(n, "formula is not the boxed premise");
          break;
        }
        case Justification::Mono: {
          if (!alt) return fail(n, "mono needs the alternative basis");
          Formula a, b;
          if (!prior(j.from1).match_impl(&a, &b))
            return fail(n, "mono: premise is not an implication");
          Formula want = Formula::impl(apply_at(sig, j.op, j.pos, j.sides, a),
                                       apply_at(sig, j.op, j.pos, j.sides, b));
          if (want != st.formula)
            return fail(n, "formula is not the monotonicity conclusion");
          break;
        }
      }
    } catch (const Error& e) {
      return fail(n, e.what());
    }
  }

  if (p.mode == ProofMode::Local) {
    try {
      SortId cs = sort_of(sig, p.steps.back().formula);
      if (cs != p.local_sort)
        return fail(static_cast<int>(p.steps.size()),
                    "conclusion sort differs from the local sort");
    } catch (const Error& e) {
      return fail(static_cast<int>(p.steps.size()), e.what());
    }
    if (!p.witnesses.empty()) {
      FormulaSet ws;
      for (int w : p.witnesses) ws.push_back(p.hyps[w]);
      Formula a, b;
      const Formula& last = p.steps.back().formula;
      if (!last.match_impl(&a, &b) || a != conj_nest(ws))
        return fail(static_cast<int>(p.steps.size()),
                    "last step is not the witness implication");
    }
  }
  return CheckResult{true, -1, ""};
}

Proof parse_proof(const Signature& sig, const std::string& text, BoxMode mode,
                  const FileLoader& loader) {
  Proof p;
  bool have_header = false;
  int expect = 1;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    try {
      if (!have_header) {
        auto toks = split_ws(line);
        if (toks[0] != "mode")
          throw ParseError("proof must start with a mode line");
        size_t i = 1;
        if (i >= toks.size())
          throw ParseError("mode line needs 'global' or 'local <sort>'");
        if (toks[i] == "global") {
          p.mode = ProofMode::Global;
          ++i;
        } else if (toks[i] == "local") {
          p.mode = ProofMode::Local;
          ++i;
          if (i >= toks.size()) throw ParseError("local mode needs a sort");
          p.local_sort = sig.sort_id(toks[i++]);
        } else {
          throw ParseError("unknown mode '" + toks[i] + "'");
        }
        while (i < toks.size()) {
          if (toks[i] == "hyps") {
            if (++i >= toks.size())
              throw ParseError("hyps needs a file name");
            if (!loader)
              throw Error("no loader for hypothesis file '" + toks[i] + "'");
            p.hyps = parse_formula_set(sig, loader(toks[i]), mode);
            ++i;
          } else if (toks[i] == "witnesses") {
            if (p.mode != ProofMode::Local)
              throw ParseError("witnesses are only allowed in local mode");
            ++i;
            bool any = false;
            while (i < toks.size() && toks[i] != "hyps") {
              int v = to_int(toks[i++]);
              if (v < 1) throw ParseError("witness indices are 1-based");
              p.witnesses.push_back(v - 1);
              any = true;
            }
            if (!any) throw ParseError("witnesses clause is empty");
          } else {
            throw ParseError("unexpected token '" + toks[i] +
                             "' in the mode line");
          }
        }
        have_header = true;
        continue;
      }

      size_t semi = line.find(';');
      if (semi == std::string::npos)
        throw ParseError("step needs '; <justification>'");
      std::string left = line.substr(0, semi);
      std::string right = line.substr(semi + 1);

      auto ltoks = split_ws(left);
      if (ltoks.empty()) throw ParseError("step has no number");
      const std::string& num = ltoks[0];
      if (num.size() < 2 || num.back() != '.')
        throw ParseError("step must start with '<n>.'");
      int n = to_int(num.substr(0, num.size() - 1));
      if (n != expect)
        throw ParseError("expected step " + std::to_string(expect) +
                         ", got " + std::to_string(n));
      ++expect;

      std::string ftext;
      for (size_t k = 1; k < ltoks.size(); ++k) {
        if (!ftext.empty()) ftext += ' ';
        ftext += ltoks[k];
      }
      if (ftext.empty()) throw ParseError("step has no formula");

      ProofStep st;
      st.formula = parse_formula(sig, ftext, mode);
      st.just = parse_just(sig, split_ws(right), mode);
      p.steps.push_back(std::move(st));
    } catch (const ParseError& e) {
      if (e.line > 0) throw;
      throw ParseError(e.what(), line_no);
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!have_header) throw ParseError("proof file has no mode line");
  return p;
}

std::string print_proof(const Signature& sig, const Proof& p, BoxMode mode,
                        const std::string& hyps_file) {
  std::string out = "mode ";
  if (p.mode == ProofMode::Global) {
    out += "global";
  } else {
    out += "local " + sig.sort_name(p.local_sort);
  }
  if (!p.hyps.empty()) {
    if (hyps_file.empty())
      throw Error("print_proof: proof has hypotheses but no hyps file name");
    out += " hyps " + hyps_file;
  }
  if (!p.witnesses.empty()) {
    out += " witnesses";
    for (int w : p.witnesses) out += " " + std::to_string(w + 1);
  }
  out += "\n";
  for (size_t i = 0; i < p.steps.size(); ++i) {
    out += std::to_string(i + 1) + ". " +
           print_formula(sig, p.steps[i].formula, mode) + " ; " +
           print_just(sig, p.steps[i].just, mode) + "\n";
  }
  return out;
}

FormulaSet parse_formula_set(const Signature& sig, const std::string& text,
                             BoxMode mode) {
  FormulaSet out;
  for_each_line(text, [&](int, const std::vector<std::string>& toks) {
    std::string ftext;
    for (const std::string& t : toks) {
      if (!ftext.empty()) ftext += ' ';
      ftext += t;
    }
    out.push_back(parse_formula(sig, ftext, mode));
  });
  return out;
}

std::string print_formula_set(const Signature& sig, const FormulaSet& set,
                              BoxMode mode) {
  std::string out;
  for (const Formula& f : set) out += print_formula(sig, f, mode) + "\n";
  return out;
}

}  // namespace msml
