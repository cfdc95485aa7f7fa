// msml command-line front end. Exit codes: 0 = success, 1 = negative
// verdict (formula falsified, proof rejected, law violated, countermodel
// found, machine fault), 2 = usage or input errors. With --structured,
// every report line is one record of tab-separated key=value fields and
// starts with the record format version.

#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "msml/algebra/bao.hpp"
#include "msml/core/errors.hpp"
#include "msml/core/format.hpp"
#include "msml/core/text.hpp"
#include "msml/proof/transform.hpp"
#include "msml/semantics/model.hpp"
#include "msml/smc/smc.hpp"

namespace {

constexpr const char* kToolVersion = "msml 1.0.0";
constexpr const char* kFormatVersions =
    "formats record=1 msig=1 max=1 mpf=1 mfm=1 mmod=1 mba=1 smc=1";

bool g_structured = false;

using Fields = std::vector<std::pair<std::string, std::string>>;

void record(const Fields& fields) {
  std::string line = "v=1";
  for (const auto& [k, v] : fields) line += "\t" + k + "=" + v;
  std::printf("%s\n", line.c_str());
}

void say(const std::string& text, const Fields& fields) {
  if (g_structured)
    record(fields);
  else
    std::printf("%s\n", text.c_str());
}

// Usage/input failures abort the subcommand with exit code 2.
struct UsageError {
  std::string msg;
};

std::string slurp(const std::string& path) {
  try {
    return msml::read_file(path);
  } catch (const msml::Error& e) {
    throw UsageError{e.what()};
  }
}

std::string dir_of(const std::string& path) {
  auto cut = path.find_last_of('/');
  return cut == std::string::npos ? std::string(".") : path.substr(0, cut);
}

msml::BoxMode box_mode(const std::string& name) {
  if (name == "literal") return msml::BoxMode::Literal;
  if (name == "pdl") return msml::BoxMode::Pdl;
  throw UsageError{"unknown box mode '" + name + "' (literal or pdl)"};
}

msml::Signature load_sig(const std::string& path) {
  try {
    return msml::parse_signature(slurp(path));
  } catch (const msml::Error& e) {
    throw UsageError{path + ": " + e.what()};
  }
}

msml::AxiomSet load_axioms(const msml::Signature& sig, const std::string& path,
                           msml::BoxMode mode) {
  try {
    return msml::parse_axioms(sig, slurp(path), mode);
  } catch (const msml::Error& e) {
    throw UsageError{path + ": " + e.what()};
  }
}

msml::Model load_model(const msml::Signature& sig, const std::string& path) {
  try {
    return msml::parse_model(sig, slurp(path));
  } catch (const msml::Error& e) {
    throw UsageError{path + ": " + e.what()};
  }
}

msml::Proof load_proof(const msml::Signature& sig, const std::string& path,
                       msml::BoxMode mode) {
  try {
    std::string base = dir_of(path);
    auto loader = [&base](const std::string& name) {
      return msml::read_file(base + "/" + name);
    };
    return msml::parse_proof(sig, slurp(path), mode, loader);
  } catch (const msml::Error& e) {
    throw UsageError{path + ": " + e.what()};
  }
}

// Artifact emission for transform/derive results: OUT plus OUT.hyps when
// the proof carries hypotheses.
void write_proof(const msml::Signature& sig, const msml::Proof& p,
                 const std::string& out, msml::BoxMode mode) {
  std::string hyps_name;
  if (!p.hyps.empty()) {
    auto cut = out.find_last_of('/');
    hyps_name =
        (cut == std::string::npos ? out : out.substr(cut + 1)) + ".hyps";
    msml::write_file(out + ".hyps", msml::print_formula_set(sig, p.hyps, mode));
  }
  msml::write_file(out, msml::print_proof(sig, p, mode, hyps_name));
}

// ----- subcommand payloads -----

struct CommonOpts {
  std::string sig_path, axioms_path, box = "literal";
};

int cmd_parse(const CommonOpts& c, const std::string& formula_text,
              const std::string& file_path) {
  msml::Signature sig = load_sig(c.sig_path);
  msml::BoxMode mode = box_mode(c.box);
  std::string text = file_path.empty() ? formula_text : slurp(file_path);
  try {
    msml::Formula f = msml::parse_formula(sig, text, mode);
    msml::SortId s = msml::sort_of(sig, f);
    std::string printed = msml::print_formula(sig, f, mode);
    say(printed + " : " + sig.sort_name(s),
        {{"cmd", "parse"},
         {"ok", "true"},
         {"sort", sig.sort_name(s)},
         {"formula", printed}});
    return 0;
  } catch (const msml::Error& e) {
    say(std::string("rejected: ") + e.what(),
        {{"cmd", "parse"}, {"ok", "false"}, {"reason", e.what()}});
    return 1;
  }
}

int cmd_model_check(const CommonOpts& c, const std::string& model_path,
                    const std::string& formula_text,
                    const std::string& formulas_path,
                    const std::string& world_name, bool all_worlds) {
  msml::Signature sig = load_sig(c.sig_path);
  msml::BoxMode mode = box_mode(c.box);
  msml::Model model = load_model(sig, model_path);

  msml::FormulaSet formulas;
  std::vector<std::string> printed;
  try {
    if (!formulas_path.empty()) {
      formulas = msml::parse_formula_set(sig, slurp(formulas_path), mode);
    } else {
      formulas.push_back(msml::parse_formula(sig, formula_text, mode));
    }
  } catch (const msml::Error& e) {
    throw UsageError{e.what()};
  }
  for (const msml::Formula& f : formulas)
    printed.push_back(msml::print_formula(sig, f, mode));

  int world = -1;
  msml::SortId world_sort = -1;
  if (!world_name.empty()) {
    auto [s, w] = msml::find_world(sig, model, world_name);
    if (w < 0) throw UsageError{"unknown world '" + world_name + "'"};
    world_sort = s;
    world = w;
  }
  (void)all_worlds;  // default behavior; the flag exists for explicitness

  int rc = 0;
  for (size_t i = 0; i < formulas.size(); ++i) {
    const msml::Formula& f = formulas[i];
    if (world >= 0) {
      if (msml::sort_of(sig, f) != world_sort)
        throw UsageError{"world '" + world_name +
                         "' has a different sort than the formula"};
      bool ok = msml::satisfies(sig, model, world, f);
      if (!ok) rc = 1;
      say((ok ? "satisfied at " : "falsified at ") + world_name + ": " +
              printed[i],
          {{"cmd", "model-check"},
           {"formula", printed[i]},
           {"world", world_name},
           {"verdict", ok ? "true" : "false"}});
    } else {
      // report the first failing world, if any
      msml::SortId s = msml::sort_of(sig, f);
      int bad = -1;
      msml::Eval ev(sig, model);
      for (int w = 0; w < model.frame.world_counts[s]; ++w) {
        if (!ev.sat(w, f)) {
          bad = w;
          break;
        }
      }
      bool ok = bad < 0;
      if (!ok) rc = 1;
      std::string bad_name =
          ok ? "" : model.frame.world_names[s][static_cast<size_t>(bad)];
      say(ok ? "globally true: " + printed[i]
             : "falsified at world " + bad_name + ": " + printed[i],
          {{"cmd", "model-check"},
           {"formula", printed[i]},
           {"verdict", ok ? "true" : "false"},
           {"world", ok ? "-" : bad_name}});
    }
  }
  return rc;
}

int cmd_check_proof(const CommonOpts& c, const std::string& proof_path) {
  msml::Signature sig = load_sig(c.sig_path);
  msml::BoxMode mode = box_mode(c.box);
  msml::AxiomSet ax = load_axioms(sig, c.axioms_path, mode);
  msml::Proof p = load_proof(sig, proof_path, mode);
  msml::CheckResult r = msml::check_proof(sig, ax, p);
  if (r.ok) {
    std::string concl = msml::print_formula(sig, p.conclusion(), mode);
    say("accepted: " + concl,
        {{"cmd", "check-proof"},
         {"ok", "true"},
         {"steps", std::to_string(p.steps.size())},
         {"conclusion", concl}});
    return 0;
  }
  say("rejected at step " + std::to_string(r.step) + ": " + r.reason,
      {{"cmd", "check-proof"},
       {"ok", "false"},
       {"step", std::to_string(r.step)},
       {"reason", r.reason}});
  return 1;
}

int cmd_transform(const CommonOpts& c, const std::string& kind,
                  const std::string& proof_path, const std::string& phi_text,
                  const std::string& out_path) {
  msml::Signature sig = load_sig(c.sig_path);
  msml::BoxMode mode = box_mode(c.box);
  msml::AxiomSet ax = load_axioms(sig, c.axioms_path, mode);
  msml::Proof input = load_proof(sig, proof_path, mode);
  msml::CheckResult pre = msml::check_proof(sig, ax, input);
  if (!pre.ok)
    throw UsageError{"input proof rejected at step " +
                     std::to_string(pre.step) + ": " + pre.reason};

  msml::Formula phi;
  if (kind != "globalize") {
    if (phi_text.empty()) throw UsageError{"--phi is required for " + kind};
    try {
      phi = msml::parse_formula(sig, phi_text, mode);
    } catch (const msml::Error& e) {
      throw UsageError{e.what()};
    }
  }

  msml::Proof result;
  std::vector<msml::GammaChain> witnesses;
  try {
    if (kind == "dt-local") {
      result = msml::dt_local(sig, ax, input, phi);
    } else if (kind == "globalize") {
      msml::GlobalizeResult g = msml::globalize(sig, ax, input);
      result = std::move(g.local_proof);
      witnesses = std::move(g.witnesses);
    } else {
      msml::DtGlobalResult g = msml::dt_global(sig, ax, input, phi);
      result = std::move(g.global_proof);
      witnesses = std::move(g.witnesses);
    }
  } catch (const msml::Error& e) {
    throw UsageError{e.what()};
  }

  msml::CheckResult post = msml::check_proof(sig, ax, result);
  std::string concl =
      post.ok ? msml::print_formula(sig, result.conclusion(), mode) : "";
  say(post.ok ? "transformed: " + concl
              : "transform output rejected at step " +
                    std::to_string(post.step) + ": " + post.reason,
      {{"cmd", "transform"},
       {"kind", kind},
       {"ok", post.ok ? "true" : "false"},
       {"steps", std::to_string(result.steps.size())},
       {"conclusion", concl}});
  for (const msml::GammaChain& w : witnesses) {
    say("witness: " + msml::print_formula(sig, w.witness, mode) +
            "  (core " + msml::print_formula(sig, w.core, mode) + ", " +
            std::to_string(w.layers.size()) + " layers)",
        {{"cmd", "transform"},
         {"witness", msml::print_formula(sig, w.witness, mode)},
         {"core", msml::print_formula(sig, w.core, mode)},
         {"layers", std::to_string(w.layers.size())}});
  }
  if (!out_path.empty()) write_proof(sig, result, out_path, mode);
  return post.ok ? 0 : 1;
}

int cmd_gamma(const CommonOpts& c, const std::string& gamma_path,
              const std::string& pool_path, int depth) {
  msml::Signature sig = load_sig(c.sig_path);
  msml::BoxMode mode = box_mode(c.box);
  msml::FormulaSet pool;
  std::vector<msml::FormulaSet> gamma0(
      static_cast<size_t>(sig.sort_count()));
  try {
    for (const msml::Formula& f :
         msml::parse_formula_set(sig, slurp(gamma_path), mode))
      gamma0[static_cast<size_t>(msml::sort_of(sig, f))].push_back(f);
    if (!pool_path.empty())
      pool = msml::parse_formula_set(sig, slurp(pool_path), mode);
  } catch (const msml::Error& e) {
    throw UsageError{e.what()};
  }

  std::vector<std::vector<msml::FormulaSet>> levels;
  try {
    levels = msml::gamma_closure(sig, gamma0, pool, depth);
  } catch (const msml::Error& e) {
    throw UsageError{e.what()};
  }
  const std::vector<msml::FormulaSet>& final_level = levels.back();
  for (msml::SortId s = 0; s < sig.sort_count(); ++s) {
    for (const msml::Formula& f : final_level[static_cast<size_t>(s)]) {
      std::string printed = msml::print_formula(sig, f, mode);
      say(sig.sort_name(s) + ": " + printed,
          {{"cmd", "gamma"},
           {"depth", std::to_string(depth)},
           {"sort", sig.sort_name(s)},
           {"formula", printed}});
    }
  }
  return 0;
}

int cmd_derive(const CommonOpts& c, const std::string& kind,
               const std::string& op_name, int pos1,
               const std::vector<std::string>& side_texts,
               const std::string& premise_path, const std::string& x_text,
               const std::string& y_text, const std::string& out_path) {
  msml::Signature sig = load_sig(c.sig_path);
  msml::BoxMode mode = box_mode(c.box);
  msml::AxiomSet ax = load_axioms(sig, c.axioms_path, mode);

  msml::OpId op = sig.find_op(op_name);
  if (op < 0) throw UsageError{"unknown operator '" + op_name + "'"};
  int arity = sig.op(op).arity();
  if (pos1 < 1 || pos1 > arity)
    throw UsageError{"--pos out of range for " + op_name};
  int pos = pos1 - 1;
  if (static_cast<int>(side_texts.size()) != arity - 1)
    throw UsageError{"expected " + std::to_string(arity - 1) +
                     " --side formulas for " + op_name};

  std::vector<msml::Formula> sides;
  msml::Formula x, y;
  msml::Proof premise;
  try {
    for (const std::string& t : side_texts)
      sides.push_back(msml::parse_formula(sig, t, mode));
    if (kind == "mono" || kind == "cong") {
      if (premise_path.empty())
        throw UsageError{"--premise proof is required for " + kind};
      premise = load_proof(sig, premise_path, mode);
    } else {
      if (x_text.empty() || y_text.empty())
        throw UsageError{"--x and --y are required for " + kind};
      x = msml::parse_formula(sig, x_text, mode);
      y = msml::parse_formula(sig, y_text, mode);
    }
  } catch (const msml::Error& e) {
    throw UsageError{e.what()};
  }

  msml::Proof result;
  try {
    if (kind == "mono")
      result = msml::derive_mono(sig, ax, op, pos, sides, premise);
    else if (kind == "box-conj")
      result = msml::derive_box_conj(sig, ax, op, pos, sides, x, y);
    else if (kind == "dia-disj")
      result = msml::derive_dia_disj(sig, ax, op, pos, sides, x, y);
    else
      result = msml::derive_cong(sig, ax, op, pos, sides, premise);
  } catch (const msml::Error& e) {
    throw UsageError{e.what()};
  }

  msml::CheckResult post = msml::check_proof(sig, ax, result);
  std::string concl =
      post.ok ? msml::print_formula(sig, result.conclusion(), mode) : "";
  say(post.ok ? "derived: " + concl
              : "derived proof rejected at step " + std::to_string(post.step) +
                    ": " + post.reason,
      {{"cmd", "derive"},
       {"kind", kind},
       {"ok", post.ok ? "true" : "false"},
       {"steps", std::to_string(result.steps.size())},
       {"conclusion", concl}});
  if (!out_path.empty()) write_proof(sig, result, out_path, mode);
  return post.ok ? 0 : 1;
}

int cmd_bao_check(const CommonOpts& c, const std::string& algebra_path,
                  std::uint64_t seed) {
  msml::Signature sig = load_sig(c.sig_path);
  msml::Bao b;
  try {
    b = msml::parse_bao(sig, slurp(algebra_path));
  } catch (const msml::Error& e) {
    throw UsageError{algebra_path + ": " + e.what()};
  }
  msml::BaoVerdict v = msml::check_bao(sig, b, seed);
  say(v.ok ? "ok" : "violated: " + v.reason,
      {{"cmd", "bao-check"},
       {"ok", v.ok ? "true" : "false"},
       {"reason", v.ok ? "-" : v.reason}});
  return v.ok ? 0 : 1;
}

int cmd_jt(const CommonOpts& c, const std::string& algebra_path) {
  msml::Signature sig = load_sig(c.sig_path);
  msml::Bao b;
  try {
    b = msml::parse_bao(sig, slurp(algebra_path));
  } catch (const msml::Error& e) {
    throw UsageError{algebra_path + ": " + e.what()};
  }
  msml::BaoVerdict laws = msml::check_bao(sig, b);
  if (!laws.ok) {
    say("refusing to embed: " + laws.reason,
        {{"cmd", "jt"}, {"ok", "false"}, {"reason", laws.reason}});
    return 1;
  }
  // the embedding target: per sort, atom a of the input maps to the set of
  // ultrafilters containing a; on a finite powerset algebra that is the
  // principal ultrafilter at a, so the map is atom i -> {i} in table order
  for (msml::SortId s = 0; s < sig.sort_count(); ++s) {
    say("sort " + sig.sort_name(s) + ": " + std::to_string(b.atoms[s]) +
            " atoms -> " + std::to_string(b.atoms[s]) + " ultrafilters",
        {{"cmd", "jt"},
         {"sort", sig.sort_name(s)},
         {"atoms", std::to_string(b.atoms[s])},
         {"ultrafilters", std::to_string(b.atoms[s])}});
  }
  msml::BaoVerdict v = msml::jt_check(sig, b);
  say(v.ok ? "embedding ok" : "embedding failed: " + v.reason,
      {{"cmd", "jt"},
       {"ok", v.ok ? "true" : "false"},
       {"reason", v.ok ? "-" : v.reason}});
  return v.ok ? 0 : 1;
}

int cmd_smc_run(const std::string& program_path, const std::string& mem_text,
                int budget) {
  msml::smc::StmtPtr program;
  try {
    program = msml::smc::parse_program(slurp(program_path));
  } catch (const msml::Error& e) {
    throw UsageError{program_path + ": " + e.what()};
  }
  std::map<std::string, long long> initial;
  if (!mem_text.empty()) {
    for (const std::string& part : msml::split_ws(
             [&] {
               std::string t = mem_text;
               for (char& ch : t)
                 if (ch == ',') ch = ' ';
               return t;
             }())) {
      auto eq = part.find('=');
      if (eq == std::string::npos || eq == 0)
        throw UsageError{"--mem expects name=value pairs, got '" + part + "'"};
      try {
        initial[part.substr(0, eq)] = std::stoll(part.substr(eq + 1));
      } catch (const std::exception&) {
        throw UsageError{"--mem expects name=value pairs, got '" + part + "'"};
      }
    }
  }

  msml::smc::SmcRunResult run;
  try {
    run = msml::smc::smc_run(program, initial, budget);
  } catch (const msml::Error& e) {
    throw UsageError{e.what()};
  }

  say("steps " + std::to_string(run.steps_used) + ", visited " +
          std::to_string(run.visited.size()) + ", blocked " +
          std::to_string(run.blocked.size()),
      {{"cmd", "smc-run"},
       {"steps", std::to_string(run.steps_used)},
       {"visited", std::to_string(run.visited.size())},
       {"blocked", std::to_string(run.blocked.size())},
       {"finals", std::to_string(run.finals.size())},
       {"faults", std::to_string(run.faults.size())},
       {"budget_exceeded", run.budget_exceeded ? "true" : "false"}});
  for (const auto& f : run.finals)
    say("final " + msml::smc::print_config(f),
        {{"cmd", "smc-run"}, {"final", msml::smc::print_config(f)}});
  for (const auto& msg : run.faults)
    say("fault " + msg, {{"cmd", "smc-run"}, {"fault", msg}});
  if (run.budget_exceeded)
    say("budget exceeded", {{"cmd", "smc-run"}, {"stuck", "budget"}});
  if (run.finals.empty() && !run.budget_exceeded && run.faults.empty())
    say("stuck: no run reaches an empty control",
        {{"cmd", "smc-run"}, {"stuck", "blocked"}});
  return (!run.faults.empty() || run.budget_exceeded || run.finals.empty())
             ? 1
             : 0;
}

int cmd_smc_verify(int budget) {
  msml::Signature sig = msml::smc::smc_signature();
  msml::AxiomSet ax = msml::smc::smc_axioms(sig);

  msml::Proof p = msml::smc::elaborate_pgm_proof();
  msml::CheckResult pr = msml::check_proof(sig, ax, p);
  std::string concl = msml::print_formula(sig, p.conclusion(), msml::BoxMode::Pdl);
  say((pr.ok ? "program proof ok, " : "program proof REJECTED, ") +
          std::to_string(p.steps.size()) + " steps",
      {{"cmd", "smc-verify"},
       {"phase", "program-proof"},
       {"ok", pr.ok ? "true" : "false"},
       {"steps", std::to_string(p.steps.size())}});
  say("conclusion: " + concl,
      {{"cmd", "smc-verify"}, {"conclusion", concl}});

  msml::Proof q = msml::smc::mem_get_theorem();
  msml::CheckResult qr = msml::check_proof(sig, ax, q);
  say(qr.ok ? "memory read theorem ok" : "memory read theorem REJECTED",
      {{"cmd", "smc-verify"},
       {"phase", "memory-theorem"},
       {"ok", qr.ok ? "true" : "false"}});

  msml::smc::StmtPtr pgm = msml::smc::parse_program(msml::smc::pgm_source());
  msml::smc::TermModel tm;
  try {
    tm = msml::smc::build_term_model(sig, pgm, {}, budget);
  } catch (const msml::Error& e) {
    throw UsageError{e.what()};
  }
  msml::smc::CoherenceReport rep = msml::smc::check_axiom_coherence(sig, ax, tm);
  say("axiom coherence: checked " + std::to_string(rep.checked) +
          ", out of scope " + std::to_string(rep.out_of_scope) +
          ", loop-truncated " + std::to_string(rep.star_skipped) +
          ", failed " + std::to_string(rep.failed),
      {{"cmd", "smc-verify"},
       {"phase", "coherence"},
       {"checked", std::to_string(rep.checked)},
       {"out_of_scope", std::to_string(rep.out_of_scope)},
       {"star_skipped", std::to_string(rep.star_skipped)},
       {"failed", std::to_string(rep.failed)}});
  for (const std::string& f : rep.failures)
    say("coherence failure: " + f,
        {{"cmd", "smc-verify"}, {"failure", f}});

  bool ok = pr.ok && qr.ok && rep.ok();
  say(ok ? "verify ok" : "verify FAILED",
      {{"cmd", "smc-verify"}, {"ok", ok ? "true" : "false"}});
  return ok ? 0 : 1;
}

int cmd_enumerate(const CommonOpts& c, const std::string& refute_text,
                  int max_worlds) {
  msml::Signature sig = load_sig(c.sig_path);
  msml::BoxMode mode = box_mode(c.box);
  msml::Formula f;
  try {
    f = msml::parse_formula(sig, refute_text, mode);
  } catch (const msml::Error& e) {
    throw UsageError{e.what()};
  }
  std::string printed = msml::print_formula(sig, f, mode);
  std::vector<msml::VarId> pool = msml::free_vars(f);

  msml::ModelEnumerator en(sig, max_worlds, pool);
  msml::Model m;
  long long models = 0;
  msml::SortId s = msml::sort_of(sig, f);
  while (en.next(&m)) {
    ++models;
    msml::Eval ev(sig, m);
    for (int w = 0; w < m.frame.world_counts[s]; ++w) {
      if (!ev.sat(w, f)) {
        say("countermodel found after " + std::to_string(models) +
                " models, falsified at world " +
                m.frame.world_names[s][static_cast<size_t>(w)],
            {{"cmd", "enumerate"},
             {"formula", printed},
             {"refuted", "true"},
             {"models", std::to_string(models)},
             {"world", m.frame.world_names[s][static_cast<size_t>(w)]}});
        if (!g_structured) std::printf("%s", msml::print_model(sig, m).c_str());
        return 1;
      }
    }
  }
  say("no countermodel with up to " + std::to_string(max_worlds) +
          " worlds per sort (" + std::to_string(models) + " models)",
      {{"cmd", "enumerate"},
       {"formula", printed},
       {"refuted", "false"},
       {"models", std::to_string(models)},
       {"max_worlds", std::to_string(max_worlds)}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"many-sorted modal logic toolkit"};
  app.fallthrough();  // global flags are accepted after the subcommand too
  app.set_version_flag("--version",
                       std::string(kToolVersion) + "\n" + kFormatVersions);
  app.add_flag("--structured", g_structured,
               "line-delimited key=value records instead of prose");
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "seed for randomized spot checks");
  app.require_subcommand(1);

  CommonOpts c;
  std::string formula_text, file_path, model_path, formulas_path, world_name;
  std::string proof_path, phi_text, out_path, gamma_path, pool_path;
  std::string algebra_path, program_path, mem_text, refute_text;
  std::string derive_op, transform_kind, derive_kind;
  std::vector<std::string> side_texts;
  bool all_worlds = false, box_literal = false;
  int depth = 1, pos1 = 1, budget = 10000, max_worlds = 3;

  auto add_sig = [&](CLI::App* s) {
    s->add_option("--sig", c.sig_path, "signature file (.msig)")->required();
    s->add_option("--box", c.box, "box notation: literal|pdl");
  };
  auto add_axioms = [&](CLI::App* s) {
    s->add_option("--axioms", c.axioms_path, "axiom file (.max)")->required();
  };

  CLI::App* sc_parse = app.add_subcommand("parse", "parse and echo a formula");
  add_sig(sc_parse);
  sc_parse->add_option("--formula", formula_text, "formula text");
  sc_parse->add_option("--file", file_path, "file holding one formula");

  CLI::App* sc_mc =
      app.add_subcommand("model-check", "evaluate formulas on a model");
  add_sig(sc_mc);
  sc_mc->add_option("--model", model_path, "model file (.mmod)")->required();
  sc_mc->add_option("--formula", formula_text, "formula text");
  sc_mc->add_option("--formulas", formulas_path, "formula set file (.mfm)");
  sc_mc->add_option("--world", world_name, "check at one named world");
  sc_mc->add_flag("--all-worlds", all_worlds, "check at every world (default)");

  CLI::App* sc_cp =
      app.add_subcommand("check-proof", "validate a proof file");
  add_sig(sc_cp);
  add_axioms(sc_cp);
  sc_cp->add_option("--proof", proof_path, "proof file (.mpf)")->required();

  CLI::App* sc_tr = app.add_subcommand(
      "transform", "hypothesis transforms: dt-local, globalize, dt-global");
  add_sig(sc_tr);
  add_axioms(sc_tr);
  sc_tr->add_option("kind", transform_kind, "dt-local|globalize|dt-global")
      ->required()
      ->check(CLI::IsMember({"dt-local", "globalize", "dt-global"}));
  sc_tr->add_option("--proof", proof_path, "input proof (.mpf)")->required();
  sc_tr->add_option("--phi", phi_text, "hypothesis to move");
  sc_tr->add_option("--out", out_path, "write the transformed proof here");

  CLI::App* sc_ga =
      app.add_subcommand("gamma", "boxed closure of a hypothesis set");
  add_sig(sc_ga);
  sc_ga->add_option("--gamma", gamma_path, "hypotheses (.mfm)")->required();
  sc_ga->add_option("--pool", pool_path, "side formula pool (.mfm)");
  sc_ga->add_option("--depth", depth, "closure depth")->required();

  CLI::App* sc_de = app.add_subcommand(
      "derive", "generated theorems: mono, box-conj, dia-disj, cong");
  add_sig(sc_de);
  add_axioms(sc_de);
  sc_de->add_option("kind", derive_kind, "mono|box-conj|dia-disj|cong")
      ->required()
      ->check(CLI::IsMember({"mono", "box-conj", "dia-disj", "cong"}));
  sc_de->add_option("--op", derive_op, "operator name")->required();
  sc_de->add_option("--pos", pos1, "argument position, 1-based")->required();
  sc_de->add_option("--side", side_texts, "side formula per other position");
  sc_de->add_option("--premise", proof_path, "premise proof (.mpf)");
  sc_de->add_option("--x", formula_text, "left formula");
  sc_de->add_option("--y", file_path, "right formula");
  sc_de->add_option("--out", out_path, "write the derived proof here");

  CLI::App* sc_bc = app.add_subcommand("bao-check", "operator law check");
  add_sig(sc_bc);
  sc_bc->add_option("--algebra", algebra_path, "algebra file (.mba)")
      ->required();

  CLI::App* sc_jt =
      app.add_subcommand("jt", "ultrafilter-frame embedding check");
  add_sig(sc_jt);
  sc_jt->add_option("--algebra", algebra_path, "algebra file (.mba)")
      ->required();

  CLI::App* sc_smc = app.add_subcommand("smc", "stack machine tooling");
  sc_smc->require_subcommand(1);
  CLI::App* sc_run = sc_smc->add_subcommand("run", "execute a program");
  sc_run->add_option("program", program_path, "program file (.smc)")
      ->required();
  sc_run->add_option("--mem", mem_text, "initial memory, name=value pairs");
  sc_run->add_option("--budget", budget, "expansion budget");
  CLI::App* sc_ver = sc_smc->add_subcommand(
      "verify", "check the bundled program proof and axiom coherence");
  sc_ver->add_option("--budget", budget, "expansion budget");
  CLI::App* sc_ax =
      sc_smc->add_subcommand("axioms", "print the machine axioms");
  sc_ax->add_flag("--box-literal", box_literal,
                  "print boxes in literal dual notation");

  CLI::App* sc_en =
      app.add_subcommand("enumerate", "bounded countermodel search");
  add_sig(sc_en);
  sc_en->add_option("--refute", refute_text, "formula to refute")->required();
  sc_en->add_option("--max-worlds", max_worlds, "worlds per sort bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return dynamic_cast<const CLI::Success*>(&e) ? code : 2;
  }

  try {
    if (sc_parse->parsed()) {
      if (formula_text.empty() == file_path.empty())
        throw UsageError{"exactly one of --formula / --file"};
      return cmd_parse(c, formula_text, file_path);
    }
    if (sc_mc->parsed()) {
      if (formula_text.empty() == formulas_path.empty())
        throw UsageError{"exactly one of --formula / --formulas"};
      if (!world_name.empty() && all_worlds)
        throw UsageError{"--world and --all-worlds are exclusive"};
      return cmd_model_check(c, model_path, formula_text, formulas_path,
                             world_name, all_worlds);
    }
    if (sc_cp->parsed()) return cmd_check_proof(c, proof_path);
    if (sc_tr->parsed())
      return cmd_transform(c, transform_kind, proof_path, phi_text, out_path);
    if (sc_ga->parsed()) return cmd_gamma(c, gamma_path, pool_path, depth);
    if (sc_de->parsed())
      return cmd_derive(c, derive_kind, derive_op, pos1, side_texts,
                        proof_path, formula_text, file_path, out_path);
    if (sc_bc->parsed()) return cmd_bao_check(c, algebra_path, seed);
    if (sc_jt->parsed()) return cmd_jt(c, algebra_path);
    if (sc_run->parsed()) return cmd_smc_run(program_path, mem_text, budget);
    if (sc_ver->parsed()) return cmd_smc_verify(budget);
    if (sc_ax->parsed()) {
      msml::Signature sig = msml::smc::smc_signature();
      std::printf("%s", msml::print_axioms(
                            msml::smc::smc_axioms(sig),
                            box_literal ? msml::BoxMode::Literal
                                        : msml::BoxMode::Pdl)
                            .c_str());
      return 0;
    }
    if (sc_en->parsed()) return cmd_enumerate(c, refute_text, max_worlds);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "msml: %s\n", e.msg.c_str());
    return 2;
  } catch (const msml::Error& e) {
    std::fprintf(stderr, "msml: %s\n", e.what());
    return 2;
  }
  return 2;
}
