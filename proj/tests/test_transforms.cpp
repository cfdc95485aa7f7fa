#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "msml/core/errors.hpp"
#include "msml/proof/axioms.hpp"
#include "msml/proof/builder.hpp"
#include "msml/proof/derive.hpp"
#include "msml/proof/proof.hpp"
#include "msml/proof/transform.hpp"
#include "msml/semantics/model.hpp"

using namespace msml;

namespace {

Formula fv(const Signature& sig, const std::string& name) {
  return Formula::var(sig.var_id(name));
}

// Local proof of (p & q) -> q over hypotheses {p, q}, both as witnesses.
Proof pair_elim(const Signature& sig) {
  Formula p = fv(sig, "p"), q = fv(sig, "q");
  Proof lp;
  lp.mode = ProofMode::Local;
  lp.local_sort = sig.sort_id("u");
  lp.hyps = {p, q};
  lp.witnesses = {0, 1};
  ProofStep s;
  s.formula = Formula::impl(Formula::conj(p, q), q);
  s.just.kind = Justification::Taut;
  lp.steps.push_back(s);
  return lp;
}

// Global proof of p & q from hypotheses {p, q} via pairing and detachment.
Proof pair_intro(const Signature& sig) {
  Formula p = fv(sig, "p"), q = fv(sig, "q");
  ProofBuilder b(sig, ProofMode::Global);
  int hp = b.hyp(p);
  int hq = b.hyp(q);
  int t = b.taut(Formula::impl(p, Formula::impl(q, Formula::conj(p, q))));
  int m1 = b.mp(t, hp);
  int m2 = b.mp(m1, hq);
  return b.finish(m2);
}

}  // namespace

TEST_CASE("moving a witness into the conclusion") {
  Signature sig = testing::small_sig();
  AxiomSet ax = parse_axioms(sig, "basis standard\n");
  Formula p = fv(sig, "p"), q = fv(sig, "q");
  Proof lp = pair_elim(sig);
  REQUIRE(check_proof(sig, ax, lp).ok);

  Proof d1 = dt_local(sig, ax, lp, p);
  CHECK(check_proof(sig, ax, d1).ok);
  CHECK(d1.conclusion() == Formula::impl(q, Formula::impl(p, q)));
  CHECK(d1.witnesses == std::vector<int>{1});
  CHECK(d1.hyps == lp.hyps);

  Proof d2 = dt_local(sig, ax, lp, q);
  CHECK(check_proof(sig, ax, d2).ok);
  CHECK(d2.conclusion() == Formula::impl(p, Formula::impl(q, q)));
  CHECK(d2.witnesses == std::vector<int>{0});

  // Absent phi only weakens.
  Formula fp = Formula::app(sig.op_id("f"), {p});
  Proof d3 = dt_local(sig, ax, lp, fp);
  CHECK(check_proof(sig, ax, d3).ok);
  CHECK(d3.conclusion() ==
        Formula::impl(Formula::conj(p, q), Formula::impl(fp, q)));
  CHECK(d3.witnesses == lp.witnesses);

  // No witnesses at all: plain weakening of a theorem.
  Proof th;
  th.mode = ProofMode::Local;
  th.local_sort = sig.sort_id("u");
  ProofStep s;
  s.formula = Formula::impl(p, p);
  s.just.kind = Justification::Taut;
  th.steps.push_back(s);
  Proof d4 = dt_local(sig, ax, th, q);
  CHECK(check_proof(sig, ax, d4).ok);
  CHECK(d4.conclusion() == Formula::impl(q, Formula::impl(p, p)));
  CHECK(d4.witnesses.empty());

  CHECK_THROWS_AS(dt_local(sig, ax, pair_intro(sig), p), Error);
  CHECK_THROWS_AS(dt_local(sig, ax, lp, fv(sig, "r")), Error);
}

TEST_CASE("moving an antecedent back into the witnesses") {
  Signature sig = testing::small_sig();
  AxiomSet ax = parse_axioms(sig, "basis standard\n");
  Formula p = fv(sig, "p"), q = fv(sig, "q");
  Proof lp = pair_elim(sig);

  Proof d1 = dt_local(sig, ax, lp, p);
  Proof r1 = dt_local_intro(sig, ax, d1, p);
  CHECK(check_proof(sig, ax, r1).ok);
  // phi rejoins at the end, so the nesting order flips.
  CHECK(r1.conclusion() == Formula::impl(Formula::conj(q, p), q));
  CHECK(r1.witnesses == std::vector<int>{1, 0});
  CHECK(r1.hyps == lp.hyps);

  // phi that already is a witness is reused, not duplicated.
  Proof contract;
  contract.mode = ProofMode::Local;
  contract.local_sort = sig.sort_id("u");
  contract.hyps = {p};
  contract.witnesses = {0};
  ProofStep s;
  s.formula = Formula::impl(p, Formula::impl(p, p));
  s.just.kind = Justification::Taut;
  contract.steps.push_back(s);
  REQUIRE(check_proof(sig, ax, contract).ok);
  Proof r2 = dt_local_intro(sig, ax, contract, p);
  CHECK(check_proof(sig, ax, r2).ok);
  CHECK(r2.conclusion() == Formula::impl(p, p));
  CHECK(r2.witnesses == std::vector<int>{0});

  // phi missing from the hypothesis pool is appended to it.
  Proof th;
  th.mode = ProofMode::Local;
  th.local_sort = sig.sort_id("u");
  ProofStep t;
  t.formula = Formula::impl(q, q);
  t.just.kind = Justification::Taut;
  th.steps.push_back(t);
  Proof r3 = dt_local_intro(sig, ax, th, q);
  CHECK(check_proof(sig, ax, r3).ok);
  CHECK(r3.hyps == FormulaSet{q});
  CHECK(r3.witnesses == std::vector<int>{0});
  CHECK(r3.conclusion() == Formula::impl(q, q));

  // The conclusion must actually start with phi.
  CHECK_THROWS_AS(dt_local_intro(sig, ax, th, fv(sig, "p")), Error);
}

TEST_CASE("globalize pushes hypotheses through boxing") {
  Signature sig = testing::small_sig();
  AxiomSet ax = parse_axioms(sig, "basis standard\n");
  Formula p = fv(sig, "p");
  OpId f = sig.op_id("f");

  ProofBuilder b(sig, ProofMode::Global);
  int h = b.hyp(p);
  int u = b.ug(f, 0, {}, h);
  Proof input = b.finish(u);
  REQUIRE(check_proof(sig, ax, input).ok);

  GlobalizeResult r = globalize(sig, ax, input);
  Formula bp = box_at(sig, f, 0, {}, p);
  CHECK(check_proof(sig, ax, r.local_proof).ok);
  CHECK(r.local_proof.mode == ProofMode::Local);
  CHECK(r.local_proof.local_sort == sig.sort_id("u"));
  CHECK(r.local_proof.hyps == FormulaSet{bp});
  CHECK(r.local_proof.witnesses == std::vector<int>{0});
  CHECK(r.local_proof.conclusion() == Formula::impl(bp, bp));
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0].core == p);
  CHECK(r.witnesses[0].witness == bp);
  REQUIRE(r.witnesses[0].layers.size() == 1);
  CHECK(r.witnesses[0].layers[0].op == f);
  CHECK(verify_chain(sig, r.witnesses[0]));

  Proof back = globalize_undo(sig, ax, r);
  CHECK(check_proof(sig, ax, back).ok);
  CHECK(back.mode == ProofMode::Global);
  CHECK(back.conclusion() == input.conclusion());
  CHECK(back.hyps == FormulaSet{p});
}

TEST_CASE("globalize through detachment keeps both hypotheses") {
  Signature sig = testing::small_sig();
  AxiomSet ax = parse_axioms(sig, "basis standard\n");
  Formula p = fv(sig, "p"), q = fv(sig, "q");
  Proof input = pair_intro(sig);
  REQUIRE(check_proof(sig, ax, input).ok);

  GlobalizeResult r = globalize(sig, ax, input);
  CHECK(check_proof(sig, ax, r.local_proof).ok);
  CHECK(r.local_proof.hyps == FormulaSet{p, q});
  CHECK(r.local_proof.conclusion() ==
        Formula::impl(Formula::conj(p, q), Formula::conj(p, q)));
  REQUIRE(r.witnesses.size() == 2);
  CHECK(r.witnesses[0].layers.empty());
  CHECK(r.witnesses[1].layers.empty());

  Proof back = globalize_undo(sig, ax, r);
  CHECK(check_proof(sig, ax, back).ok);
  CHECK(back.conclusion() == Formula::conj(p, q));
  CHECK(back.hyps == FormulaSet{p, q});
}

TEST_CASE("globalize stacks boxing layers") {
  Signature sig = testing::small_sig();
  AxiomSet ax = parse_axioms(sig, "basis standard\n");
  Formula p = fv(sig, "p"), s = fv(sig, "s");
  OpId f = sig.op_id("f"), g = sig.op_id("g");

  ProofBuilder b(sig, ProofMode::Global);
  int h = b.hyp(p);
  int u1 = b.ug(f, 0, {}, h);
  int u2 = b.ug(g, 0, {s}, u1);
  Proof input = b.finish(u2);
  REQUIRE(check_proof(sig, ax, input).ok);

  GlobalizeResult r = globalize(sig, ax, input);
  Formula w = box_at(sig, g, 0, {s}, box_at(sig, f, 0, {}, p));
  CHECK(r.local_proof.local_sort == sig.sort_id("v"));
  CHECK(check_proof(sig, ax, r.local_proof).ok);
  CHECK(r.local_proof.hyps == FormulaSet{w});
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0].core == p);
  REQUIRE(r.witnesses[0].layers.size() == 2);
  CHECK(fold_chain(sig, p, r.witnesses[0].layers) == w);
  CHECK(verify_chain(sig, r.witnesses[0]));

  Proof back = globalize_undo(sig, ax, r);
  CHECK(check_proof(sig, ax, back).ok);
  CHECK(back.conclusion() == input.conclusion());
  CHECK(back.hyps == FormulaSet{p});
}

TEST_CASE("globalize of a plain theorem needs no witnesses") {
  Signature sig = testing::small_sig();
  AxiomSet ax = parse_axioms(sig, "basis standard\n");
  Formula p = fv(sig, "p");
  Proof input = testing::taut_theorem(sig, Formula::impl(p, p));

  GlobalizeResult r = globalize(sig, ax, input);
  CHECK(r.witnesses.empty());
  CHECK(r.local_proof.hyps.empty());
  CHECK(r.local_proof.conclusion() == input.conclusion());
  CHECK(check_proof(sig, ax, r.local_proof).ok);

  Proof back = globalize_undo(sig, ax, r);
  CHECK(check_proof(sig, ax, back).ok);
  CHECK(back.hyps.empty());
  CHECK(back.conclusion() == input.conclusion());

  CHECK_THROWS_AS(globalize(sig, ax, pair_elim(sig)), Error);
  AxiomSet alt = parse_axioms(sig, "basis alternative\n");
  CHECK_THROWS_AS(globalize(sig, alt, input), Error);
}

TEST_CASE("global deduction singles out one hypothesis") {
  Signature sig = testing::small_sig();
  AxiomSet ax = parse_axioms(sig, "basis standard\n");
  Formula p = fv(sig, "p"), q = fv(sig, "q");

  ProofBuilder b0(sig, ProofMode::Global);
  Proof tiny = b0.finish(b0.hyp(p));
  DtGlobalResult r0 = dt_global(sig, ax, tiny, p);
  CHECK(check_proof(sig, ax, r0.global_proof).ok);
  CHECK(r0.global_proof.hyps.empty());
  CHECK(r0.global_proof.conclusion() == Formula::impl(p, p));
  REQUIRE(r0.witnesses.size() == 1);
  CHECK(r0.witnesses[0].core == p);
  CHECK(r0.witnesses[0].layers.empty());
  Proof u0 = dt_global_undo(sig, ax, r0, p);
  CHECK(check_proof(sig, ax, u0).ok);
  CHECK(u0.conclusion() == p);
  CHECK(u0.hyps == FormulaSet{p});

  Proof input = pair_intro(sig);
  DtGlobalResult r1 = dt_global(sig, ax, input, p);
  CHECK(check_proof(sig, ax, r1.global_proof).ok);
  CHECK(r1.global_proof.hyps == FormulaSet{q});
  CHECK(r1.global_proof.conclusion() ==
        Formula::impl(p, Formula::conj(p, q)));
  REQUIRE(r1.witnesses.size() == 1);
  Proof u1 = dt_global_undo(sig, ax, r1, p);
  CHECK(check_proof(sig, ax, u1).ok);
  CHECK(u1.conclusion() == Formula::conj(p, q));
  CHECK(u1.hyps == FormulaSet{q, p});

  // A hypothesis reaching the conclusion through boxing.
  ProofBuilder b2(sig, ProofMode::Global);
  int u = b2.ug(sig.op_id("f"), 0, {}, b2.hyp(p));
  Proof boxed = b2.finish(u);
  DtGlobalResult r2 = dt_global(sig, ax, boxed, p);
  Formula bp = box_at(sig, sig.op_id("f"), 0, {}, p);
  CHECK(check_proof(sig, ax, r2.global_proof).ok);
  CHECK(r2.global_proof.conclusion() == Formula::impl(bp, bp));
  REQUIRE(r2.witnesses.size() == 1);
  CHECK(r2.witnesses[0].witness == bp);
  Proof u2 = dt_global_undo(sig, ax, r2, p);
  CHECK(check_proof(sig, ax, u2).ok);
  CHECK(u2.conclusion() == boxed.conclusion());

  // phi that no step cites leaves the proof alone.
  DtGlobalResult r3 = dt_global(sig, ax, input, fv(sig, "r"));
  CHECK(r3.witnesses.empty());
  CHECK(r3.global_proof.conclusion() == input.conclusion());
  CHECK(check_proof(sig, ax, r3.global_proof).ok);

  AxiomSet alt = parse_axioms(sig, "basis alternative\n");
  CHECK_THROWS_AS(dt_global(sig, alt, input, p), Error);
  CHECK_THROWS_AS(dt_global(sig, ax, pair_elim(sig), p), Error);
}

TEST_CASE("tampered witness records are rejected") {
  Signature sig = testing::small_sig();
  AxiomSet ax = parse_axioms(sig, "basis standard\n");
  Formula p = fv(sig, "p");

  ProofBuilder b(sig, ProofMode::Global);
  Proof input = b.finish(b.ug(sig.op_id("f"), 0, {}, b.hyp(p)));
  GlobalizeResult r = globalize(sig, ax, input);

  GlobalizeResult bad = r;
  bad.witnesses[0].layers.clear();
  CHECK_THROWS_AS(globalize_undo(sig, ax, bad), Error);

  bad = r;
  bad.witnesses[0].core = fv(sig, "q");
  CHECK_THROWS_AS(globalize_undo(sig, ax, bad), Error);

  DtGlobalResult dr = dt_global(sig, ax, input, p);
  DtGlobalResult dbad = dr;
  dbad.witnesses[0].core = fv(sig, "q");
  CHECK_THROWS_AS(dt_global_undo(sig, ax, dbad, p), Error);
}

TEST_CASE("transformed proofs survive the text format") {
  Signature sig = testing::small_sig();
  AxiomSet ax = parse_axioms(sig, "basis standard\n");
  Formula p = fv(sig, "p");

  ProofBuilder b(sig, ProofMode::Global);
  int u = b.ug(sig.op_id("g"), 1, {p}, b.hyp(fv(sig, "r")));
  Proof input = b.finish(u);
  GlobalizeResult r = globalize(sig, ax, input);

  std::string hyps_text = print_formula_set(sig, r.local_proof.hyps);
  std::string text = print_proof(sig, r.local_proof, BoxMode::Literal, "w.mfm");
  Proof back = parse_proof(sig, text, BoxMode::Literal,
                           [&](const std::string&) { return hyps_text; });
  CHECK(check_proof(sig, ax, back).ok);
  CHECK(print_proof(sig, back, BoxMode::Literal, "w.mfm") == text);
}

TEST_CASE("round trips on random global proofs") {
  Signature sig = testing::small_sig();
  AxiomSet ax = parse_axioms(sig, "basis standard\n");
  std::mt19937_64 rng(20260823);
  FormulaSet hyp_pool = {fv(sig, "p"), fv(sig, "q"), fv(sig, "r")};

  int with_wits = 0;
  for (int it = 0; it < 30; ++it) {
    Proof input = testing::random_proof(sig, hyp_pool, 10, rng);
    REQUIRE(check_proof(sig, ax, input).ok);

    GlobalizeResult g = globalize(sig, ax, input);
    CheckResult cg = check_proof(sig, ax, g.local_proof);
    REQUIRE_MESSAGE(cg.ok, "globalize output: " << cg.reason);
    REQUIRE(g.witnesses.size() == g.local_proof.hyps.size());
    for (size_t i = 0; i < g.witnesses.size(); ++i) {
      CHECK(verify_chain(sig, g.witnesses[i]));
      CHECK(g.witnesses[i].witness == g.local_proof.hyps[i]);
      CHECK(contains_formula(input.hyps, g.witnesses[i].core));
      CHECK(sort_of(sig, g.witnesses[i].witness) == g.local_proof.local_sort);
    }
    if (!g.witnesses.empty()) ++with_wits;

    Proof gb = globalize_undo(sig, ax, g);
    CheckResult cgb = check_proof(sig, ax, gb);
    REQUIRE_MESSAGE(cgb.ok, "globalize_undo output: " << cgb.reason);
    CHECK(gb.conclusion() == input.conclusion());
    for (const Formula& h : gb.hyps) CHECK(contains_formula(input.hyps, h));

    Formula phi = input.hyps.empty()
                      ? fv(sig, "p")
                      : input.hyps[rng() % input.hyps.size()];
    DtGlobalResult d = dt_global(sig, ax, input, phi);
    CheckResult cd = check_proof(sig, ax, d.global_proof);
    REQUIRE_MESSAGE(cd.ok, "dt_global output: " << cd.reason);
    for (const GammaChain& c : d.witnesses) {
      CHECK(c.core == phi);
      CHECK(verify_chain(sig, c));
    }
    Proof db = dt_global_undo(sig, ax, d, phi);
    CheckResult cdb = check_proof(sig, ax, db);
    REQUIRE_MESSAGE(cdb.ok, "dt_global_undo output: " << cdb.reason);
    CHECK(db.conclusion() == input.conclusion());
    for (const Formula& h : db.hyps) {
      CHECK((h == phi || contains_formula(input.hyps, h)));
    }

    // Local deduction round trip on the witnessed form.
    if (!g.local_proof.witnesses.empty()) {
      Formula w = g.local_proof.hyps[g.local_proof.witnesses[0]];
      Proof dl = dt_local(sig, ax, g.local_proof, w);
      CHECK(check_proof(sig, ax, dl).ok);
      Proof rl = dt_local_intro(sig, ax, dl, w);
      CheckResult crl = check_proof(sig, ax, rl);
      REQUIRE_MESSAGE(crl.ok, "dt_local_intro output: " << crl.reason);
    }
  }
  // The generator must actually exercise the witness machinery.
  CHECK(with_wits >= 15);
}

TEST_CASE("witnesses live in the boxed closure of the hypotheses") {
  Signature sig = testing::small_sig();
  AxiomSet ax = parse_axioms(sig, "basis standard\n");
  std::mt19937_64 rng(97);
  FormulaSet hyp_pool = {fv(sig, "p"), fv(sig, "q"), fv(sig, "r")};

  int checked = 0;
  for (int it = 0; it < 12 && checked < 6; ++it) {
    Proof input = testing::random_proof(sig, hyp_pool, 8, rng);
    GlobalizeResult g = globalize(sig, ax, input);

    size_t depth = 0;
    FormulaSet pool = {fv(sig, "p"), fv(sig, "r")};
    for (const GammaChain& c : g.witnesses) {
      depth = std::max(depth, c.layers.size());
      for (const GammaLayer& l : c.layers)
        for (const Formula& f : l.sides) insert_formula(pool, f);
    }
    if (g.witnesses.empty() || depth > 3) continue;

    std::vector<FormulaSet> g0(sig.sort_count());
    for (const Formula& h : input.hyps) g0[sort_of(sig, h)].push_back(h);
    auto levels = gamma_closure(sig, g0, pool, static_cast<int>(depth));
    for (const GammaChain& c : g.witnesses) {
      CHECK(contains_formula(levels[depth][sort_of(sig, c.witness)],
                             c.witness));
    }
    ++checked;
  }
  CHECK(checked >= 3);
}
