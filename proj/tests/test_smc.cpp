#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "msml/core/errors.hpp"
#include "msml/core/format.hpp"
#include "msml/core/text.hpp"
#include "msml/proof/axioms.hpp"
#include "msml/proof/proof.hpp"
#include "msml/semantics/model.hpp"
#include "msml/smc/smc.hpp"

using namespace msml;
using namespace msml::smc;

namespace {

std::string fixture(const std::string& name) {
  return read_file(std::string(MSML_FIXTURE_DIR) + "/" + name);
}

std::vector<std::string> config_strings(const std::vector<SmcConfig>& cs) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(print_config(c));
  return out;
}

MachineVal nat(long long n) { return MachineVal{false, n}; }
MachineVal boolean(bool b) { return MachineVal{true, b ? 1 : 0}; }

// The stored control normal form of the bundled comparison program, as a
// CtrlStack term: both constants are loaded and stored, the comparison
// pushes the second identifier's value first, and each branch starts with
// the test in front of the branch body's own code.
const char* kPgmNormalForm =
    "comp(comp(ca(na(1)), asgn(i1)),"
    " comp(comp(ca(na(2)), asgn(i2)),"
    " comp(comp(ca(va(i2)), comp(ca(va(i1)), leq)),"
    " union(comp(test(bv(true)), comp(ca(va(i1)), asgn(m))),"
    " comp(test(bv(false)), comp(ca(va(i2)), asgn(m)))))))";

const char* kPgmConclusion =
    "config(vs, mem) -> [exec](cs(seq(assign(i1, na(1)), seq(assign(i2, "
    "na(2)), ite(le(va(i1), va(i2)), assign(m, va(i1)), assign(m, "
    "va(i2)))))), config(vs, set(set(set(mem, i2, 2), i1, 1), m, 1)))";

// Removes one step; later references shift down while references to the
// removed index are left dangling at the step that slid into its place.
Proof delete_step(const Proof& p, int idx) {
  Proof q = p;
  q.steps.erase(q.steps.begin() + idx);
  for (ProofStep& st : q.steps) {
    if (st.just.from1 > idx) --st.just.from1;
    if (st.just.from2 > idx) --st.just.from2;
  }
  return q;
}

}  // namespace

TEST_CASE("program parser round trips and binds as printed") {
  const char* sources[] = {
      "skip",
      "m := 1",
      "m := 1 + 2 + 3",
      "m := 1 + (2 + 3)",
      "i1 := 1; i2 := 2; m := 3",
      "if i1 <= i2 then m := i1 else skip",
      "while m <= 2 do m := m + 1",
      "while m <= 2 do (m := m + 1; i1 := m)",
      "if i1 <= i2 then (if i2 <= i1 then m := 1 else m := 2) else skip",
      "(i1 := 1; i2 := 2); m := 3",
  };
  for (const char* src : sources) {
    StmtPtr s = parse_program(src);
    std::string printed = print_program(s);
    StmtPtr again = parse_program(printed);
    CHECK(print_program(again) == printed);
  }

  // + associates left, ; associates right, both visible in the tree
  StmtPtr sum = parse_program("m := 1 + 2 + 3");
  CHECK(sum->aexp->lhs->kind == AExp::Add);
  CHECK(sum->aexp->rhs->kind == AExp::Num);
  StmtPtr chain = parse_program("i1 := 1; i2 := 2; m := 3");
  CHECK(chain->s1->kind == Stmt::Assign);
  CHECK(chain->s2->kind == Stmt::Seq);
  CHECK(print_program(parse_program("(i1 := 1; i2 := 2); m := 3")) ==
        "(i1 := 1; i2 := 2); m := 3");

  // loop and branch bodies bind one statement unless parenthesized
  StmtPtr loop = parse_program("while m <= 2 do m := m + 1; i1 := m");
  CHECK(loop->kind == Stmt::Seq);
  CHECK(loop->s1->kind == Stmt::While);
}

TEST_CASE("program parser rejects malformed sources") {
  CHECK_THROWS_AS(parse_program(""), ParseError);
  CHECK_THROWS_AS(parse_program("m := "), ParseError);
  CHECK_THROWS_AS(parse_program("m = 1"), ParseError);
  CHECK_THROWS_AS(parse_program("if i1 <= i2 m := 1 else skip"), ParseError);
  CHECK_THROWS_AS(parse_program("if i1 <= i2 then m := 1"), ParseError);
  CHECK_THROWS_AS(parse_program("while i1 do skip"), ParseError);
  CHECK_THROWS_AS(parse_program("m := (1"), ParseError);
  CHECK_THROWS_AS(parse_program("m := 1; ; m := 2"), ParseError);
  CHECK_THROWS_AS(parse_program("m := 1 extra"), ParseError);
  CHECK_THROWS_AS(parse_program("m := 9999999999999999999999"), ParseError);

  // line numbers survive the lexer
  try {
    parse_program("i1 := 1;\ni2 := 2;\nif i1 <= i2 then\nelse skip");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("machine trace of the bundled comparison program") {
  StmtPtr pgm = parse_program(fixture("pgm.smc"));
  CHECK(print_program(pgm) == pgm_source());

  SmcRunResult run = smc_run(pgm);
  CHECK(run.faults.empty());
  CHECK_FALSE(run.budget_exceeded);

  // exactly one outcome: both values stored, smaller one copied into m
  REQUIRE(run.finals.size() == 1);
  CHECK(print_config(run.finals[0]) == "config(nil, {i1=1, i2=2, m=1})");

  // the mismatched branch test is the only dead end
  REQUIRE(run.blocked.size() == 1);
  CHECK(print_config(run.blocked[0].first) ==
        "config(true.nil, {i1=1, i2=2})");

  std::vector<std::string> expected = {
      "config(nil, {})",
      "config(nil, {i1=1})",
      "config(nil, {i1=1, i2=2})",
      "config(nil, {i1=1, i2=2, m=1})",
      "config(1.nil, {})",
      "config(1.nil, {i1=1, i2=2})",
      "config(2.nil, {i1=1})",
      "config(2.nil, {i1=1, i2=2})",
      "config(1.2.nil, {i1=1, i2=2})",
      "config(true.nil, {i1=1, i2=2})",
  };
  CHECK(config_strings(run.visited) == expected);

  // the comparison sees i1's value on top of i2's and leaves true
  CHECK(std::find(expected.begin(), expected.end(),
                  "config(1.2.nil, {i1=1, i2=2})") != expected.end());

  // seeded memories shift the whole trace
  SmcRunResult seeded = smc_run(pgm, {{"m", 3}});
  REQUIRE(seeded.finals.size() == 1);
  CHECK(print_config(seeded.finals[0]) == "config(nil, {i1=1, i2=2, m=1})");
}

TEST_CASE("machine handles skip, loops and dead branches") {
  SmcRunResult idle = smc_run(parse_program("skip"));
  REQUIRE(idle.finals.size() == 1);
  CHECK(print_config(idle.finals[0]) == "config(nil, {})");

  SmcRunResult add = smc_run(parse_program("m := 1 + 2"));
  REQUIRE(add.finals.size() == 1);
  CHECK(print_config(add.finals[0]) == "config(nil, {m=3})");
  // the first summand is loaded first, so the second sits on top
  CHECK(std::find(config_strings(add.visited).begin(),
                  config_strings(add.visited).end(),
                  "config(2.1.nil, {})") !=
        config_strings(add.visited).end());

  SmcRunResult loop = smc_run(parse_program("while m <= 1 do m := m + 2"));
  REQUIRE(loop.finals.size() == 1);
  CHECK(print_config(loop.finals[0]) == "config(nil, {m=2})");
  CHECK_FALSE(loop.budget_exceeded);

  // a state-repeating loop terminates the search without any final
  SmcRunResult spin = smc_run(parse_program("while i1 <= m do skip"));
  CHECK(spin.finals.empty());
  CHECK_FALSE(spin.budget_exceeded);
  CHECK_FALSE(spin.blocked.empty());

  // a state-growing loop exhausts the budget instead
  SmcRunResult grow =
      smc_run(parse_program("while i1 <= m do m := m + 1"), {}, 50);
  CHECK(grow.budget_exceeded);
}

TEST_CASE("machine faults on ill-typed or underflowing control") {
  SmcConfig empty;
  SmcConfig one_bool{{boolean(true)}, {}};
  SmcConfig bool_and_nat{{nat(1), boolean(true)}, {}};
  SmcConfig two_nats{{nat(2), nat(1)}, {}};

  CHECK_THROWS_AS(smc_step(empty, ctrl_plus()), Error);
  CHECK_THROWS_AS(smc_step(empty, ctrl_leq()), Error);
  CHECK_THROWS_AS(smc_step(empty, ctrl_asgn("m")), Error);
  CHECK_THROWS_AS(smc_step(empty, ctrl_test(boolean(true))), Error);
  CHECK_THROWS_AS(smc_step(one_bool, ctrl_asgn("m")), Error);
  CHECK_THROWS_AS(smc_step(bool_and_nat, ctrl_plus()), Error);
  CHECK_THROWS_AS(smc_step(bool_and_nat, ctrl_leq()), Error);

  // a healthy comparison pops top as the left operand
  auto next = smc_step(two_nats, ctrl_leq());
  REQUIRE(next.size() == 1);
  CHECK(next[0].second == nullptr);
  CHECK(print_config(next[0].first) == "config(true.nil, {})");

  // mismatched test: no successors rather than a fault
  CHECK(smc_step(one_bool, ctrl_test(boolean(false))).empty());
  CHECK(smc_step(one_bool, ctrl_test(nat(1))).empty());

  // matched test pops
  auto popped = smc_step(one_bool, ctrl_test(boolean(true)));
  REQUIRE(popped.size() == 1);
  CHECK(print_config(popped[0].first) == "config(nil, {})");
}

TEST_CASE("signature and axiom files match the built-ins") {
  Signature sig = smc_signature();
  AxiomSet ax = smc_axioms(sig);

  CHECK(print_signature(sig) == fixture("smc.msig"));
  CHECK(print_axioms(ax, BoxMode::Pdl) == fixture("smc.max"));

  Signature reread = parse_signature(fixture("smc.msig"));
  AxiomSet axreread = parse_axioms(reread, fixture("smc.max"), BoxMode::Pdl);
  CHECK(print_axioms(axreread, BoxMode::Pdl) == fixture("smc.max"));
  CHECK(axreread.schemes.size() == 21);

  // a closed instance of the comparison rule, spelled out
  const AxiomScheme* leq = ax.find("a_leq");
  REQUIRE(leq != nullptr);
  Formula inst = instantiate_scheme(
      *leq, {{"N1", parse_formula(sig, "1")},
             {"N2", parse_formula(sig, "2")},
             {"T", parse_formula(sig, "true")},
             {"VS", parse_formula(sig, "vs")},
             {"MEM", parse_formula(sig, "mem")}});
  CHECK(inst == parse_formula(sig,
                              "config(cons(nv(1), cons(nv(2), vs)), mem) -> "
                              "[exec](leq, config(cons(bv(true), vs), mem))",
                              BoxMode::Pdl));

  // guards reject a wrong comparison verdict, equal test values and a sum
  // that does not add up
  CHECK_THROWS_AS(
      instantiate_scheme(*leq, {{"N1", parse_formula(sig, "1")},
                                {"N2", parse_formula(sig, "2")},
                                {"T", parse_formula(sig, "false")},
                                {"VS", parse_formula(sig, "vs")},
                                {"MEM", parse_formula(sig, "mem")}}),
      Error);
  const AxiomScheme* ntest = ax.find("a_ntest");
  REQUIRE(ntest != nullptr);
  CHECK_THROWS_AS(
      instantiate_scheme(*ntest,
                         {{"V", parse_formula(sig, "bv(true)")},
                          {"V2", parse_formula(sig, "bv(true)")},
                          {"VS", parse_formula(sig, "vs")},
                          {"MEM", parse_formula(sig, "mem")},
                          {"G", parse_formula(sig, "config(vs, mem)")}}),
      Error);
  const AxiomScheme* plus = ax.find("a_plus");
  REQUIRE(plus != nullptr);
  CHECK_THROWS_AS(
      instantiate_scheme(*plus, {{"N1", parse_formula(sig, "1")},
                                 {"N2", parse_formula(sig, "1")},
                                 {"N", parse_formula(sig, "3")},
                                 {"VS", parse_formula(sig, "vs")},
                                 {"MEM", parse_formula(sig, "mem")}}),
      Error);
  Formula sum_ok = instantiate_scheme(
      *plus, {{"N1", parse_formula(sig, "1")},
              {"N2", parse_formula(sig, "2")},
              {"N", parse_formula(sig, "3")},
              {"VS", parse_formula(sig, "vs")},
              {"MEM", parse_formula(sig, "mem")}});
  CHECK(sum_ok ==
        parse_formula(sig,
                      "config(cons(nv(2), cons(nv(1), vs)), mem) -> "
                      "[exec](plus, config(cons(nv(3), vs), mem))",
                      BoxMode::Pdl));
}

TEST_CASE("term encodings compose stacks, memories and control") {
  Signature sig = smc_signature();

  CHECK(print_formula(sig, stack_formula(sig, {})) == "nil");
  CHECK(print_formula(sig, stack_formula(sig, {nat(2), nat(1)})) ==
        "cons(nv(1), cons(nv(2), nil))");
  CHECK(print_formula(sig, stack_formula(sig, {boolean(false)})) ==
        "cons(bv(false), nil)");

  CHECK(print_formula(sig, mem_formula(sig, {})) == "empty");
  CHECK(print_formula(sig, mem_formula(sig, {{"i2", 2}, {"i1", 1}})) ==
        "set(set(empty, i1, 1), i2, 2)");

  SmcConfig c{{nat(1)}, {{"m", 3}}};
  CHECK(print_formula(sig, config_formula(sig, c)) ==
        "config(cons(nv(1), nil), set(empty, m, 3))");

  StmtPtr pgm = parse_program(pgm_source());
  CHECK(print_formula(sig, stmt_formula(sig, pgm)) ==
        "seq(assign(i1, na(1)), seq(assign(i2, na(2)), ite(le(va(i1), "
        "va(i2)), assign(m, va(i1)), assign(m, va(i2)))))");

  // undeclared numerals and identifiers have no term encoding
  CHECK_THROWS_AS(nat_formula(sig, 4), Error);
  CHECK_THROWS_AS(pvar_formula(sig, "zz"), Error);
  CHECK_THROWS_AS(mem_formula(sig, {{"m", 9}}), Error);

  // control normal form: fully expanded, and a fixed point of expansion
  CtrlPtr nf = d_normal(ctrl_cs(pgm));
  CHECK(ctrl_formula(sig, nf) == parse_formula(sig, kPgmNormalForm));
  CHECK(ctrl_formula(sig, d_normal(nf)) == ctrl_formula(sig, nf));
  CHECK(print_ctrl(nf) == print_ctrl(d_normal(nf)));
}

TEST_CASE("memory updates denote their final map regardless of order") {
  Signature sig = smc_signature();
  StmtPtr pgm = parse_program(pgm_source());
  TermModel tm = build_term_model(sig, pgm);
  SortId mem_sort = sig.sort_id("Mem");
  OpId op_set = sig.op_id("set");

  const std::vector<std::string> ids = {"i1", "i2", "m"};
  const std::vector<long long> vals = {0, 1, 2, 3};

  struct Item {
    Formula term;
    std::map<std::string, long long> map;
  };
  std::vector<Item> frontier = {{mem_formula(sig, {}), {}}};
  Eval ev(sig, tm.model);
  int checked = 0;
  for (int depth = 0; depth < 3; ++depth) {
    std::vector<Item> next;
    for (const Item& it : frontier) {
      for (const std::string& x : ids) {
        for (long long n : vals) {
          Item ext;
          ext.term = Formula::app(
              op_set, {it.term, pvar_formula(sig, x), nat_formula(sig, n)});
          ext.map = it.map;
          ext.map[x] = n;
          next.push_back(ext);
        }
      }
    }
    for (const Item& it : next) {
      int expect = tm.find_world(mem_sort, mem_formula(sig, it.map));
      REQUIRE(expect >= 0);
      for (int w = 0; w < tm.model.frame.world_counts[mem_sort]; ++w)
        CHECK(ev.sat(w, it.term) == (w == expect));
      ++checked;
    }
    frontier = std::move(next);
  }
  CHECK(checked == 12 + 144 + 1728);
}

TEST_CASE("term model of the comparison program has the expected size") {
  Signature sig = smc_signature();
  StmtPtr pgm = parse_program(pgm_source());
  TermModel tm = build_term_model(sig, pgm);

  auto worlds = [&](const char* sort) {
    return tm.model.frame.world_counts[sig.sort_id(sort)];
  };
  CHECK(worlds("Nat") == 4);
  CHECK(worlds("Var") == 3);
  CHECK(worlds("Bool") == 2);
  CHECK(worlds("AExp") == 7);
  CHECK(worlds("BExp") == 1);
  CHECK(worlds("Stmt") == 8);
  CHECK(worlds("Val") == 6);
  CHECK(worlds("ValStack") == 5);
  CHECK(worlds("Mem") == 125);
  CHECK(worlds("CtrlStack") == 31);
  CHECK(worlds("Config") == 10);
  CHECK(tm.truncated_stars.empty());

  // worlds resolve by their construction term
  SortId cfg_sort = sig.sort_id("Config");
  SmcConfig start;
  CHECK(tm.find_world(cfg_sort, config_formula(sig, start)) >= 0);
  SmcConfig final{{}, {{"i1", 1}, {"i2", 2}, {"m", 1}}};
  CHECK(tm.find_world(cfg_sort, config_formula(sig, final)) >= 0);
  CHECK(tm.find_world(cfg_sort, parse_formula(sig, "config(nil, empty)")) ==
        tm.find_world(cfg_sort, config_formula(sig, start)));

  SortId ctrl_sort = sig.sort_id("CtrlStack");
  CHECK(tm.find_world(ctrl_sort, parse_formula(sig, kPgmNormalForm)) >= 0);
  CHECK(tm.find_world(ctrl_sort, parse_formula(sig, "cs(skip)")) >= 0);
  // source-form control lives on the same worlds as its expansion
  StmtPtr ifstmt = parse_program("if i1 <= i2 then m := i1 else m := i2");
  Formula cs_if = Formula::app(sig.op_id("cs"), {stmt_formula(sig, ifstmt)});
  CHECK(tm.find_world(ctrl_sort, cs_if) == -1);  // not a construction term
  Eval ev(sig, tm.model);
  int nf_if = tm.find_world(
      ctrl_sort, ctrl_formula(sig, d_normal(ctrl_cs(ifstmt))));
  REQUIRE(nf_if >= 0);
  for (int w = 0; w < tm.model.frame.world_counts[ctrl_sort]; ++w)
    CHECK(ev.sat(w, cs_if) == (w == nf_if));
}

TEST_CASE("every axiom instance holds in the comparison term model") {
  Signature sig = smc_signature();
  AxiomSet ax = smc_axioms(sig);
  StmtPtr pgm = parse_program(pgm_source());
  TermModel tm = build_term_model(sig, pgm);

  CoherenceReport rep = check_axiom_coherence(sig, ax, tm);
  CHECK(rep.ok());
  CHECK(rep.failed == 0);
  CHECK(rep.star_skipped == 0);
  CHECK(rep.checked > 200000);
  CHECK(rep.out_of_scope > 0);
  CHECK(rep.failures.empty());

  // spot check through the generic evaluator: a closed instance at a
  // reachable configuration is globally true and not vacuously so, while
  // a doctored comparison verdict fails at that configuration
  const std::string before =
      "config(cons(nv(1), cons(nv(2), nil)), set(set(empty, i1, 1), i2, 2))";
  Formula ante = parse_formula(sig, before);
  int w_before = tm.find_world(sig.sort_id("Config"), ante);
  REQUIRE(w_before >= 0);
  CHECK(satisfies(sig, tm.model, w_before, ante));
  Formula good = parse_formula(
      sig,
      before + " -> [exec](leq, config(cons(bv(true), nil), "
               "set(set(empty, i1, 1), i2, 2)))",
      BoxMode::Pdl);
  CHECK(globally_true(sig, tm.model, good));
  Formula doctored = parse_formula(
      sig,
      before + " -> [exec](leq, config(cons(bv(false), nil), "
               "set(set(empty, i1, 1), i2, 2)))",
      BoxMode::Pdl);
  CHECK_FALSE(globally_true(sig, tm.model, doctored));

  Formula chain = parse_formula(
      sig,
      "[exec](comp(ca(na(1)), asgn(i1)), config(nil, set(empty, i1, 1))) <-> "
      "[exec](ca(na(1)), [exec](asgn(i1), config(nil, set(empty, i1, 1))))",
      BoxMode::Pdl);
  CHECK(globally_true(sig, tm.model, chain));

  Formula commute = parse_formula(
      sig,
      "set(set(empty, i1, 1), i2, 2) <-> set(set(empty, i2, 2), i1, 1)");
  CHECK(globally_true(sig, tm.model, commute));
}

TEST_CASE("axioms hold across arithmetic and loop term models") {
  Signature sig = smc_signature();
  AxiomSet ax = smc_axioms(sig);

  StmtPtr add = parse_program("m := 1 + 2");
  TermModel tma = build_term_model(sig, add);
  CHECK(tma.model.frame.world_counts[sig.sort_id("CtrlStack")] == 22);
  CoherenceReport ra = check_axiom_coherence(sig, ax, tma);
  CHECK(ra.ok());
  CHECK(ra.star_skipped == 0);

  StmtPtr loop = parse_program("while m <= 1 do m := m + 2");
  TermModel tml = build_term_model(sig, loop);
  CHECK(tml.truncated_stars.empty());
  SortId ctrl_sort = sig.sort_id("CtrlStack");
  CtrlPtr nf = d_normal(ctrl_cs(loop));
  CHECK(tml.find_world(ctrl_sort, ctrl_formula(sig, nf)) >= 0);
  CoherenceReport rl = check_axiom_coherence(sig, ax, tml);
  CHECK(rl.ok());
  CHECK(rl.star_skipped == 0);
  CHECK(rl.checked > 0);

  // iteration starved of its fixpoint: loop unfoldings get skipped, not
  // counted as failures
  TermModel cut = build_term_model(sig, loop, {}, 10000, 0);
  CHECK_FALSE(cut.truncated_stars.empty());
  CoherenceReport rc = check_axiom_coherence(sig, ax, cut);
  CHECK(rc.ok());
  CHECK(rc.star_skipped > 0);
}

TEST_CASE("bundled machine proof checks and pins its conclusion") {
  Signature sig = smc_signature();
  AxiomSet ax = smc_axioms(sig);

  Proof built = elaborate_pgm_proof();
  CheckResult cr = check_proof(sig, ax, built);
  CHECK(cr.ok);
  CHECK(cr.reason.empty());
  CHECK(built.mode == ProofMode::Global);
  CHECK(built.hyps.empty());
  CHECK(print_formula(sig, built.conclusion(), BoxMode::Pdl) ==
        kPgmConclusion);

  // the stored copy is byte-identical and checks on its own
  std::string stored = fixture("p_pgm.mpf");
  CHECK(print_proof(sig, built, BoxMode::Pdl) == stored);
  Proof reread = parse_proof(sig, stored, BoxMode::Pdl);
  CHECK(check_proof(sig, ax, reread).ok);
  CHECK(reread.conclusion() == built.conclusion());

  // the final memory reads m=1 and refutes m=2 in the term model
  Proof get1 = mem_get_theorem();
  CHECK(check_proof(sig, ax, get1).ok);
  CHECK(print_formula(sig, get1.conclusion(), BoxMode::Pdl) ==
        "set(set(set(mem, i2, 2), i1, 1), m, 1) -> get(m, 1)");

  StmtPtr pgm = parse_program(pgm_source());
  TermModel tm = build_term_model(sig, pgm);
  Formula read_right = parse_formula(
      sig, "set(set(set(empty, i2, 2), i1, 1), m, 1) -> get(m, 1)");
  Formula read_wrong = parse_formula(
      sig, "set(set(set(empty, i2, 2), i1, 1), m, 1) -> get(m, 2)");
  CHECK(globally_true(sig, tm.model, read_right));
  CHECK_FALSE(globally_true(sig, tm.model, read_wrong));

  // closing the witness instance of the conclusion holds semantically
  Formula closed = parse_formula(
      sig,
      "config(nil, empty) -> [exec](cs(seq(assign(i1, na(1)), "
      "seq(assign(i2, na(2)), ite(le(va(i1), va(i2)), assign(m, va(i1)), "
      "assign(m, va(i2)))))), config(nil, set(set(set(empty, i2, 2), i1, "
      "1), m, 1)))",
      BoxMode::Pdl);
  CHECK(globally_true(sig, tm.model, closed));
}

TEST_CASE("single step deletions always break the machine proof") {
  Signature sig = smc_signature();
  AxiomSet ax = smc_axioms(sig);
  Proof p = elaborate_pgm_proof();
  REQUIRE(check_proof(sig, ax, p).ok);

  int rejected = 0;
  int total = static_cast<int>(p.steps.size());
  for (int i = 0; i < total; ++i) {
    Proof q = delete_step(p, i);
    bool bad = q.steps.empty() || q.conclusion() != p.conclusion() ||
               !check_proof(sig, ax, q).ok;
    if (bad) ++rejected;
  }
  CHECK(rejected == total);
  CHECK(total == 560);
}
