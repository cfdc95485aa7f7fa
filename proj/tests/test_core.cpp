#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "msml/core/errors.hpp"
#include "msml/core/format.hpp"
#include "msml/core/formula.hpp"
#include "msml/core/signature.hpp"

using namespace msml;

TEST_CASE("signature parsing and lookup") {
  Signature sig = testing::small_sig();
  CHECK(sig.sort_count() == 2);
  CHECK(sig.op_count() == 4);
  CHECK(sig.var_count() == 4);
  CHECK(sig.sort_name(sig.sort_id("v")) == "v");
  CHECK(sig.op(sig.op_id("g")).arity() == 2);
  CHECK(sig.op(sig.op_id("c")).arity() == 0);
  CHECK(sig.var(sig.var_id("r")).sort == sig.sort_id("v"));
  CHECK(sig.find_op("nope") == -1);
  CHECK(sig.canonical_var(sig.sort_id("u")) == sig.var_id("p"));
  CHECK(sig.vars_of(sig.sort_id("v")).size() == 2);
}

TEST_CASE("signature print parses back to the same declarations") {
  Signature sig = testing::small_sig();
  Signature again = parse_signature(print_signature(sig));
  CHECK(print_signature(again) == print_signature(sig));
}

TEST_CASE("signature rejects malformed input") {
  CHECK_THROWS_AS(parse_signature("sort u\nsort u\nvar p : u\n"), ParseError);
  CHECK_THROWS_AS(parse_signature("op f : u -> u\n"), ParseError);  // sort undeclared
  CHECK_THROWS_AS(parse_signature("sort u\nvar p : u\nop p : -> u\n"),
                  ParseError);  // op reuses a variable name
  CHECK_THROWS_AS(parse_signature("sort u\nop f : -> u\nvar f : u\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_signature("sort u\n"), ParseError);  // no variable for u
  CHECK_THROWS_AS(parse_signature("frobnicate x\n"), ParseError);
  CHECK_THROWS_AS(parse_signature("sort u\nvar p : u\nop f : u u\n"),
                  ParseError);  // missing ->
  // error message carries the line number
  try {
    parse_signature("sort u\nvar p : u\nsort u\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("comments and blank lines are ignored") {
  Signature sig = parse_signature(
      "# header\n"
      "\n"
      "sort u   # trailing\n"
      "var p : u\n");
  CHECK(sig.sort_count() == 1);
  CHECK(sig.var_count() == 1);
}

TEST_CASE("numerals can be declared as nullary ops") {
  Signature sig = parse_signature(
      "sort Nat\n"
      "op 0 : -> Nat\n"
      "op 1 : -> Nat\n"
      "var n : Nat\n");
  Formula zero = parse_formula(sig, "0");
  CHECK(zero.kind() == FKind::App);
  CHECK(sort_of(sig, zero) == sig.sort_id("Nat"));
}

TEST_CASE("sort_of validates the whole tree") {
  Signature sig = testing::small_sig();
  SortId u = sig.sort_id("u");
  SortId v = sig.sort_id("v");
  Formula p = Formula::var(sig.var_id("p"));
  Formula r = Formula::var(sig.var_id("r"));
  CHECK(sort_of(sig, p) == u);
  CHECK(sort_of(sig, Formula::neg(p)) == u);
  CHECK(sort_of(sig, Formula::app(sig.op_id("g"), {p, r})) == v);
  CHECK(sort_of(sig, Formula::app(sig.op_id("c"), {})) == u);
  CHECK_THROWS_AS(sort_of(sig, Formula::disj(p, r)), SortError);
  CHECK_THROWS_AS(sort_of(sig, Formula::app(sig.op_id("f"), {p, p})), SortError);
  CHECK_THROWS_AS(sort_of(sig, Formula::app(sig.op_id("f"), {r})), SortError);
  // deep violation is still caught
  CHECK_THROWS_AS(
      sort_of(sig, Formula::neg(Formula::disj(p, Formula::app(sig.op_id("h"), {p})))),
      SortError);
}

TEST_CASE("bot desugars through the canonical variable") {
  Signature sig = testing::small_sig();
  SortId u = sig.sort_id("u");
  Formula p = Formula::var(sig.var_id("p"));  // first-declared u-variable
  Formula expect = Formula::neg(Formula::disj(Formula::neg(p), Formula::neg(Formula::neg(p))));
  CHECK(mk_bot(sig, u) == expect);
  CHECK(mk_top(sig, u) == Formula::neg(expect));
  CHECK(sort_of(sig, mk_bot(sig, u)) == u);
}

TEST_CASE("dual application negates every argument") {
  Signature sig = testing::small_sig();
  Formula p = Formula::var(sig.var_id("p"));
  Formula r = Formula::var(sig.var_id("r"));
  Formula d = mk_dual(sig, sig.op_id("g"), {p, r});
  Formula expect = Formula::neg(
      Formula::app(sig.op_id("g"), {Formula::neg(p), Formula::neg(r)}));
  CHECK(d == expect);
  CHECK(sort_of(sig, d) == sig.sort_id("v"));
  CHECK_THROWS_AS(mk_dual(sig, sig.op_id("c"), {}), SortError);
  CHECK_THROWS_AS(mk_dual(sig, sig.op_id("g"), {p}), SortError);
}

TEST_CASE("structural equality is on the desugared kernel") {
  Signature sig = testing::small_sig();
  Formula p = Formula::var(sig.var_id("p"));
  Formula q = Formula::var(sig.var_id("q"));
  CHECK(Formula::impl(p, q) == Formula::disj(Formula::neg(p), q));
  CHECK(Formula::conj(p, q) ==
        Formula::neg(Formula::disj(Formula::neg(p), Formula::neg(q))));
  CHECK(Formula::impl(p, q) != Formula::impl(q, p));
  CHECK(std::hash<Formula>{}(Formula::impl(p, q)) ==
        std::hash<Formula>{}(Formula::disj(Formula::neg(p), q)));
}

TEST_CASE("substitution is simultaneous, sorted, homomorphic") {
  Signature sig = testing::small_sig();
  VarId pv = sig.var_id("p");
  VarId qv = sig.var_id("q");
  Formula p = Formula::var(pv);
  Formula q = Formula::var(qv);
  Formula r = Formula::var(sig.var_id("r"));

  CHECK(substitute(sig, p, {{pv, p}}) == p);

  // swap is simultaneous, not sequential
  Formula swapped = substitute(sig, Formula::impl(p, q), {{pv, q}, {qv, p}});
  CHECK(swapped == Formula::impl(q, p));

  Formula g = Formula::app(sig.op_id("g"), {p, r});
  Formula subst = substitute(sig, Formula::neg(g), {{pv, Formula::neg(q)}});
  CHECK(subst == Formula::neg(Formula::app(sig.op_id("g"), {Formula::neg(q), r})));

  CHECK_THROWS_AS(substitute(sig, p, {{pv, r}}), SortError);  // u := v-formula

  // sort is preserved on random formulas
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    SortId s = (i % 2 == 0) ? sig.sort_id("u") : sig.sort_id("v");
    Formula f = testing::random_formula(sig, s, 4, rng);
    Formula image = substitute(sig, f, {{pv, Formula::app(sig.op_id("c"), {})}});
    CHECK(sort_of(sig, image) == s);
  }
}

TEST_CASE("free_vars and groundness") {
  Signature sig = testing::small_sig();
  Formula p = Formula::var(sig.var_id("p"));
  Formula q = Formula::var(sig.var_id("q"));
  Formula f = Formula::impl(Formula::conj(p, q), p);
  auto vs = free_vars(f);
  REQUIRE(vs.size() == 2);
  CHECK(vs[0] == sig.var_id("p"));
  CHECK(vs[1] == sig.var_id("q"));
  CHECK(!is_ground(f));
  CHECK(is_ground(Formula::app(sig.op_id("c"), {})));
}

TEST_CASE("parsing respects the precedence table") {
  Signature sig = testing::small_sig();
  Formula p = Formula::var(sig.var_id("p"));
  Formula q = Formula::var(sig.var_id("q"));
  Formula c = Formula::app(sig.op_id("c"), {});

  CHECK(parse_formula(sig, "p -> q | c") ==
        Formula::impl(p, Formula::disj(q, c)));
  CHECK(parse_formula(sig, "p & q | c") ==
        Formula::disj(Formula::conj(p, q), c));
  CHECK(parse_formula(sig, "!p & q") == Formula::conj(Formula::neg(p), q));
  CHECK(parse_formula(sig, "!(p & q)") == Formula::neg(Formula::conj(p, q)));
  CHECK(parse_formula(sig, "p -> q -> c") ==
        Formula::impl(p, Formula::impl(q, c)));
  CHECK(parse_formula(sig, "p <-> q -> c") ==
        Formula::iff(p, Formula::impl(q, c)));
  CHECK(parse_formula(sig, "p | q | c") ==
        Formula::disj(Formula::disj(p, q), c));
  CHECK(parse_formula(sig, "f(p)") == Formula::app(sig.op_id("f"), {p}));
  CHECK(parse_formula(sig, "bot@u") == mk_bot(sig, sig.sort_id("u")));
  CHECK(parse_formula(sig, "top@v") == mk_top(sig, sig.sort_id("v")));
}

TEST_CASE("bracket applications follow the box mode") {
  Signature sig = testing::small_sig();
  Formula p = Formula::var(sig.var_id("p"));
  Formula r = Formula::var(sig.var_id("r"));

  CHECK(parse_formula(sig, "[g](p, r)") == mk_dual(sig, sig.op_id("g"), {p, r}));
  CHECK(parse_formula(sig, "[g](p, r)", BoxMode::Pdl) ==
        Formula::neg(Formula::app(sig.op_id("g"), {p, Formula::neg(r)})));
  // unary boxes agree across modes
  CHECK(parse_formula(sig, "[f](p)") == parse_formula(sig, "[f](p)", BoxMode::Pdl));
}

TEST_CASE("parse errors carry a column position") {
  Signature sig = testing::small_sig();
  auto col_of = [&](const std::string& text) -> std::string {
    try {
      parse_formula(sig, text);
      return "no error";
    } catch (const ParseError& e) {
      return e.what();
    }
  };
  CHECK(col_of("p -> zz").find("col 6") != std::string::npos);
  CHECK(col_of("p - q").find("col 3") != std::string::npos);
  CHECK(col_of("(p").find("')'") != std::string::npos);
  CHECK(col_of("[zz](p)").find("unknown op") != std::string::npos);
  CHECK(col_of("[c]()").find("at least one argument") != std::string::npos);
  CHECK(col_of("p q").find("end of input") != std::string::npos);
  CHECK(col_of("bot@zz").find("unknown sort") != std::string::npos);
  CHECK(col_of("").find("a formula") != std::string::npos);
  // sort violations surface as SortError, not ParseError
  CHECK_THROWS_AS(parse_formula(sig, "p | r"), SortError);
  CHECK_THROWS_AS(parse_formula(sig, "f(r)"), SortError);
  CHECK_THROWS_AS(parse_formula(sig, "f(p, p)"), SortError);
  CHECK_THROWS_AS(parse_formula(sig, "[c](p)"), SortError);
}

TEST_CASE("printer re-sugars the derived forms") {
  Signature sig = testing::small_sig();
  auto rt = [&](const std::string& s) {
    return print_formula(sig, parse_formula(sig, s));
  };
  CHECK(rt("p & q") == "p & q");
  CHECK(rt("p -> q -> p") == "p -> q -> p");
  CHECK(rt("(p -> q) -> p") == "(p -> q) -> p");
  CHECK(rt("p <-> q") == "p <-> q");
  CHECK(rt("bot@u") == "bot@u");
  CHECK(rt("top@v") == "top@v");
  CHECK(rt("[g](p, r)") == "[g](p, r)");
  CHECK(rt("!!p") == "!!p");
  CHECK(rt("!(p | q)") == "!(p | q)");
  CHECK(rt("g(p, r)") == "g(p, r)");
  CHECK(rt("c") == "c");
  CHECK(rt("p & q & p") == "p & q & p");
  CHECK(rt("p & (q & p)") == "p & (q & p)");
  // non-canonical contradiction stays spelled out
  CHECK(rt("q & !q") == "q & !q");
}

TEST_CASE("print then parse is the identity on random formulas") {
  Signature sig = testing::small_sig();
  std::mt19937_64 rng(20260823);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    SortId s = (i % 2 == 0) ? sig.sort_id("u") : sig.sort_id("v");
    Formula f = testing::random_formula(sig, s, 6, rng);
    for (BoxMode mode : {BoxMode::Literal, BoxMode::Pdl}) {
      std::string text = print_formula(sig, f, mode);
      Formula back = parse_formula(sig, text, mode);
      if (back != f) {
        CAPTURE(text);
        REQUIRE(back == f);
      }
      // printing is a normal form: reprint is byte-stable
      CHECK(print_formula(sig, back, mode) == text);
    }
    ++checked;
  }
  CHECK(checked == 1000);
}
