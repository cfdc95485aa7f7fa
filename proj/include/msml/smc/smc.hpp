#pragma once

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "msml/core/format.hpp"
#include "msml/core/formula.hpp"
#include "msml/core/signature.hpp"
#include "msml/proof/proof.hpp"
#include "msml/semantics/model.hpp"

namespace msml::smc {

// ----- surface programs -----

struct AExp;
using AExpPtr = std::shared_ptr<const AExp>;

struct AExp {
  enum Kind { Num, Id, Add };
  Kind kind;
  long long num = 0;   // Num
  std::string id;      // Id
  AExpPtr lhs, rhs;    // Add
};

AExpPtr mk_num(long long n);
AExpPtr mk_id(std::string name);
AExpPtr mk_add(AExpPtr a, AExpPtr b);

// The only comparison form is lhs <= rhs.
struct BExp {
  AExpPtr lhs, rhs;
};
using BExpPtr = std::shared_ptr<const BExp>;
BExpPtr mk_le(AExpPtr a, AExpPtr b);

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
  enum Kind { Assign, If, While, Skip, Seq };
  Kind kind;
  std::string id;    // Assign target
  AExpPtr aexp;      // Assign source
  BExpPtr cond;      // If, While
  StmtPtr s1, s2;    // If branches, While body (s1), Seq parts
};

StmtPtr mk_assign(std::string id, AExpPtr a);
StmtPtr mk_if(BExpPtr b, StmtPtr s1, StmtPtr s2);
StmtPtr mk_while(BExpPtr b, StmtPtr s);
StmtPtr mk_skip();
StmtPtr mk_seq(StmtPtr s1, StmtPtr s2);

// Syntax: `x := e`, `if b then s1 else s2`, `while b do s`, `skip`,
// `s1 ; s2` (right-associative, loosest), `e1 + e2` (left-associative),
// `e1 <= e2`, decimal naturals, identifier variables. An if or while body
// is a single statement; parenthesize to sequence inside one. Throws
// ParseError; print_program(parse_program(t)) reparses to the same tree.
StmtPtr parse_program(const std::string& text);
std::string print_program(const StmtPtr& s);

// ----- machine states -----

struct MachineVal {
  bool is_bool = false;
  long long n = 0;  // numeric value; 0/1 for booleans
  auto operator<=>(const MachineVal&) const = default;
  bool operator==(const MachineVal&) const = default;
};

// Value stack (top at the back) plus a canonical memory map; absent
// entries read as 0.
struct SmcConfig {
  std::vector<MachineVal> stack;
  std::map<std::string, long long> mem;
  auto operator<=>(const SmcConfig&) const = default;
  bool operator==(const SmcConfig&) const = default;
};

std::string print_config(const SmcConfig& c);

// ----- control terms -----

struct Ctrl;
using CtrlPtr = std::shared_ptr<const Ctrl>;

struct Ctrl {
  enum Kind { CA, CB, CS, Asgn, Plus, Leq, Test, Comp, Union, Star };
  Kind kind;
  AExpPtr a;        // CA
  BExpPtr bx;       // CB
  StmtPtr s;        // CS
  std::string id;   // Asgn
  MachineVal v;     // Test
  CtrlPtr c1, c2;   // Comp, Union; Star uses c1
};

CtrlPtr ctrl_ca(AExpPtr a);
CtrlPtr ctrl_cb(BExpPtr b);
CtrlPtr ctrl_cs(StmtPtr s);
CtrlPtr ctrl_asgn(std::string id);
CtrlPtr ctrl_plus();
CtrlPtr ctrl_leq();
CtrlPtr ctrl_test(MachineVal v);
CtrlPtr ctrl_comp(CtrlPtr c1, CtrlPtr c2);
CtrlPtr ctrl_union(CtrlPtr c1, CtrlPtr c2);
CtrlPtr ctrl_star(CtrlPtr c);

std::string print_ctrl(const CtrlPtr& c);

// Expansion of every compound-control rewrite: injected sums, comparisons,
// assignments, sequences, conditionals and loops are unfolded into comp/
// union/star over atomic items. Atomic items (numeral and identifier
// loads, asgn, plus, leq, tests, injected skip) are fixed points.
CtrlPtr d_normal(const CtrlPtr& c);

// ----- interpreter -----

// One step of the leftmost item. Each successor pairs the new
// configuration with the remaining control (null = nothing left). A test
// whose value differs from the stack top blocks the branch (no
// successors); stack underflow or a type-mismatched operand throws Error,
// signalling ill-formed control.
std::vector<std::pair<SmcConfig, CtrlPtr>> smc_step(const SmcConfig& cfg,
                                                    const CtrlPtr& ctrl);

struct SmcRunResult {
  std::vector<SmcConfig> finals;   // sorted, duplicate-free
  std::vector<SmcConfig> visited;  // every configuration reached, sorted
  std::vector<std::pair<SmcConfig, std::string>> blocked;  // failed tests
  std::vector<std::string> faults;  // ill-formed-control reports
  bool budget_exceeded = false;
  int steps_used = 0;
};

// Exhaustive closure of smc_step from (nil stack, initial memory) with
// control c(program). Branch points (union, star) are explored fully;
// previously seen (configuration, control) states are not re-expanded,
// and the budget caps the number of expansions.
SmcRunResult smc_run(const StmtPtr& program,
                     const std::map<std::string, long long>& initial = {},
                     int budget = 10000);

// ----- logic-side fixtures -----

// Sorts Nat, Var, Bool, AExp, BExp, Stmt, Val, ValStack, Mem, CtrlStack,
// Config, with one declared variable each (vs : ValStack and mem : Mem
// among them), numerals 0..3 and program identifiers i1, i2, m as nullary
// operators.
Signature smc_signature();

// The operational axiom schemes over smc_signature(); box syntax in the
// text form reads per BoxMode::Pdl.
AxiomSet smc_axioms(const Signature& sig);

// Term encodings. Numerals and identifiers must be declared in the
// signature; otherwise these throw Error.
Formula nat_formula(const Signature& sig, long long n);
Formula pvar_formula(const Signature& sig, const std::string& name);
Formula aexp_formula(const Signature& sig, const AExpPtr& a);
Formula bexp_formula(const Signature& sig, const BExpPtr& b);
Formula stmt_formula(const Signature& sig, const StmtPtr& s);
Formula val_formula(const Signature& sig, const MachineVal& v);
Formula stack_formula(const Signature& sig,
                      const std::vector<MachineVal>& stack);
Formula mem_formula(const Signature& sig,
                    const std::map<std::string, long long>& mem);
Formula config_formula(const Signature& sig, const SmcConfig& c);
Formula ctrl_formula(const Signature& sig, const CtrlPtr& c);

// ----- bounded term model -----

// Worlds: all numerals, identifiers, booleans and values of the
// signature; stacks reached by the run (closed under tails); every memory
// map from identifiers to numerals-or-absent; expression and statement
// subterms of the program (plus skip); normalized control terms of the
// program closed under subterms plus all atomic items; configurations
// reached by the run. Constructor operators carry their construction
// graphs, the control injections map a source to its normalized control
// world, get reads the memory map with default 0, and exec holds
// (start, control, end) transitions computed structurally: one machine
// step for atomic items, relation composition for comp, union for union
// and a reflexive-transitive closure for star. Star closures that do not
// settle within star_iteration_cap rounds (default: world count, which
// always settles) are recorded in truncated_stars.
struct TermModel {
  Model model;
  std::vector<std::vector<Formula>> world_terms;  // per sort, by world id
  std::vector<int> truncated_stars;               // CtrlStack world ids
  std::vector<std::unordered_map<Formula, int>> term_index;

  int find_world(SortId s, const Formula& term) const;
};

TermModel build_term_model(const Signature& sig, const StmtPtr& program,
                           const std::map<std::string, long long>& initial = {},
                           int budget = 10000, int star_iteration_cap = -1);

// Every guard-satisfying instantiation of every scheme with world terms
// is checked for global truth. Instances whose comp/union/star head term
// is not itself a world are out of scope (the frame has no world to
// interpret them at); star instances over a truncated closure are
// reported skipped rather than checked.
struct CoherenceReport {
  long long checked = 0;
  long long out_of_scope = 0;
  long long star_skipped = 0;
  long long failed = 0;
  std::vector<std::string> failures;  // "scheme { binding }" samples, capped

  bool ok() const { return failed == 0; }
};

CoherenceReport check_axiom_coherence(const Signature& sig,
                                      const AxiomSet& axioms,
                                      const TermModel& tm);

// ----- the worked correctness proof -----

// i1 := 1; i2 := 2; if i1 <= i2 then m := i1 else m := i2
const char* pgm_source();

// Global-mode, hypothesis-free proof over smc_axioms() concluding
//   config(vs, mem) -> [c(pgm)] config(vs, set(set(set(mem, i2, 2),
//   i1, 1), m, 1))
// with the box read per BoxMode::Pdl.
Proof elaborate_pgm_proof();

// Single-axiom proof of set(set(set(mem, i2, 2), i1, 1), m, 1) -> get(m, 1).
Proof mem_get_theorem();

}  // namespace msml::smc
