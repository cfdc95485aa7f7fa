#pragma once

#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "msml/core/formula.hpp"
#include "msml/core/signature.hpp"

namespace msml {

// Finite sorted frame. Worlds of each sort are the integers 0..count-1;
// names exist only for file round trips. rels[op] is a sorted, duplicate-free
// list of tuples (result world, arg worlds...), length 1 + arity.
struct Frame {
  std::vector<int> world_counts;
  std::vector<std::vector<std::string>> world_names;
  std::vector<std::vector<std::vector<int>>> rels;
};

// Frame plus valuation. val[v] has one 0/1 entry per world of v's sort;
// every declared variable has an entry (empty valuation = all zeros).
struct Model {
  Frame frame;
  std::vector<std::vector<char>> val;
};

Frame make_frame(const Signature& sig, std::vector<int> world_counts);
Model make_model(const Signature& sig, Frame frame);

// Inserts keeping rels[op] sorted; validates arity and world bounds.
void add_rel_tuple(const Signature& sig, Frame& frame, OpId op,
                   const std::vector<int>& tuple);

// Full structural validation (sizes, bounds, nonempty sorts, sortedness).
void check_model(const Signature& sig, const Model& m);

// Satisfaction evaluator. Results for operator applications are memoized
// per (node, world) across all queries on this instance, so evaluating one
// formula at every world shares work. Queried formulas are pinned to keep
// node addresses stable.
class Eval {
 public:
  Eval(const Signature& sig, const Model& m);

  // world ranges over the sort of phi; phi must be well-sorted (checked).
  bool sat(int world, const Formula& phi);

 private:
  bool go(const Formula& f, int w);

  const Signature& sig_;
  const Model& m_;
  // op -> result world -> argument tuples
  std::vector<std::vector<std::vector<std::vector<int>>>> index_;
  std::vector<Formula> roots_;
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
  std::unordered_map<Key, bool, KeyHash> memo_;
};

bool satisfies(const Signature& sig, const Model& m, int world,
               const Formula& phi);
bool globally_true(const Signature& sig, const Model& m, const Formula& phi);
bool global_model_of(const Signature& sig, const Model& m,
                     const FormulaSet& gamma);

struct LocalVerdict {
  bool holds;
  int model_index;  // -1 when holds
  int world;        // -1 when holds
};

// True iff at every world (of the shared sort) of every model where all
// hypotheses hold, phi holds. Mixed sorts are a SortError.
LocalVerdict local_consequence(const Signature& sig,
                               const std::vector<Model>& models,
                               const FormulaSet& hyps, const Formula& phi);

struct Submodel {
  Model model;
  // per sort: old world id -> new id, -1 when dropped
  std::vector<std::vector<int>> world_map;
  // sorts whose closure came up empty and received one isolated world
  std::vector<SortId> padded_sorts;
};

// Smallest submodel containing the seed and closed under relation tuples
// from retained result worlds to their arguments. Sorts left empty by the
// closure are padded with one fresh isolated world (no relations, empty
// valuation) so the frame stays legal; such sorts are listed in the result.
Submodel generated_submodel(const Signature& sig, const Model& m,
                            const std::vector<std::vector<int>>& seed);

// Deterministic stream of every model with 1..max worlds per sort, every
// relation set, and every valuation of the listed variables (others empty).
// An empty pool therefore enumerates exactly the frames.
class ModelEnumerator {
 public:
  ModelEnumerator(const Signature& sig, int max_worlds_per_sort,
                  std::vector<VarId> var_pool = {});

  bool next(Model* out);

  // Seeded sampler over the same space; relation densities vary per op.
  static Model random(const Signature& sig, int max_worlds_per_sort,
                      const std::vector<VarId>& var_pool,
                      std::mt19937_64& rng);

 private:
  void build_shape();
  void emit(Model* out) const;

  const Signature& sig_;
  int max_;
  std::vector<VarId> pool_;
  std::vector<int> counts_;
  std::vector<std::vector<std::vector<int>>> tuple_space_;  // per op
  std::vector<char> bits_;  // relation bits then valuation bits
  bool done_ = false;
  bool fresh_ = true;
};

// .mmod format:
//   world <id> : <sort>
//   rel <op> <id> <id>*
//   val <var> = { <id>* }
Model parse_model(const Signature& sig, const std::string& text);
std::string print_model(const Signature& sig, const Model& m);

// Resolves a world name; returns (sort, world) or (-1, -1).
std::pair<SortId, int> find_world(const Signature& sig, const Model& m,
                                  const std::string& name);

}  // namespace msml
